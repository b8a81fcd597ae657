#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"
#include "newsagg/core/topic.hpp"
#include "newsagg/crawler/crawler.hpp"

namespace newsagg::filter {

using KeywordSpec = std::map<core::Topic, std::vector<std::string>>;

class KeywordSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

KeywordSpec keyword_spec_from_json(const nlohmann::json& j);
KeywordSpec load_keyword_spec(const std::string& path);
nlohmann::json to_json(const KeywordSpec& spec);

// Aho-Corasick automaton over case-folded keywords. Matching is substring
// based (no word boundaries), so it works for unsegmented CJK text.
class KeywordMatcher {
public:
    // Throws KeywordSpecError on an empty keyword, a duplicate inside one
    // topic, or a keyword (after case folding) claimed by two topics.
    static KeywordMatcher compile(const KeywordSpec& spec);

    std::size_t pattern_count() const { return patterns_.size(); }
    const std::vector<std::string>& patterns() const { return patterns_; }
    core::Topic topic_of(std::size_t pattern) const { return pattern_topic_[pattern]; }

    // Topic t is true iff one of its keywords occurs in the folded text.
    core::TopicFlags match_topics(std::string_view text) const;

    // Every pattern occurrence as (pattern index, end offset in folded text).
    std::vector<std::pair<std::size_t, std::size_t>> find_all(std::string_view text) const;

private:
    struct Node {
        std::map<unsigned char, std::int32_t> next;
        std::int32_t fail = 0;
        std::int32_t output_link = -1;  // nearest suffix node that ends a pattern
        std::int32_t pattern = -1;      // pattern ending exactly here
    };

    std::int32_t step(std::int32_t state, unsigned char c) const;

    std::vector<Node> nodes_;
    std::vector<std::string> patterns_;  // folded
    std::vector<core::Topic> pattern_topic_;
};

// Relatedness of a crawled page: the gate keyword set over title + body.
bool is_relevant(const crawler::RawPage& page, const KeywordMatcher& matcher);
bool is_relevant(const core::Article& article, const KeywordMatcher& matcher);

}  // namespace newsagg::filter
