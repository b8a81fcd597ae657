#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/core/time.hpp"
#include "newsagg/core/topic.hpp"

namespace newsagg::core {

// Majority-vote result for one article.
struct AggregatedLabels {
    std::string article_id;
    int n_workers = 0;
    bool related = false;
    bool useful = false;
    bool fluent = false;
    TopicFlags topic_flags;
    // "related", "useful", "fluent" and "topic:<name>" for the seven content
    // topics.
    std::map<std::string, int> vote_counts;

    friend bool operator==(const AggregatedLabels&, const AggregatedLabels&) = default;
};

struct Article {
    std::string id;
    std::string source_id;
    std::string url;
    std::string country;
    std::string language;
    Timestamp fetched_at{};
    std::string raw_html;
    std::string extracted_text;
    std::map<std::string, std::string> translations;
    std::vector<std::string> sentences;
    std::optional<AggregatedLabels> labels;
    std::optional<TopicFlags> predicted;

    friend bool operator==(const Article&, const Article&) = default;
};

class ArticleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::string_view kTranslationTargets[] = {"ja", "en"};
bool is_translation_target(std::string_view lang);

// Stable id derived from the canonical URL.
std::string article_id_for_url(std::string_view canonical_url);

// Checks the structural invariants that do not need the URL parser:
// non-empty id, translation keys in {ja, en}, labels matching the id.
// Returns the violation, or nullopt when the article is well formed.
std::optional<std::string> validate_article(const Article& a);

// Topic labels shown to readers: gold labels when present, otherwise model
// predictions, always gated by relatedness.
std::optional<TopicFlags> display_topics(const Article& a);

nlohmann::json to_json(const TopicFlags& f);
TopicFlags topic_flags_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AggregatedLabels& l);
AggregatedLabels labels_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Article& a);
Article article_from_json(const nlohmann::json& j);

}  // namespace newsagg::core
