#include "newsagg/filter/keywords.hpp"

#include <deque>
#include <fstream>
#include <set>

#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/text.hpp"
#include "newsagg/crawler/html.hpp"

namespace newsagg::filter {

using nlohmann::json;

KeywordSpec keyword_spec_from_json(const json& j) {
    if (!j.is_object()) throw KeywordSpecError("keyword file must be an object of topic -> [keywords]");
    KeywordSpec spec;
    for (auto& [name, list] : j.items()) {
        core::Topic topic;
        try {
            topic = core::parse_topic(name);
        } catch (const core::TopicError& e) {
            throw KeywordSpecError(e.what());
        }
        if (!list.is_array()) throw KeywordSpecError("keywords for " + name + " must be an array");
        auto& out = spec[topic];
        for (const auto& kw : list) {
            if (!kw.is_string()) throw KeywordSpecError("non-string keyword under " + name);
            out.push_back(kw.get<std::string>());
        }
    }
    return spec;
}

KeywordSpec load_keyword_spec(const std::string& path) {
    return keyword_spec_from_json(core::read_json_file(path));
}

json to_json(const KeywordSpec& spec) {
    json j = json::object();
    for (const auto& [topic, kws] : spec) j[std::string(core::to_string(topic))] = kws;
    return j;
}

KeywordMatcher KeywordMatcher::compile(const KeywordSpec& spec) {
    KeywordMatcher m;
    std::map<std::string, core::Topic> owner;
    for (const auto& [topic, kws] : spec) {
        std::set<std::string> within;
        for (const auto& kw : kws) {
            auto name = std::string(core::to_string(topic));
            if (core::trim(kw).empty()) throw KeywordSpecError("empty keyword under " + name);
            if (!within.insert(kw).second) throw KeywordSpecError("duplicate keyword \"" + kw + "\" under " + name);
            auto folded = core::fold_case(kw);
            auto [it, inserted] = owner.emplace(folded, topic);
            if (!inserted) {
                if (it->second == topic) {
                    throw KeywordSpecError("duplicate keyword \"" + kw + "\" under " + name + " after case folding");
                }
                throw KeywordSpecError("keyword \"" + kw + "\" appears under both " +
                                       std::string(core::to_string(it->second)) + " and " + name);
            }
        }
    }

    // Patterns are added in sorted order so the automaton does not depend on
    // the order of the spec.
    m.nodes_.emplace_back();
    for (const auto& [pattern, topic] : owner) {
        std::int32_t state = 0;
        for (unsigned char c : pattern) {
            auto it = m.nodes_[state].next.find(c);
            if (it == m.nodes_[state].next.end()) {
                m.nodes_.emplace_back();
                auto id = static_cast<std::int32_t>(m.nodes_.size() - 1);
                m.nodes_[state].next.emplace(c, id);
                state = id;
            } else {
                state = it->second;
            }
        }
        m.nodes_[state].pattern = static_cast<std::int32_t>(m.patterns_.size());
        m.patterns_.push_back(pattern);
        m.pattern_topic_.push_back(topic);
    }

    std::deque<std::int32_t> queue;
    for (auto& [c, child] : m.nodes_[0].next) {
        m.nodes_[child].fail = 0;
        queue.push_back(child);
    }
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto& [c, child] : m.nodes_[u].next) {
            auto f = m.nodes_[u].fail;
            while (f != 0 && !m.nodes_[f].next.count(c)) f = m.nodes_[f].fail;
            auto it = m.nodes_[f].next.find(c);
            m.nodes_[child].fail = (it != m.nodes_[f].next.end() && it->second != child) ? it->second : 0;
            auto fail = m.nodes_[child].fail;
            m.nodes_[child].output_link = m.nodes_[fail].pattern >= 0 ? fail : m.nodes_[fail].output_link;
            queue.push_back(child);
        }
    }
    return m;
}

std::int32_t KeywordMatcher::step(std::int32_t state, unsigned char c) const {
    while (true) {
        auto it = nodes_[state].next.find(c);
        if (it != nodes_[state].next.end()) return it->second;
        if (state == 0) return 0;
        state = nodes_[state].fail;
    }
}

std::vector<std::pair<std::size_t, std::size_t>> KeywordMatcher::find_all(std::string_view text) const {
    std::vector<std::pair<std::size_t, std::size_t>> hits;
    if (patterns_.empty()) return hits;
    auto folded = core::fold_case(text);
    std::int32_t state = 0;
    for (std::size_t i = 0; i < folded.size(); ++i) {
        state = step(state, static_cast<unsigned char>(folded[i]));
        for (auto s = nodes_[state].pattern >= 0 ? state : nodes_[state].output_link; s >= 0;
             s = nodes_[s].output_link) {
            hits.emplace_back(static_cast<std::size_t>(nodes_[s].pattern), i + 1);
        }
    }
    return hits;
}

core::TopicFlags KeywordMatcher::match_topics(std::string_view text) const {
    core::TopicFlags flags;
    for (auto [pattern, end] : find_all(text)) flags[pattern_topic_[pattern]] = true;
    return flags;
}

bool is_relevant(const crawler::RawPage& page, const KeywordMatcher& matcher) {
    return matcher.match_topics(crawler::extract_text(page.body)).gate();
}

bool is_relevant(const core::Article& article, const KeywordMatcher& matcher) {
    if (!article.extracted_text.empty()) return matcher.match_topics(article.extracted_text).gate();
    return matcher.match_topics(crawler::extract_text(article.raw_html)).gate();
}

}  // namespace newsagg::filter
