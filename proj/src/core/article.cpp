#include "newsagg/core/article.hpp"

#include "newsagg/core/text.hpp"

namespace newsagg::core {

using nlohmann::json;

bool is_translation_target(std::string_view lang) {
    for (auto t : kTranslationTargets) {
        if (t == lang) return true;
    }
    return false;
}

std::string article_id_for_url(std::string_view canonical_url) {
    return "a" + to_hex64(fnv1a64(canonical_url));
}

std::optional<std::string> validate_article(const Article& a) {
    if (a.id.empty()) return "article id is empty";
    if (a.url.empty()) return "article " + a.id + " has no url";
    for (const auto& [lang, _] : a.translations) {
        if (!is_translation_target(lang)) {
            return "article " + a.id + " has translation into unsupported language '" + lang + "'";
        }
    }
    if (a.labels && a.labels->article_id != a.id) {
        return "article " + a.id + " carries labels for '" + a.labels->article_id + "'";
    }
    return std::nullopt;
}

std::optional<TopicFlags> display_topics(const Article& a) {
    if (a.labels) return a.labels->topic_flags.gated();
    if (a.predicted) return a.predicted->gated();
    return std::nullopt;
}

json to_json(const TopicFlags& f) {
    json j = json::object();
    for (auto t : kAllTopics) j[std::string(to_string(t))] = f[t];
    return j;
}

TopicFlags topic_flags_from_json(const json& j) {
    if (!j.is_object()) throw ArticleError("topic flags must be an object");
    TopicFlags f;
    for (auto& [name, value] : j.items()) f[parse_topic(name)] = value.get<bool>();
    return f;
}

json to_json(const AggregatedLabels& l) {
    return json{
        {"article_id", l.article_id},
        {"n_workers", l.n_workers},
        {"related", l.related},
        {"useful", l.useful},
        {"fluent", l.fluent},
        {"topic_flags", to_json(l.topic_flags)},
        {"vote_counts", l.vote_counts},
    };
}

AggregatedLabels labels_from_json(const json& j) {
    AggregatedLabels l;
    l.article_id = j.at("article_id").get<std::string>();
    l.n_workers = j.at("n_workers").get<int>();
    l.related = j.at("related").get<bool>();
    l.useful = j.at("useful").get<bool>();
    l.fluent = j.at("fluent").get<bool>();
    l.topic_flags = topic_flags_from_json(j.at("topic_flags"));
    if (auto it = j.find("vote_counts"); it != j.end() && !it->is_null()) {
        l.vote_counts = it->get<std::map<std::string, int>>();
    }
    return l;
}

json to_json(const Article& a) {
    json j{
        {"id", a.id},
        {"source_id", a.source_id},
        {"url", a.url},
        {"country", a.country},
        {"language", a.language},
        {"fetched_at", to_rfc3339(a.fetched_at)},
        {"raw_html", a.raw_html},
        {"extracted_text", a.extracted_text},
        {"translations", a.translations},
        {"sentences", a.sentences},
    };
    j["labels"] = a.labels ? to_json(*a.labels) : json(nullptr);
    j["predicted"] = a.predicted ? to_json(*a.predicted) : json(nullptr);
    return j;
}

namespace {

std::string optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    return it->get<std::string>();
}

}  // namespace

Article article_from_json(const json& j) {
    if (!j.is_object()) throw ArticleError("article must be a JSON object");
    Article a;
    a.id = j.at("id").get<std::string>();
    a.source_id = optional_string(j, "source_id");
    a.url = j.at("url").get<std::string>();
    a.country = optional_string(j, "country");
    a.language = optional_string(j, "language");
    auto fetched = optional_string(j, "fetched_at");
    if (!fetched.empty()) a.fetched_at = parse_rfc3339(fetched);
    a.raw_html = optional_string(j, "raw_html");
    a.extracted_text = optional_string(j, "extracted_text");
    if (auto it = j.find("translations"); it != j.end() && !it->is_null()) {
        a.translations = it->get<std::map<std::string, std::string>>();
    }
    if (auto it = j.find("sentences"); it != j.end() && !it->is_null()) {
        a.sentences = it->get<std::vector<std::string>>();
    }
    if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
        a.labels = labels_from_json(*it);
    }
    if (auto it = j.find("predicted"); it != j.end() && !it->is_null()) {
        a.predicted = topic_flags_from_json(*it);
    }
    return a;
}

}  // namespace newsagg::core
