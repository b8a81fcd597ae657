#include "newsagg/service/store.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "newsagg/annotation/aggregate.hpp"
#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/region.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::service {

using nlohmann::json;

namespace {

constexpr std::size_t kTitleBytes = 200;
constexpr std::size_t kSnippetBytes = 280;

std::string clip(std::string_view s, std::size_t max_bytes) {
    if (s.size() <= max_bytes) return std::string(s);
    return std::string(s.substr(0, core::utf8_safe_prefix(s, max_bytes)));
}

// Stored flags never pair a false gate with a topic.
core::Article normalized(core::Article a) {
    if (a.labels) {
        a.labels->topic_flags[core::Topic::RelatedToCovid] = a.labels->related;
        a.labels->topic_flags = a.labels->topic_flags.gated();
    }
    if (a.predicted) a.predicted = a.predicted->gated();
    return a;
}

std::string validate_for_store(const core::Article& a) {
    if (auto err = core::validate_article(a)) return *err;
    if (!core::is_supported_region(a.country)) return "article " + a.id + " has unsupported country '" + a.country + "'";
    return {};
}

ArticleSummary summarize(const StoredArticle& s) {
    const auto& a = s.article;
    ArticleSummary out;
    out.id = a.id;
    out.source_id = a.source_id;
    out.url = a.url;
    out.country = a.country;
    out.language = a.language;
    out.fetched_at = a.fetched_at;
    auto first_line = std::string_view(a.extracted_text).substr(0, a.extracted_text.find('\n'));
    out.title = clip(core::trim(first_line), kTitleBytes);
    auto en = a.translations.find("en");
    out.snippet = clip(en != a.translations.end() ? en->second : a.extracted_text, kSnippetBytes);
    for (const auto& [lang, text] : a.translations) out.translations.push_back(lang);
    out.topics = s.topics();
    out.version = s.version;
    out.annotation_count = s.annotations.size();
    return out;
}

json topics_json(const std::optional<core::TopicFlags>& topics) {
    return topics ? core::to_json(*topics) : json(nullptr);
}

}  // namespace

std::optional<core::AggregatedLabels> StoredArticle::effective_labels() const {
    if (article.labels) return article.labels;
    if (annotations.empty()) return std::nullopt;
    return annotation::aggregate_article(annotations);
}

std::optional<core::TopicFlags> StoredArticle::topics() const {
    if (auto labels = effective_labels()) return labels->topic_flags.gated();
    if (article.predicted) return article.predicted->gated();
    return std::nullopt;
}

json to_json(const ArticleSummary& s) {
    return json{{"id", s.id},
                {"source_id", s.source_id},
                {"url", s.url},
                {"country", s.country},
                {"language", s.language},
                {"fetched_at", core::to_rfc3339(s.fetched_at)},
                {"title", s.title},
                {"snippet", s.snippet},
                {"translations", s.translations},
                {"topics", topics_json(s.topics)},
                {"version", s.version},
                {"annotation_count", s.annotation_count}};
}

json to_json(const ArticlePage& p) {
    json items = json::array();
    for (const auto& s : p.items) items.push_back(to_json(s));
    json j{{"items", items}, {"page", p.page}, {"page_size", p.page_size}, {"total", p.total}};
    if (p.warning) j["warning"] = *p.warning;
    return j;
}

json to_json(const RegionStats& s) {
    return json{{"raw_pages", s.raw_pages},
                {"translated", s.translated},
                {"with_topics", s.with_topics},
                {"daily_increase", s.daily_increase}};
}

json to_json(const SystemStats& s) {
    json regions = json::object();
    for (const auto& [code, r] : s.regions) regions[code] = to_json(r);
    return json{{"regions", regions}, {"totals", to_json(s.totals)}};
}

json detail_json(const StoredArticle& s) {
    auto j = core::to_json(s.article);
    j.erase("raw_html");
    auto labels = s.effective_labels();
    j["effective_labels"] = labels ? core::to_json(*labels) : json(nullptr);
    j["crowd_labels"] = s.annotations.empty() ? json(nullptr) : core::to_json(annotation::aggregate_article(s.annotations));
    j["topics"] = topics_json(s.topics());
    j["version"] = s.version;
    j["annotation_count"] = s.annotations.size();
    return j;
}

ArticleStore::ArticleStore(std::string path) : path_(std::move(path)), snapshot_(std::make_shared<Snapshot>()) {
    if (path_.empty()) return;
    if (std::filesystem::exists(path_)) replay();
    log_.open(path_, std::ios::app | std::ios::binary);
    if (!log_) throw StoreError("cannot open store log " + path_);
}

void ArticleStore::replay() {
    std::map<std::string, std::shared_ptr<const StoredArticle>> by_id;
    std::size_t line = 0;
    try {
        core::read_jsonl_file(path_, [&](const json& j) {
            ++line;
            auto type = j.at("type").get<std::string>();
            if (type == "article") {
                auto stored = std::make_shared<StoredArticle>();
                stored->article = normalized(core::article_from_json(j.at("article")));
                stored->version = j.at("version").get<std::uint64_t>();
                if (auto it = by_id.find(stored->article.id); it != by_id.end()) {
                    stored->annotations = it->second->annotations;
                }
                by_id[stored->article.id] = std::move(stored);
            } else if (type == "annotation") {
                auto record = annotation::record_from_json(j.at("record"));
                auto it = by_id.find(record.article_id);
                if (it == by_id.end()) throw StoreError("annotation for unknown article " + record.article_id);
                auto copy = std::make_shared<StoredArticle>(*it->second);
                copy->annotations.push_back(std::move(record));
                it->second = std::move(copy);
            } else {
                throw StoreError("unknown record type '" + type + "'");
            }
        });
    } catch (const std::exception& e) {
        throw StoreError(path_ + ": record " + std::to_string(line) + ": " + e.what());
    }
    publish(std::move(by_id));
}

void ArticleStore::append(const json& line) {
    if (!log_.is_open()) return;
    core::write_jsonl_line(log_, line);
    log_.flush();
    if (!log_) throw StoreError("write to " + path_ + " failed");
}

void ArticleStore::publish(std::map<std::string, std::shared_ptr<const StoredArticle>> by_id) {
    auto snap = std::make_shared<Snapshot>();
    snap->by_id = std::move(by_id);
    snap->by_time.reserve(snap->by_id.size());
    for (const auto& [id, a] : snap->by_id) snap->by_time.push_back(a);
    std::sort(snap->by_time.begin(), snap->by_time.end(), [](const auto& a, const auto& b) {
        if (a->article.fetched_at != b->article.fetched_at) return a->article.fetched_at > b->article.fetched_at;
        return a->article.id < b->article.id;
    });
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(snap);
}

std::shared_ptr<const Snapshot> ArticleStore::snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
}

UpsertResult ArticleStore::upsert_articles(const std::vector<core::Article>& batch) {
    std::lock_guard writer(write_mutex_);
    UpsertResult result;
    auto by_id = snapshot()->by_id;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (auto err = validate_for_store(batch[i]); !err.empty()) {
            result.diagnostics.push_back({i, batch[i].id, err});
            continue;
        }
        auto article = normalized(batch[i]);
        auto it = by_id.find(article.id);
        if (it != by_id.end() && it->second->article == article) continue;
        auto stored = std::make_shared<StoredArticle>();
        stored->version = it == by_id.end() ? 1 : it->second->version + 1;
        if (it != by_id.end()) stored->annotations = it->second->annotations;
        stored->article = std::move(article);
        append(json{{"type", "article"}, {"version", stored->version}, {"article", core::to_json(stored->article)}});
        by_id[stored->article.id] = std::move(stored);
        ++result.changed;
    }
    if (result.changed > 0) publish(std::move(by_id));
    return result;
}

ArticlePage ArticleStore::list_articles(const ArticleQuery& q) const {
    if (q.page < 1) throw QueryError("page must be >= 1");
    if (q.page_size < 1 || q.page_size > 100) throw QueryError("page_size must lie in [1, 100]");

    ArticlePage page;
    page.page = q.page;
    page.page_size = q.page_size;

    std::optional<std::string> country;
    if (q.country && !q.country->empty()) {
        country = core::normalize_region(*q.country);
        if (!country) {
            page.warning = "unknown country '" + *q.country + "'";
            return page;
        }
    }
    std::optional<core::Topic> topic;
    if (q.topic && !q.topic->empty()) {
        topic = core::try_parse_topic(*q.topic);
        if (!topic) {
            page.warning = "unknown topic '" + *q.topic + "'";
            return page;
        }
    }

    auto snap = snapshot();
    auto first = static_cast<std::size_t>(q.page - 1) * static_cast<std::size_t>(q.page_size);
    for (const auto& stored : snap->by_time) {
        const auto& a = stored->article;
        if (country && a.country != *country) continue;
        if (q.from && a.fetched_at < *q.from) continue;
        if (q.to && a.fetched_at > *q.to) continue;
        if (topic) {
            auto flags = stored->topics();
            if (!flags || !(*flags)[*topic]) continue;
        }
        if (page.total >= first && page.items.size() < static_cast<std::size_t>(q.page_size)) {
            page.items.push_back(summarize(*stored));
        }
        ++page.total;
    }
    return page;
}

std::shared_ptr<const StoredArticle> ArticleStore::get_article(const std::string& id) const {
    auto snap = snapshot();
    auto it = snap->by_id.find(id);
    return it == snap->by_id.end() ? nullptr : it->second;
}

SystemStats ArticleStore::get_stats(core::Timestamp now) const {
    SystemStats stats;
    for (const auto& code : core::supported_regions()) stats.regions[code] = {};
    auto since = now - std::chrono::hours(24);
    for (const auto& [id, stored] : snapshot()->by_id) {
        const auto& a = stored->article;
        auto& r = stats.regions[a.country];
        ++r.raw_pages;
        bool translated = !a.translations.empty();
        r.translated += translated;
        r.with_topics += translated && stored->topics().has_value();
        r.daily_increase += a.fetched_at > since && a.fetched_at <= now;
    }
    for (const auto& [code, r] : stats.regions) {
        stats.totals.raw_pages += r.raw_pages;
        stats.totals.translated += r.translated;
        stats.totals.with_topics += r.with_topics;
        stats.totals.daily_increase += r.daily_increase;
    }
    return stats;
}

SubmitResult ArticleStore::submit_annotation(const annotation::AnnotationRecord& record) {
    SubmitResult result;
    try {
        annotation::validate_record(record);
    } catch (const annotation::AnnotationError& e) {
        return {SubmitStatus::Invalid, e.what(), std::nullopt};
    }
    if (!record.related && !record.topics.empty()) {
        return {SubmitStatus::Invalid, "topics must be empty when the article is not related", std::nullopt};
    }

    std::lock_guard writer(write_mutex_);
    auto snap = snapshot();
    auto it = snap->by_id.find(record.article_id);
    if (it == snap->by_id.end()) return {SubmitStatus::NotFound, "unknown article " + record.article_id, std::nullopt};
    for (const auto& r : it->second->annotations) {
        if (r.worker_id == record.worker_id) {
            return {SubmitStatus::Conflict,
                    "worker " + record.worker_id + " already annotated " + record.article_id, std::nullopt};
        }
    }
    append(json{{"type", "annotation"}, {"record", annotation::to_json(record)}});
    auto copy = std::make_shared<StoredArticle>(*it->second);
    copy->annotations.push_back(record);
    result.labels = annotation::aggregate_article(copy->annotations);
    auto by_id = snap->by_id;
    by_id[record.article_id] = std::move(copy);
    publish(std::move(by_id));
    result.message = "accepted";
    return result;
}

}  // namespace newsagg::service
