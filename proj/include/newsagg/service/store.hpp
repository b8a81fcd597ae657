#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/annotation/records.hpp"
#include "newsagg/core/article.hpp"

namespace newsagg::service {

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StoredArticle {
    core::Article article;  // flags already gated
    std::uint64_t version = 1;
    std::vector<annotation::AnnotationRecord> annotations;

    // Imported gold labels when present, else the majority of the
    // annotations submitted to the store.
    std::optional<core::AggregatedLabels> effective_labels() const;
    // Gated topic flags readers see: effective labels, else predictions.
    std::optional<core::TopicFlags> topics() const;
};

// Immutable view of the store. by_time is ordered by fetched_at descending,
// then id ascending.
struct Snapshot {
    std::map<std::string, std::shared_ptr<const StoredArticle>> by_id;
    std::vector<std::shared_ptr<const StoredArticle>> by_time;
};

struct UpsertDiagnostic {
    std::size_t index = 0;  // position in the batch
    std::string article_id;
    std::string message;
};

struct UpsertResult {
    int changed = 0;
    std::vector<UpsertDiagnostic> diagnostics;
};

struct ArticleQuery {
    std::optional<std::string> country;
    std::optional<std::string> topic;
    std::optional<core::Timestamp> from;  // inclusive
    std::optional<core::Timestamp> to;    // inclusive
    int page = 1;
    int page_size = 20;
};

struct ArticleSummary {
    std::string id;
    std::string source_id;
    std::string url;
    std::string country;
    std::string language;
    core::Timestamp fetched_at{};
    std::string title;
    std::string snippet;
    std::vector<std::string> translations;  // available languages
    std::optional<core::TopicFlags> topics;
    std::uint64_t version = 0;
    std::size_t annotation_count = 0;
};

struct ArticlePage {
    std::vector<ArticleSummary> items;
    int page = 1;
    int page_size = 20;
    std::size_t total = 0;
    std::optional<std::string> warning;
};

struct RegionStats {
    std::int64_t raw_pages = 0;
    std::int64_t translated = 0;
    std::int64_t with_topics = 0;
    std::int64_t daily_increase = 0;

    friend bool operator==(const RegionStats&, const RegionStats&) = default;
};

struct SystemStats {
    std::map<std::string, RegionStats> regions;
    RegionStats totals;
};

enum class SubmitStatus { Accepted, NotFound, Conflict, Invalid };

struct SubmitResult {
    SubmitStatus status = SubmitStatus::Accepted;
    std::string message;
    std::optional<core::AggregatedLabels> labels;  // crowd majority after the submission
};

nlohmann::json to_json(const ArticleSummary& s);
nlohmann::json to_json(const ArticlePage& p);
nlohmann::json to_json(const SystemStats& s);
nlohmann::json to_json(const RegionStats& s);
// Full article without raw_html, plus version, annotation_count, topics,
// effective labels and the crowd majority.
nlohmann::json detail_json(const StoredArticle& a);

// Article store backed by a JSONL append-log. Writes are serialized; reads
// take the current snapshot and never block writers for long.
class ArticleStore {
public:
    // An empty path keeps everything in memory. An existing log is replayed;
    // a malformed line raises StoreError naming the line.
    explicit ArticleStore(std::string path = {});

    // Stores new or changed articles; unchanged ones are skipped. Invalid
    // articles are reported and the rest of the batch proceeds.
    UpsertResult upsert_articles(const std::vector<core::Article>& batch);

    // Throws QueryError when page < 1 or page_size is outside [1, 100].
    ArticlePage list_articles(const ArticleQuery& query) const;

    std::shared_ptr<const StoredArticle> get_article(const std::string& id) const;

    SystemStats get_stats(core::Timestamp now) const;

    SubmitResult submit_annotation(const annotation::AnnotationRecord& record);

    std::shared_ptr<const Snapshot> snapshot() const;
    std::size_t size() const { return snapshot()->by_id.size(); }

private:
    void replay();
    void append(const nlohmann::json& line);
    void publish(std::map<std::string, std::shared_ptr<const StoredArticle>> by_id);

    std::string path_;
    std::ofstream log_;
    std::mutex write_mutex_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
};

}  // namespace newsagg::service
