#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"
#include "newsagg/crawler/fetcher.hpp"
#include "newsagg/crawler/robots.hpp"
#include "newsagg/registry/registry.hpp"

namespace newsagg::crawler {

struct CrawlPolicy {
    int max_depth = 3;
    int max_pages_per_site = 500;
    int per_host_delay_ms = 1000;
    int timeout_ms = 10000;
    bool same_site_only = true;
    std::string user_agent = "newsagg-crawler/1.0";
};

// Throws std::invalid_argument when a field is out of range.
void validate(const CrawlPolicy& policy);
nlohmann::json to_json(const CrawlPolicy& policy);
CrawlPolicy policy_from_json(const nlohmann::json& j);

struct RawPage {
    std::string url;  // canonical
    std::string source_id;
    int depth = 0;
    core::Timestamp fetched_at{};
    int status = 0;
    std::string body;
    std::uint64_t content_hash = 0;  // FNV-1a of the extracted text

    friend bool operator==(const RawPage&, const RawPage&) = default;
};

nlohmann::json to_json(const RawPage& p);
RawPage raw_page_from_json(const nlohmann::json& j);

struct CrawlDiagnostic {
    std::string url;
    int status = 0;
    std::string message;
};

struct CrawlResult {
    std::string source_id;
    std::vector<RawPage> pages;  // BFS order
    std::vector<CrawlDiagnostic> diagnostics;
};

// URL-seen set shared by all workers of one crawl run.
class SeenSet {
public:
    // True if `url` was not present (and is now).
    bool insert(const std::string& url);
    bool contains(const std::string& url) const;
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::unordered_set<std::string> seen_;
};

// Serializes requests per host and keeps consecutive requests to a host at
// least `delay` apart, measured from the end of one request to the start of
// the next.
class PolitenessGate {
public:
    PolitenessGate(Clock& clock, std::chrono::milliseconds delay) : clock_(clock), delay_(delay) {}

    struct HostState {
        std::mutex mutex;
        std::optional<core::Timestamp> last_finished;
    };

    class Slot {
    public:
        Slot(Slot&&) = default;
        ~Slot();
        core::Timestamp started_at() const { return started_at_; }

    private:
        friend class PolitenessGate;
        Slot(HostState& host, std::unique_lock<std::mutex> lock, Clock& clock, core::Timestamp started)
            : host_(&host), lock_(std::move(lock)), clock_(&clock), started_at_(started) {}
        HostState* host_;
        std::unique_lock<std::mutex> lock_;
        Clock* clock_;
        core::Timestamp started_at_;
    };

    // Blocks until a request to `host` may start; the request is in flight
    // until the returned slot is destroyed.
    Slot acquire(const std::string& host);

private:
    Clock& clock_;
    std::chrono::milliseconds delay_;
    std::mutex map_mutex_;
    std::map<std::string, std::unique_ptr<HostState>> hosts_;
};

// One crawl run: shared seen set, politeness gate and robots cache.
class CrawlSession {
public:
    CrawlSession(CrawlPolicy policy, PageFetcher& fetcher, Clock& clock);

    // Breadth-first crawl of one source starting at its entry URL.
    CrawlResult crawl_site(const registry::SourceRecord& source);

    // Crawls every source; sources on distinct hosts run concurrently on up
    // to `workers` threads. Results follow the input order.
    std::vector<CrawlResult> crawl_all(const std::vector<registry::SourceRecord>& sources,
                                       std::size_t workers);

    const SeenSet& seen() const { return seen_; }

private:
    const RobotsRules& robots_for(const std::string& origin, const std::string& host);

    CrawlPolicy policy_;
    PageFetcher& fetcher_;
    Clock& clock_;
    SeenSet seen_;
    PolitenessGate gate_;
    std::mutex robots_mutex_;
    std::map<std::string, std::unique_ptr<RobotsRules>> robots_;
};

CrawlResult crawl_site(const registry::SourceRecord& source, const CrawlPolicy& policy,
                       PageFetcher& fetcher, Clock& clock);

// Keeps the first page per URL, then the first page per content hash.
std::vector<RawPage> dedup(const std::vector<RawPage>& pages);

core::Article page_to_article(const RawPage& page, const registry::SourceRecord& source);

}  // namespace newsagg::crawler
