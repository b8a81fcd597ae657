#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/crawler/fetcher.hpp"

namespace newsagg::crawler {

struct SimulatedPage {
    std::string body;
    std::vector<std::string> links;             // absolute or relative to the page
    std::vector<std::string> robots_disallow;   // path prefixes for the page's host
    int status = 200;
};

struct FetchLogEntry {
    std::string url;
    std::string host;
    core::Timestamp at;
};

// In-memory web: a map from canonical URL to page, served as minimal HTML.
// "/robots.txt" is synthesized per host from the union of robots_disallow
// entries unless the graph defines it. Every request is logged with the
// clock time at which it arrived.
class SimulatedWeb final : public PageFetcher {
public:
    explicit SimulatedWeb(Clock& clock) : clock_(clock) {}

    // Graph format: {url: {body, links, robots_disallow, status?}}.
    void load_json(const nlohmann::json& graph);
    nlohmann::json to_json() const;

    void add_page(const std::string& url, SimulatedPage page);
    const std::map<std::string, SimulatedPage>& pages() const { return pages_; }

    FetchResponse fetch(const std::string& url) override;

    std::vector<FetchLogEntry> fetch_log() const;
    void clear_log();

    static std::string render_html(const SimulatedPage& page);

private:
    Clock& clock_;
    std::map<std::string, SimulatedPage> pages_;
    mutable std::mutex log_mutex_;
    std::vector<FetchLogEntry> log_;
};

}  // namespace newsagg::crawler
