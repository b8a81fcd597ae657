#include "newsagg/crawler/crawler.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <stdexcept>
#include <thread>

#include "newsagg/core/text.hpp"
#include "newsagg/crawler/html.hpp"
#include "newsagg/crawler/url.hpp"

namespace newsagg::crawler {

using nlohmann::json;

void validate(const CrawlPolicy& p) {
    if (p.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
    if (p.max_pages_per_site < 1) throw std::invalid_argument("max_pages_per_site must be >= 1");
    if (p.per_host_delay_ms < 0) throw std::invalid_argument("per_host_delay_ms must be >= 0");
    if (p.timeout_ms < 0) throw std::invalid_argument("timeout_ms must be >= 0");
}

json to_json(const CrawlPolicy& p) {
    return json{{"max_depth", p.max_depth},
                {"max_pages_per_site", p.max_pages_per_site},
                {"per_host_delay_ms", p.per_host_delay_ms},
                {"timeout_ms", p.timeout_ms},
                {"same_site_only", p.same_site_only},
                {"user_agent", p.user_agent}};
}

CrawlPolicy policy_from_json(const json& j) {
    CrawlPolicy p;
    p.max_depth = j.value("max_depth", p.max_depth);
    p.max_pages_per_site = j.value("max_pages_per_site", p.max_pages_per_site);
    p.per_host_delay_ms = j.value("per_host_delay_ms", p.per_host_delay_ms);
    p.timeout_ms = j.value("timeout_ms", p.timeout_ms);
    p.same_site_only = j.value("same_site_only", p.same_site_only);
    p.user_agent = j.value("user_agent", p.user_agent);
    validate(p);
    return p;
}

json to_json(const RawPage& p) {
    return json{{"url", p.url},
                {"source_id", p.source_id},
                {"depth", p.depth},
                {"fetched_at", core::to_rfc3339(p.fetched_at)},
                {"status", p.status},
                {"body", p.body},
                {"content_hash", core::to_hex64(p.content_hash)}};
}

RawPage raw_page_from_json(const json& j) {
    RawPage p;
    p.url = j.at("url").get<std::string>();
    p.source_id = j.value("source_id", "");
    p.depth = j.value("depth", 0);
    p.fetched_at = core::parse_rfc3339(j.at("fetched_at").get<std::string>());
    p.status = j.value("status", 200);
    p.body = j.value("body", "");
    p.content_hash = core::from_hex64(j.at("content_hash").get<std::string>());
    return p;
}

bool SeenSet::insert(const std::string& url) {
    std::lock_guard lock(mutex_);
    return seen_.insert(url).second;
}

bool SeenSet::contains(const std::string& url) const {
    std::lock_guard lock(mutex_);
    return seen_.count(url) > 0;
}

std::size_t SeenSet::size() const {
    std::lock_guard lock(mutex_);
    return seen_.size();
}

PolitenessGate::Slot::~Slot() {
    if (lock_.owns_lock()) host_->last_finished = clock_->now();
}

PolitenessGate::Slot PolitenessGate::acquire(const std::string& host) {
    HostState* state = nullptr;
    {
        std::lock_guard lock(map_mutex_);
        auto& entry = hosts_[host];
        if (!entry) entry = std::make_unique<HostState>();
        state = entry.get();
    }
    std::unique_lock lock(state->mutex);
    if (state->last_finished) clock_.sleep_until(*state->last_finished + delay_);
    return Slot(*state, std::move(lock), clock_, clock_.now());
}

CrawlSession::CrawlSession(CrawlPolicy policy, PageFetcher& fetcher, Clock& clock)
    : policy_(std::move(policy)),
      fetcher_(fetcher),
      clock_(clock),
      gate_(clock, std::chrono::milliseconds{policy_.per_host_delay_ms}) {
    validate(policy_);
}

const RobotsRules& CrawlSession::robots_for(const std::string& origin, const std::string& host) {
    // Held across the fetch so each origin's robots.txt is requested once.
    std::lock_guard lock(robots_mutex_);
    if (auto it = robots_.find(origin); it != robots_.end()) return *it->second;
    auto rules = std::make_unique<RobotsRules>();
    {
        auto slot = gate_.acquire(host);
        auto resp = fetcher_.fetch(origin + "/robots.txt");
        if (resp.ok()) *rules = RobotsRules::parse(resp.body, policy_.user_agent);
    }
    return *(robots_[origin] = std::move(rules));
}

CrawlResult CrawlSession::crawl_site(const registry::SourceRecord& source) {
    CrawlResult result;
    result.source_id = source.id();

    std::string entry;
    ParsedUrl entry_parsed;
    try {
        entry = normalize_url(source.entry_url);
        entry_parsed = parse_url(entry);
    } catch (const UrlError& e) {
        result.diagnostics.push_back({source.entry_url, 0, std::string("bad entry URL: ") + e.what()});
        return result;
    }

    auto robots_allow = [&](const ParsedUrl& u) {
        auto target = u.path + (u.query.empty() ? "" : "?" + u.query);
        return robots_for(u.origin(), u.host).allowed(target);
    };

    if (!robots_allow(entry_parsed)) {
        result.diagnostics.push_back({entry, 0, "entry page disallowed by robots.txt"});
        return result;
    }
    if (!seen_.insert(entry)) {
        result.diagnostics.push_back({entry, 0, "entry page already crawled in this run"});
        return result;
    }

    const auto entry_site = site_host(entry_parsed.host);
    std::deque<std::pair<std::string, int>> frontier{{entry, 0}};
    const auto max_pages = static_cast<std::size_t>(policy_.max_pages_per_site);

    while (!frontier.empty() && result.pages.size() < max_pages) {
        auto [url, depth] = std::move(frontier.front());
        frontier.pop_front();
        auto parsed = parse_url(url);

        FetchResponse resp;
        core::Timestamp started{};
        {
            auto slot = gate_.acquire(parsed.host);
            started = slot.started_at();
            resp = fetcher_.fetch(url);
        }
        if (!resp.ok()) {
            std::string msg = depth == 0 ? "entry page unreachable" : "fetch failed";
            if (!resp.error.empty()) msg += ": " + resp.error;
            result.diagnostics.push_back({url, resp.status, std::move(msg)});
            continue;
        }

        RawPage page;
        page.url = url;
        page.source_id = source.id();
        page.depth = depth;
        page.fetched_at = started;
        page.status = resp.status;
        page.content_hash = core::fnv1a64(extract_text(resp.body));
        auto links = depth < policy_.max_depth ? extract_links(resp.body) : std::vector<std::string>{};
        page.body = std::move(resp.body);
        result.pages.push_back(std::move(page));

        for (const auto& link : links) {
            std::string next;
            ParsedUrl next_parsed;
            try {
                next = resolve_url(url, link);
                next_parsed = parse_url(next);
            } catch (const UrlError&) {
                continue;
            }
            if (next_parsed.scheme != "http" && next_parsed.scheme != "https") continue;
            if (policy_.same_site_only &&
                (site_host(next_parsed.host) != entry_site || next_parsed.port != entry_parsed.port)) {
                continue;
            }
            if (seen_.contains(next) || !robots_allow(next_parsed)) continue;
            if (!seen_.insert(next)) continue;
            frontier.emplace_back(std::move(next), depth + 1);
        }
    }
    return result;
}

std::vector<CrawlResult> CrawlSession::crawl_all(const std::vector<registry::SourceRecord>& sources,
                                                 std::size_t workers) {
    // Sources sharing a host are crawled by the same worker, one after the other.
    std::vector<std::vector<std::size_t>> groups;
    std::map<std::string, std::size_t> group_of;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        std::string host;
        try {
            host = site_host(parse_url(sources[i].entry_url).host);
        } catch (const UrlError&) {
            host = "#invalid-" + std::to_string(i);
        }
        auto [it, inserted] = group_of.emplace(host, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(i);
    }

    std::vector<CrawlResult> results(sources.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto g = next++; g < groups.size(); g = next++) {
            for (auto i : groups[g]) results[i] = crawl_site(sources[i]);
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(groups.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return results;
}

CrawlResult crawl_site(const registry::SourceRecord& source, const CrawlPolicy& policy,
                       PageFetcher& fetcher, Clock& clock) {
    CrawlSession session(policy, fetcher, clock);
    return session.crawl_site(source);
}

std::vector<RawPage> dedup(const std::vector<RawPage>& pages) {
    std::unordered_set<std::string> urls;
    std::unordered_set<std::uint64_t> hashes;
    std::vector<RawPage> out;
    for (const auto& p : pages) {
        if (!urls.insert(p.url).second) continue;
        if (!hashes.insert(p.content_hash).second) continue;
        out.push_back(p);
    }
    return out;
}

core::Article page_to_article(const RawPage& page, const registry::SourceRecord& source) {
    core::Article a;
    a.id = core::article_id_for_url(page.url);
    a.source_id = source.id();
    a.url = page.url;
    a.country = source.country;
    a.language = source.language;
    a.fetched_at = page.fetched_at;
    a.raw_html = page.body;
    a.extracted_text = extract_text(page.body);
    return a;
}

}  // namespace newsagg::crawler
