#include "newsagg/crawler/simulated_web.hpp"

#include <set>

#include "newsagg/crawler/html.hpp"
#include "newsagg/crawler/url.hpp"

namespace newsagg::crawler {

using nlohmann::json;

void SimulatedWeb::load_json(const json& graph) {
    for (auto& [url, node] : graph.items()) {
        SimulatedPage page;
        page.body = node.value("body", "");
        page.links = node.value("links", std::vector<std::string>{});
        page.robots_disallow = node.value("robots_disallow", std::vector<std::string>{});
        page.status = node.value("status", 200);
        add_page(url, std::move(page));
    }
}

json SimulatedWeb::to_json() const {
    json graph = json::object();
    for (const auto& [url, page] : pages_) {
        json node{{"body", page.body}, {"links", page.links}, {"robots_disallow", page.robots_disallow}};
        if (page.status != 200) node["status"] = page.status;
        graph[url] = std::move(node);
    }
    return graph;
}

void SimulatedWeb::add_page(const std::string& url, SimulatedPage page) {
    pages_[normalize_url(url)] = std::move(page);
}

std::string SimulatedWeb::render_html(const SimulatedPage& page) {
    std::string html = "<html><body><p>" + html_escape(page.body) + "</p>";
    for (const auto& link : page.links) html += "<a href=\"" + html_escape(link) + "\"></a>";
    html += "</body></html>";
    return html;
}

FetchResponse SimulatedWeb::fetch(const std::string& url) {
    FetchResponse out;
    ParsedUrl parsed;
    std::string canonical;
    try {
        parsed = parse_url(url);
        canonical = normalize_url(url);
    } catch (const UrlError& e) {
        out.error = e.what();
        return out;
    }
    {
        std::lock_guard lock(log_mutex_);
        log_.push_back({canonical, parsed.host, clock_.now()});
    }

    if (auto it = pages_.find(canonical); it != pages_.end()) {
        out.status = it->second.status;
        if (out.ok()) out.body = render_html(it->second);
        return out;
    }
    if (parsed.path == "/robots.txt") {
        std::set<std::string> prefixes;
        for (const auto& [page_url, page] : pages_) {
            if (parse_url(page_url).origin() != parsed.origin()) continue;
            prefixes.insert(page.robots_disallow.begin(), page.robots_disallow.end());
        }
        if (prefixes.empty()) {
            out.status = 404;
            return out;
        }
        out.status = 200;
        out.body = "User-agent: *\n";
        for (const auto& p : prefixes) out.body += "Disallow: " + p + "\n";
        return out;
    }
    out.status = 404;
    return out;
}

std::vector<FetchLogEntry> SimulatedWeb::fetch_log() const {
    std::lock_guard lock(log_mutex_);
    return log_;
}

void SimulatedWeb::clear_log() {
    std::lock_guard lock(log_mutex_);
    log_.clear();
}

}  // namespace newsagg::crawler
