#include "newsagg/registry/registry.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/region.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::registry {

using nlohmann::json;

namespace {

struct SplitWebsite {
    std::string scheme;  // empty when not given
    std::string host;    // lowercase, port stripped if default
    std::string path;    // includes query, excludes fragment
};

bool valid_host(std::string_view host) {
    if (host.empty() || host.front() == '.' || host.back() == '.') return false;
    if (host.find('.') == std::string_view::npos) return false;
    if (host.find("..") != std::string_view::npos) return false;
    return std::all_of(host.begin(), host.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
    });
}

SplitWebsite split_website(std::string_view website) {
    auto s = core::trim(website);
    if (s.empty()) throw RegistryError("website is empty");
    if (s.find_first_of(" \t") != std::string_view::npos) {
        throw RegistryError("website contains whitespace: '" + std::string(s) + "'");
    }
    SplitWebsite out;
    if (auto p = s.find("://"); p != std::string_view::npos) {
        out.scheme = core::ascii_lower(s.substr(0, p));
        if (out.scheme != "http" && out.scheme != "https") {
            throw RegistryError("unsupported scheme in '" + std::string(website) + "'");
        }
        s.remove_prefix(p + 3);
    }
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    auto host_end = s.find_first_of("/?");
    auto host = core::ascii_lower(s.substr(0, host_end));
    if (host_end != std::string_view::npos) out.path = std::string(s.substr(host_end));
    if (host.find('@') != std::string::npos) {
        throw RegistryError("credentials not allowed in '" + std::string(website) + "'");
    }
    if (auto colon = host.find(':'); colon != std::string::npos) {
        auto port = host.substr(colon + 1);
        host.resize(colon);
        if (port.empty() || !std::all_of(port.begin(), port.end(), ::isdigit)) {
            throw RegistryError("bad port in '" + std::string(website) + "'");
        }
        if (port != "80" && port != "443") host += ":" + port;
    }
    auto bare = host.substr(0, host.find(':'));
    if (!valid_host(bare)) throw RegistryError("malformed host in '" + std::string(website) + "'");
    out.host = std::move(host);
    return out;
}

std::string entry_url_for(const SplitWebsite& w) {
    std::string url = (w.scheme.empty() ? "https" : w.scheme) + "://" + w.host;
    if (w.path.empty() || w.path.front() != '/') url += "/";
    url += w.path;
    return url;
}

}  // namespace

std::string make_site_key(std::string_view website) {
    auto w = split_website(website);
    std::string host = w.host;
    if (host.starts_with("www.")) host.erase(0, 4);
    std::string path = w.path;
    std::string query;
    if (auto q = path.find('?'); q != std::string::npos) {
        query = path.substr(q);
        path.resize(q);
    }
    while (!path.empty() && path.back() == '/') path.pop_back();
    if (query == "?") query.clear();
    return host + path + query;
}

int SourceRegistry::total_questionnaires() const {
    return std::accumulate(per_country_counts.begin(), per_country_counts.end(), 0,
                           [](int acc, const auto& kv) { return acc + kv.second.questionnaires; });
}

const SourceRecord* SourceRegistry::find(std::string_view source_id) const {
    for (const auto& r : records) {
        if (r.id() == source_id) return &r;
    }
    return nullptr;
}

IngestResult ingest_questionnaires(const std::vector<QuestionnaireRow>& rows) {
    if (rows.empty()) throw RegistryError("no questionnaire rows to ingest");

    struct Accum {
        SourceRecord record;
        int primary_votes = 0;
    };
    std::map<std::pair<std::string, std::string>, Accum> sites;
    IngestResult out;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        auto country = core::normalize_region(row.country);
        if (!country) {
            out.diagnostics.push_back({i + 1, "unsupported country '" + row.country + "'"});
            continue;
        }
        std::string key;
        std::string entry;
        try {
            key = make_site_key(row.website);
            entry = entry_url_for(split_website(row.website));
        } catch (const RegistryError& e) {
            out.diagnostics.push_back({i + 1, e.what()});
            continue;
        }

        auto& acc = sites[{*country, key}];
        auto& rec = acc.record;
        if (rec.mention_count == 0) {
            rec.site_key = key;
            rec.country = *country;
            rec.language = core::default_language(*country);
            rec.entry_url = entry;
        } else {
            rec.entry_url = std::min(rec.entry_url, entry);
        }
        ++rec.mention_count;
        if (row.primary) ++acc.primary_votes;
        if (!row.reason.empty()) rec.reasons.push_back(row.reason);
        rec.topics.insert(row.topics.begin(), row.topics.end());
        ++out.registry.per_country_counts[*country].questionnaires;
    }

    for (auto& [key, acc] : sites) {
        auto& rec = acc.record;
        rec.primary = 2 * acc.primary_votes > rec.mention_count;
        std::sort(rec.reasons.begin(), rec.reasons.end());
        ++out.registry.per_country_counts[rec.country].reliable_sites;
        out.registry.records.push_back(std::move(rec));
    }
    return out;
}

std::vector<SourceRecord> rank_sources(const SourceRegistry& registry, std::string_view country) {
    std::vector<SourceRecord> out;
    for (const auto& r : registry.records) {
        if (r.country == country) out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(), [](const SourceRecord& a, const SourceRecord& b) {
        if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
        return a.site_key < b.site_key;
    });
    return out;
}

std::vector<SourceRecord> select_crawl_set(const SourceRegistry& registry, std::size_t n) {
    std::vector<SourceRecord> out = registry.records;
    std::sort(out.begin(), out.end(), [](const SourceRecord& a, const SourceRecord& b) {
        if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
        if (a.primary != b.primary) return a.primary;
        if (a.site_key != b.site_key) return a.site_key < b.site_key;
        return a.country < b.country;
    });
    if (out.size() > n) out.resize(n);
    return out;
}

json to_json(const SourceRecord& r) {
    std::vector<std::string> topics;
    for (auto t : r.topics) topics.emplace_back(core::to_string(t));
    return json{
        {"site_key", r.site_key},   {"country", r.country},
        {"primary", r.primary},     {"mention_count", r.mention_count},
        {"reasons", r.reasons},     {"topics", topics},
        {"language", r.language},   {"entry_url", r.entry_url},
    };
}

SourceRecord source_from_json(const json& j) {
    SourceRecord r;
    r.site_key = j.at("site_key").get<std::string>();
    r.country = j.at("country").get<std::string>();
    r.primary = j.at("primary").get<bool>();
    r.mention_count = j.at("mention_count").get<int>();
    r.reasons = j.value("reasons", std::vector<std::string>{});
    for (const auto& t : j.value("topics", std::vector<std::string>{})) {
        r.topics.insert(core::parse_topic(t));
    }
    r.language = j.value("language", core::default_language(r.country));
    r.entry_url = j.value("entry_url", "https://" + r.site_key);
    return r;
}

json to_json(const SourceRegistry& r) {
    json records = json::array();
    for (const auto& rec : r.records) records.push_back(to_json(rec));
    json counts = json::object();
    for (const auto& [country, c] : r.per_country_counts) {
        counts[country] = {{"questionnaires", c.questionnaires},
                           {"reliable_sites", c.reliable_sites}};
    }
    return json{{"records", records}, {"per_country_counts", counts}};
}

SourceRegistry registry_from_json(const json& j) {
    SourceRegistry r;
    for (const auto& rec : j.at("records")) r.records.push_back(source_from_json(rec));
    for (auto& [country, c] : j.at("per_country_counts").items()) {
        r.per_country_counts[country] = {c.at("questionnaires").get<int>(),
                                         c.at("reliable_sites").get<int>()};
    }
    return r;
}

std::vector<SourceRecord> read_crawl_set(const std::string& path) {
    auto j = core::read_json_file(path);
    const json& arr = j.is_object() && j.contains("records") ? j.at("records") : j;
    std::vector<SourceRecord> out;
    for (const auto& rec : arr) out.push_back(source_from_json(rec));
    return out;
}

}  // namespace newsagg::registry
