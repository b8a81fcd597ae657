#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/registry/questionnaire.hpp"

namespace newsagg::registry {

struct SourceRecord {
    std::string site_key;  // lowercase host without "www." plus the path prefix
    std::string country;
    bool primary = false;
    int mention_count = 0;
    std::vector<std::string> reasons;  // sorted
    std::set<core::Topic> topics;
    std::string language;   // default article language of the region
    std::string entry_url;  // where the crawler starts

    // "<country>:<site_key>", used as Article::source_id.
    std::string id() const { return country + ":" + site_key; }

    friend bool operator==(const SourceRecord&, const SourceRecord&) = default;
};

struct CountryCounts {
    int questionnaires = 0;
    int reliable_sites = 0;
    friend bool operator==(const CountryCounts&, const CountryCounts&) = default;
};

struct SourceRegistry {
    std::vector<SourceRecord> records;  // sorted by (country, site_key)
    std::map<std::string, CountryCounts> per_country_counts;

    int total_questionnaires() const;
    std::size_t total_sites() const { return records.size(); }
    const SourceRecord* find(std::string_view source_id) const;

    friend bool operator==(const SourceRegistry&, const SourceRegistry&) = default;
};

struct IngestResult {
    SourceRegistry registry;
    std::vector<RowDiagnostic> diagnostics;
};

// Lowercase host, strip "www.", keep the path prefix (trailing '/' removed),
// drop scheme and fragment. Throws RegistryError for malformed input.
std::string make_site_key(std::string_view website);

// One record per (country, site_key). Rows with malformed websites are
// rejected with a diagnostic (row numbers are 1-based indices into `rows`).
// Throws RegistryError if `rows` is empty.
IngestResult ingest_questionnaires(const std::vector<QuestionnaireRow>& rows);

// Records of one country, mention_count descending, ties by site_key.
std::vector<SourceRecord> rank_sources(const SourceRegistry& registry, std::string_view country);

// Global top-n: mention_count descending, primary before secondary, then
// site_key and country.
std::vector<SourceRecord> select_crawl_set(const SourceRegistry& registry, std::size_t n);

nlohmann::json to_json(const SourceRecord& r);
SourceRecord source_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SourceRegistry& r);
SourceRegistry registry_from_json(const nlohmann::json& j);

std::vector<SourceRecord> read_crawl_set(const std::string& path);

}  // namespace newsagg::registry
