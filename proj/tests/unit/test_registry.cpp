#include <doctest.h>

#include <sstream>

#include "newsagg/registry/registry.hpp"

using namespace newsagg;
using registry::QuestionnaireRow;

namespace {

QuestionnaireRow row(std::string site, std::string country, bool primary, std::string worker = "w") {
    QuestionnaireRow r;
    r.website = std::move(site);
    r.country = std::move(country);
    r.primary = primary;
    r.reason = "trusted";
    r.topics = {core::Topic::InfectionStatus};
    r.worker_id = std::move(worker);
    return r;
}

std::vector<QuestionnaireRow> repeat(const std::string& site, const std::string& country, int n, bool primary) {
    std::vector<QuestionnaireRow> rows;
    for (int i = 0; i < n; ++i) rows.push_back(row(site, country, primary, "w" + std::to_string(i)));
    return rows;
}

const std::string kFixtures = NEWSAGG_FIXTURE_DIR;

}  // namespace

TEST_CASE("site keys") {
    CHECK(registry::make_site_key("https://WWW.CDC.gov/coronavirus/2019-ncov/") == "cdc.gov/coronavirus/2019-ncov");
    CHECK(registry::make_site_key("covid.saude.gov.br") == "covid.saude.gov.br");
    CHECK(registry::make_site_key("http://www.gouvernement.fr/info-coronavirus#top") == "gouvernement.fr/info-coronavirus");
    CHECK_THROWS_AS(registry::make_site_key("not a url"), registry::RegistryError);
    CHECK_THROWS_AS(registry::make_site_key(""), registry::RegistryError);
}

TEST_CASE("questionnaire csv parsing") {
    std::istringstream in(
        "website,country,primary,reason,topics,worker_id\n"
        "www.rki.de,Germany,true,official,\"infection status;economics and welfare\",w1\n"
        "www.rki.de,Narnia,true,official,others,w2\n"
        "www.rki.de,de,maybe,official,others,w3\n"
        "www.rki.de,de,false,official,knitting,w4\n");
    auto parsed = registry::parse_questionnaire_csv(in);
    REQUIRE(parsed.rows.size() == 1);
    CHECK(parsed.rows[0].country == "de");
    CHECK(parsed.rows[0].topics == std::vector<core::Topic>{core::Topic::InfectionStatus, core::Topic::Economic});
    CHECK(parsed.diagnostics.size() == 3);
    CHECK(parsed.diagnostics[0].row == 2);

    std::istringstream wrong_header("site,country\n");
    CHECK_THROWS(registry::parse_questionnaire_csv(wrong_header));
}

TEST_CASE("questionnaire csv round trip") {
    std::vector<QuestionnaireRow> rows{row("www.cdc.gov", "us", true, "a"), row("g1.globo.com", "br", false, "b")};
    std::ostringstream out;
    registry::write_questionnaire_csv(out, rows);
    std::istringstream in(out.str());
    auto parsed = registry::parse_questionnaire_csv(in);
    CHECK(parsed.diagnostics.empty());
    CHECK(parsed.rows == rows);
}

TEST_CASE("ingest counts the shipped questionnaires") {
    auto parsed = registry::parse_questionnaire_csv_file(kFixtures + "/questionnaires_908.csv");
    CHECK(parsed.diagnostics.empty());
    auto result = registry::ingest_questionnaires(parsed.rows);
    CHECK(result.registry.total_questionnaires() == 908);
    CHECK(result.registry.total_sites() == 550);
    CHECK(result.registry.per_country_counts.at("fr") == registry::CountryCounts{127, 71});
    CHECK(result.registry.per_country_counts.at("jp") == registry::CountryCounts{102, 49});

    auto br = registry::rank_sources(result.registry, "br");
    REQUIRE(br.size() >= 3);
    CHECK(br[0].site_key == "covid.saude.gov.br");
    CHECK(br[0].mention_count == 21);
    CHECK(br[1].site_key == "g1.globo.com/bemestar/coronavirus");
    CHECK(br[1].mention_count == 11);
    CHECK(br[2].site_key == "coronavirus.saude.gov.br");
    CHECK(br[2].mention_count == 9);

    auto set = registry::select_crawl_set(result.registry, 35);
    CHECK(set.size() == 35);
    CHECK(set.front().site_key == "gouvernement.fr/info-coronavirus");

    auto again = registry::registry_from_json(registry::to_json(result.registry));
    CHECK(again == result.registry);
}

TEST_CASE("ingest rules") {
    auto single = registry::ingest_questionnaires({row("www.mohfw.gov.in", "in", true)});
    REQUIRE(single.registry.records.size() == 1);
    CHECK(single.registry.records[0].mention_count == 1);
    CHECK(single.registry.records[0].id() == "in:mohfw.gov.in");
    CHECK(single.registry.records[0].language == "en");

    auto majority = registry::ingest_questionnaires(
        {row("a.example", "us", true), row("a.example", "us", true), row("a.example", "us", false)});
    CHECK(majority.registry.records.at(0).primary);

    auto tie = registry::ingest_questionnaires({row("a.example", "us", true), row("a.example", "us", false)});
    CHECK_FALSE(tie.registry.records.at(0).primary);

    auto mixed = registry::ingest_questionnaires({row("a.example", "us", true), row("::bad::", "us", true)});
    CHECK(mixed.registry.records.size() == 1);
    REQUIRE(mixed.diagnostics.size() == 1);
    CHECK(mixed.diagnostics[0].row == 2);

    // One site named from two countries stays two records.
    auto shared = registry::ingest_questionnaires({row("www.usa.gov/coronavirus", "us", true),
                                                   row("www.usa.gov/coronavirus", "es", true)});
    CHECK(shared.registry.records.size() == 2);
    CHECK(shared.registry.find("es:usa.gov/coronavirus") != nullptr);

    CHECK_THROWS_AS(registry::ingest_questionnaires({}), registry::RegistryError);
}

TEST_CASE("ranking and selection ties") {
    auto rows = repeat("b.example", "jp", 2, false);
    auto more = repeat("a.example", "jp", 2, false);
    rows.insert(rows.end(), more.begin(), more.end());
    auto reg = registry::ingest_questionnaires(rows).registry;
    auto ranked = registry::rank_sources(reg, "jp");
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].site_key == "a.example");
    CHECK(registry::rank_sources(reg, "fr").empty());

    auto with_primary = repeat("z.example", "jp", 2, true);
    rows.insert(rows.end(), with_primary.begin(), with_primary.end());
    reg = registry::ingest_questionnaires(rows).registry;
    auto top = registry::select_crawl_set(reg, 35);
    CHECK(top.size() == 3);
    CHECK(top[0].site_key == "z.example");
    CHECK(registry::select_crawl_set(reg, 1).size() == 1);
}
