#include <doctest.h>

#include <random>
#include <set>

#include "newsagg/core/text.hpp"
#include "newsagg/crawler/simulated_web.hpp"
#include "newsagg/filter/keywords.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace newsagg;
using core::Topic;
using filter::KeywordMatcher;

namespace {

const std::string kFixtures = NEWSAGG_FIXTURE_DIR;

crawler::RawPage page_with(const std::string& text) {
    crawler::RawPage p;
    p.url = "https://x.test/" + std::to_string(core::fnv1a64(text));
    p.body = crawler::SimulatedWeb::render_html({text, {}, {}, 200});
    return p;
}

}  // namespace

TEST_CASE("case folding") {
    auto m = KeywordMatcher::compile({{Topic::RelatedToCovid, {"COVID"}}});
    CHECK(m.match_topics("covid")[Topic::RelatedToCovid]);
    CHECK(m.match_topics("Covid-19 era")[Topic::RelatedToCovid]);
    CHECK_FALSE(m.match_topics("cov id")[Topic::RelatedToCovid]);
}

TEST_CASE("keyword list validation") {
    CHECK_THROWS_AS(KeywordMatcher::compile({{Topic::Economic, {""}}}), filter::KeywordSpecError);
    CHECK_THROWS_AS(KeywordMatcher::compile({{Topic::Economic, {"  "}}}), filter::KeywordSpecError);
    CHECK_THROWS_AS(KeywordMatcher::compile({{Topic::Economic, {"gdp", "GDP"}}}), filter::KeywordSpecError);
    try {
        KeywordMatcher::compile({{Topic::Economic, {"market"}}, {Topic::Others, {"Market"}}});
        FAIL("expected a collision");
    } catch (const filter::KeywordSpecError& e) {
        std::string msg = e.what();
        CHECK(msg.find("economic") != std::string::npos);
        CHECK(msg.find("others") != std::string::npos);
    }
    CHECK_THROWS(filter::keyword_spec_from_json(nlohmann::json{{"weather", {"rain"}}}));
}

TEST_CASE("shipped keyword list") {
    auto spec = filter::load_keyword_spec(kFixtures + "/keywords76.json");
    auto m = KeywordMatcher::compile(spec);
    CHECK(m.pattern_count() == 76);
    CHECK(filter::keyword_spec_from_json(filter::to_json(spec)) == spec);
    auto flags = m.match_topics("COVID cases rise in schools");
    CHECK(flags[Topic::RelatedToCovid]);
    CHECK(flags[Topic::InfectionStatus]);
    CHECK(flags[Topic::Education]);
    CHECK_FALSE(flags[Topic::Economic]);
    CHECK(m.match_topics("") == core::TopicFlags{});
}

TEST_CASE("covid and school example") {
    auto m = KeywordMatcher::compile({{Topic::RelatedToCovid, {"covid"}}, {Topic::Education, {"school"}}});
    core::TopicFlags want;
    want[Topic::RelatedToCovid] = true;
    want[Topic::Education] = true;
    CHECK(m.match_topics("COVID cases rise in schools") == want);
}

TEST_CASE("overlapping patterns match like a naive scan") {
    filter::KeywordSpec spec{{Topic::Others, {"he", "she", "his", "hers"}}, {Topic::Economic, {"ushe"}}};
    auto m = KeywordMatcher::compile(spec);
    const std::string text = "USHERS said his HERS shell";
    auto hits = m.find_all(text);
    std::multiset<std::pair<std::string, std::size_t>> got, want;
    for (auto [i, end] : hits) got.emplace(m.patterns()[i], end);
    auto folded = core::fold_case(text);
    for (const auto& p : m.patterns()) {
        for (auto pos = folded.find(p); pos != std::string::npos; pos = folded.find(p, pos + 1)) {
            want.emplace(p, pos + p.size());
        }
    }
    CHECK(got == want);
    CHECK(got.size() == 9);
}

TEST_CASE("pattern order does not depend on keyword list order") {
    auto a = KeywordMatcher::compile({{Topic::Economic, {"gdp", "economy"}}, {Topic::Others, {"hoax"}}});
    auto b = KeywordMatcher::compile({{Topic::Others, {"hoax"}}, {Topic::Economic, {"economy", "gdp"}}});
    CHECK(a.patterns() == b.patterns());
}

TEST_CASE("planted keywords are found exactly") {
    auto spec = filter::load_keyword_spec(kFixtures + "/keywords76.json");
    auto m = KeywordMatcher::compile(spec);
    std::mt19937_64 rng(40);
    std::vector<std::string> all;
    for (const auto& [t, words] : spec) all.insert(all.end(), words.begin(), words.end());
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    int planted = 0;
    for (int i = 0; i < 100; ++i) {
        std::string text = testing::filler_sentence(rng) + " " + testing::filler_sentence(rng);
        if (i % 5 < 2) {
            text += " Then " + all[pick(rng)] + " and " + all[pick(rng)] + ".";
            ++planted;
        }
        auto flags = m.match_topics(text);
        CHECK(flags == testing::naive_keyword_scan(spec, text));
        CHECK((flags == core::TopicFlags{}) == (i % 5 >= 2));
    }
    CHECK(planted == 40);
}

TEST_CASE("relevance of pages and articles") {
    auto m = KeywordMatcher::compile(filter::load_keyword_spec(kFixtures + "/keywords76.json"));
    CHECK(filter::is_relevant(page_with("新型コロナ対策"), m));
    CHECK_FALSE(filter::is_relevant(page_with("Sunny weather over the river this morning."), m));
    // Only the relatedness keywords count.
    CHECK_FALSE(filter::is_relevant(page_with("The stock market and the school."), m));

    crawler::RawPage titled;
    titled.body = "<title>Coronavirus update</title><p>Nothing else.</p>";
    CHECK(filter::is_relevant(titled, m));

    core::Article a;
    a.id = "x";
    a.raw_html = "<p>covid</p>";
    CHECK(filter::is_relevant(a, m));
    a.extracted_text = "weather";
    CHECK_FALSE(filter::is_relevant(a, m));
}

TEST_CASE("a thirty percent covid sample passes exactly") {
    auto m = KeywordMatcher::compile(filter::load_keyword_spec(kFixtures + "/keywords76.json"));
    std::mt19937_64 rng(30);
    std::bernoulli_distribution coin(0.3);
    int planted = 0, passed = 0;
    for (int i = 0; i < 500; ++i) {
        auto text = testing::filler_sentence(rng);
        bool covid = coin(rng);
        if (covid) text += " The covid report.";
        planted += covid;
        bool pass = filter::is_relevant(page_with(text), m);
        CHECK(pass == covid);
        passed += pass;
    }
    CHECK(passed == planted);
}
