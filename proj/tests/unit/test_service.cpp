#include <doctest.h>

#include <httplib.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/time.hpp"
#include "newsagg/service/http_api.hpp"
#include "newsagg/service/store.hpp"

using namespace newsagg;
using namespace newsagg::service;
using core::Topic;
using nlohmann::json;

namespace {

const core::Timestamp kNow = core::parse_rfc3339("2020-05-14T12:00:00Z");

core::Article make(const std::string& key, const std::string& country, core::Timestamp at) {
    core::Article a;
    a.url = "https://news.test/" + country + "/" + key;
    a.id = core::article_id_for_url(a.url);
    a.source_id = country + ":news.test";
    a.country = country;
    a.language = "fr";
    a.fetched_at = at;
    a.extracted_text = "Title " + key + "\nBody of " + key + ".";
    return a;
}

core::TopicFlags flags(std::initializer_list<Topic> topics) {
    core::TopicFlags f;
    for (auto t : topics) f[t] = true;
    return f;
}

annotation::AnnotationRecord vote(const std::string& article, const std::string& worker, bool related,
                                  std::set<Topic> topics = {}) {
    annotation::AnnotationRecord r;
    r.article_id = article;
    r.worker_id = worker;
    r.related = related;
    r.useful = true;
    r.fluent = true;
    r.topics = std::move(topics);
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / (name + "_" + std::to_string(::getpid()) + ".jsonl")).string();
}

struct RunningServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    RunningServer(ArticleStore& store, ApiConfig config) {
        register_routes(server, store, std::move(config));
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~RunningServer() {
        server.stop();
        thread.join();
    }
    httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST_CASE("upsert is idempotent and versions changes") {
    ArticleStore store;
    std::vector<core::Article> batch{make("a", "fr", kNow), make("b", "fr", kNow), make("c", "us", kNow)};
    CHECK(store.upsert_articles(batch).changed == 3);
    CHECK(store.upsert_articles(batch).changed == 0);
    CHECK(store.size() == 3);

    auto changed = batch[0];
    changed.translations["en"] = "Title a";
    CHECK(store.upsert_articles({changed}).changed == 1);
    CHECK(store.get_article(changed.id)->version == 2);
    CHECK(store.get_article(batch[1].id)->version == 1);
    CHECK(store.upsert_articles({}).changed == 0);
    CHECK(store.get_article("missing") == nullptr);
}

TEST_CASE("invalid articles are reported and the batch continues") {
    ArticleStore store;
    auto bad = make("x", "fr", kNow);
    bad.translations["de"] = "nein";
    auto nowhere = make("y", "xx", kNow);
    auto r = store.upsert_articles({bad, make("ok", "fr", kNow), nowhere});
    CHECK(r.changed == 1);
    REQUIRE(r.diagnostics.size() == 2);
    CHECK(r.diagnostics[0].index == 0);
    CHECK(r.diagnostics[1].index == 2);
}

TEST_CASE("stored flags are gated") {
    ArticleStore store;
    auto a = make("g", "fr", kNow);
    a.predicted = flags({Topic::Economic});
    store.upsert_articles({a});
    auto stored = store.get_article(a.id);
    REQUIRE(stored->article.predicted);
    CHECK_FALSE((*stored->article.predicted)[Topic::Economic]);
    CHECK(stored->topics() == core::TopicFlags{});
}

TEST_CASE("pagination") {
    ArticleStore store;
    std::vector<core::Article> batch;
    for (int i = 0; i < 25; ++i) batch.push_back(make("p" + std::to_string(i), "jp", kNow - std::chrono::minutes(i % 7)));
    store.upsert_articles(batch);
    ArticleQuery q;
    q.page_size = 10;
    std::set<std::string> seen;
    std::vector<std::size_t> sizes;
    core::Timestamp last = core::Timestamp::max();
    for (int p = 1; p <= 4; ++p) {
        q.page = p;
        auto page = store.list_articles(q);
        CHECK(page.total == 25);
        sizes.push_back(page.items.size());
        for (const auto& s : page.items) {
            CHECK(seen.insert(s.id).second);
            CHECK(s.fetched_at <= last);
            last = s.fetched_at;
        }
    }
    CHECK(sizes == std::vector<std::size_t>{10, 10, 5, 0});
    CHECK(seen.size() == 25);

    q.page = 0;
    CHECK_THROWS_AS(store.list_articles(q), QueryError);
    q.page = 1;
    q.page_size = 101;
    CHECK_THROWS_AS(store.list_articles(q), QueryError);

    ArticleStore empty;
    auto none = empty.list_articles(ArticleQuery{});
    CHECK(none.items.empty());
    CHECK(none.total == 0);
}

TEST_CASE("filters") {
    ArticleStore store;
    std::vector<core::Article> batch;
    for (int i = 0; i < 4; ++i) {
        auto a = make("e" + std::to_string(i), "fr", kNow - std::chrono::hours(24 * i));
        a.predicted = flags({Topic::RelatedToCovid, Topic::Economic});
        batch.push_back(a);
    }
    auto ungated = make("u", "fr", kNow);
    ungated.predicted = flags({Topic::Economic});
    batch.push_back(ungated);
    auto labelled = make("l", "us", kNow);
    labelled.predicted = flags({Topic::RelatedToCovid, Topic::Economic});
    core::AggregatedLabels gold;
    gold.article_id = labelled.id;
    gold.related = false;
    gold.topic_flags = flags({Topic::Economic});
    labelled.labels = gold;
    batch.push_back(labelled);
    store.upsert_articles(batch);

    ArticleQuery q;
    q.topic = "economic";
    CHECK(store.list_articles(q).total == 4);
    q.country = "France";
    CHECK(store.list_articles(q).total == 4);
    q.country = "Atlantis";
    auto warned = store.list_articles(q);
    CHECK(warned.total == 0);
    REQUIRE(warned.warning);
    CHECK(warned.warning->find("Atlantis") != std::string::npos);
    q.country.reset();
    q.topic = "weather";
    CHECK(store.list_articles(q).warning.has_value());

    ArticleQuery range;
    range.from = kNow - std::chrono::hours(48);
    range.to = kNow - std::chrono::hours(24);
    CHECK(store.list_articles(range).total == 2);
}

TEST_CASE("stats count the store") {
    ArticleStore store;
    std::vector<core::Article> batch;
    for (int i = 0; i < 100; ++i) {
        auto a = make("s" + std::to_string(i), "de", kNow - std::chrono::hours(i < 7 ? 1 : 30));
        if (i < 40) a.translations["en"] = "text";
        if (i < 10) a.predicted = flags({Topic::RelatedToCovid});
        batch.push_back(a);
    }
    store.upsert_articles(batch);
    auto stats = store.get_stats(kNow);
    CHECK(stats.regions.at("de") == RegionStats{100, 40, 10, 7});
    CHECK(stats.regions.at("fr") == RegionStats{});
    CHECK(stats.totals == stats.regions.at("de"));
    CHECK(to_json(stats)["regions"]["de"]["with_topics"] == 10);

    ArticleStore empty;
    auto zero = empty.get_stats(kNow);
    CHECK(zero.totals == RegionStats{});
    CHECK(zero.regions.size() == 12);
}

TEST_CASE("stats echo a seed shaped like the production database") {
    struct Seed {
        std::string code;
        int raw, daily, translated, topics;
    };
    // Per-region counts at one hundredth of the deployed system's size.
    const std::vector<Seed> seed{{"fr", 7740, 80, 740, 90}, {"us", 690, 7, 150, 20}, {"jp", 250, 3, 50, 20},
                                 {"eu", 500, 5, 20, 1},     {"cn", 380, 4, 30, 3},   {"int", 450, 5, 30, 3},
                                 {"kr", 160, 2, 3, 1},      {"es", 40, 0, 4, 0},     {"in", 140, 2, 9, 1},
                                 {"de", 160, 2, 80, 60}};
    ArticleStore store;
    std::vector<core::Article> batch;
    for (const auto& s : seed) {
        for (int i = 0; i < s.raw; ++i) {
            auto a = make(std::to_string(i), s.code, kNow - (i < s.daily ? std::chrono::hours(2) : std::chrono::hours(72)));
            if (i < s.translated) a.translations["ja"] = "記事";
            if (i < s.topics) a.predicted = flags({Topic::RelatedToCovid, Topic::InfectionStatus});
            batch.push_back(std::move(a));
        }
    }
    CHECK(store.upsert_articles(batch).changed == static_cast<int>(batch.size()));

    // Recount straight from the seed articles.
    std::map<std::string, RegionStats> want;
    RegionStats totals;
    for (const auto& a : batch) {
        auto& r = want[a.country];
        ++r.raw_pages;
        r.translated += !a.translations.empty();
        r.with_topics += !a.translations.empty() && a.predicted.has_value();
        r.daily_increase += a.fetched_at > kNow - std::chrono::hours(24);
    }
    for (const auto& [code, r] : want) {
        totals.raw_pages += r.raw_pages;
        totals.translated += r.translated;
        totals.with_topics += r.with_topics;
        totals.daily_increase += r.daily_increase;
    }

    auto stats = store.get_stats(kNow);
    for (const auto& s : seed) {
        CAPTURE(s.code);
        const auto& got = stats.regions.at(s.code);
        CHECK(got == want.at(s.code));
        CHECK(got == RegionStats{s.raw, s.translated, s.topics, s.daily});
        CHECK(got.with_topics <= got.translated);
        CHECK(got.translated <= got.raw_pages);
    }
    CHECK(stats.totals == totals);
    CHECK(stats.totals.raw_pages == 10510);
}

TEST_CASE("annotation submissions") {
    ArticleStore store;
    auto a = make("n", "fr", kNow);
    store.upsert_articles({a});
    auto first = store.submit_annotation(vote(a.id, "w1", true, {Topic::Prevention}));
    CHECK(first.status == SubmitStatus::Accepted);
    REQUIRE(first.labels);
    CHECK(first.labels->related);
    CHECK(first.labels->topic_flags[Topic::Prevention]);

    CHECK(store.submit_annotation(vote(a.id, "w1", false)).status == SubmitStatus::Conflict);
    CHECK(store.submit_annotation(vote("nope", "w1", true)).status == SubmitStatus::NotFound);
    CHECK(store.submit_annotation(vote(a.id, "", true)).status == SubmitStatus::Invalid);
    CHECK(store.submit_annotation(vote(a.id, "w9", false, {Topic::Economic})).status == SubmitStatus::Invalid);

    auto second = store.submit_annotation(vote(a.id, "w2", false));
    CHECK_FALSE(second.labels->related);
    auto stored = store.get_article(a.id);
    CHECK(stored->annotations.size() == 2);
    CHECK(stored->topics() == core::TopicFlags{});

    // Imported gold labels win over the crowd.
    auto labelled = a;
    core::AggregatedLabels gold;
    gold.article_id = a.id;
    gold.related = true;
    gold.topic_flags = flags({Topic::RelatedToCovid, Topic::Education});
    labelled.labels = gold;
    store.upsert_articles({labelled});
    stored = store.get_article(a.id);
    CHECK(stored->annotations.size() == 2);
    CHECK((*stored->topics())[Topic::Education]);
    auto detail = detail_json(*stored);
    CHECK_FALSE(detail.contains("raw_html"));
    CHECK(detail["annotation_count"] == 2);
    CHECK(detail["crowd_labels"]["related"] == false);
}

TEST_CASE("the log replays to the same state") {
    auto path = temp_path("newsagg_store");
    std::filesystem::remove(path);
    core::Article a = make("r", "jp", kNow);
    {
        ArticleStore store(path);
        store.upsert_articles({a, make("q", "jp", kNow)});
        auto changed = a;
        changed.translations["en"] = "replayed";
        store.upsert_articles({changed});
        store.submit_annotation(vote(a.id, "w1", true));
    }
    {
        ArticleStore again(path);
        CHECK(again.size() == 2);
        auto stored = again.get_article(a.id);
        CHECK(stored->version == 2);
        CHECK(stored->article.translations.at("en") == "replayed");
        CHECK(stored->annotations.size() == 1);
        CHECK(again.upsert_articles({stored->article}).changed == 0);
    }
    std::ofstream(path, std::ios::app) << "{\"type\": \"gossip\"}\n";
    try {
        ArticleStore broken(path);
        FAIL("expected a replay error");
    } catch (const StoreError& e) {
        CHECK(std::string(e.what()).find("record 5") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("query parameters") {
    httplib::Params p{{"country", "jp"}, {"to", "2020-05-14"}, {"page", "2"}, {"page_size", "5"}};
    auto q = parse_article_query(p);
    CHECK(q.country == "jp");
    CHECK(q.page == 2);
    CHECK(q.page_size == 5);
    REQUIRE(q.to);
    CHECK(core::to_rfc3339(*q.to) == "2020-05-14T23:59:59.999Z");
    auto exact = parse_article_query({{"to", "2020-05-14T10:00:00Z"}});
    CHECK(core::to_rfc3339(*exact.to) == "2020-05-14T10:00:00Z");
    CHECK_THROWS_AS(parse_article_query({{"page", "two"}}), QueryError);
    CHECK_THROWS_AS(parse_article_query({{"from", "soon"}}), QueryError);
    CHECK(parse_article_query({}).page_size == 20);
}

TEST_CASE("http api") {
    ArticleStore store;
    auto a = make("h", "fr", kNow);
    a.translations["en"] = "Headline in English";
    a.predicted = flags({Topic::RelatedToCovid, Topic::MedicalInformation});
    store.upsert_articles({a, make("h2", "us", kNow - std::chrono::hours(30))});
    ApiConfig config;
    config.api_token = "secret";
    config.now = [] { return kNow; };
    RunningServer srv(store, config);
    auto cli = srv.client();

    auto list = cli.Get("/api/articles?country=fr&topic=medical_information");
    REQUIRE(list);
    CHECK(list->status == 200);
    CHECK(list->get_header_value("Access-Control-Allow-Origin") == "*");
    auto body = json::parse(list->body);
    CHECK(body["total"] == 1);
    CHECK(body["items"][0]["title"] == "Title h");
    CHECK(body["items"][0]["snippet"] == "Headline in English");
    CHECK(body["items"][0]["topics"]["medical_information"] == true);

    CHECK(cli.Get("/api/articles?page=0")->status == 400);
    CHECK(json::parse(cli.Get("/api/articles?page=x")->body)["code"] == "bad_request");
    CHECK(json::parse(cli.Get("/api/articles?topic=weather")->body).contains("warning"));

    auto detail = cli.Get(("/api/articles/" + a.id).c_str());
    CHECK(detail->status == 200);
    CHECK(json::parse(detail->body)["id"] == a.id);
    CHECK(cli.Get("/api/articles/unknown")->status == 404);

    auto stats = json::parse(cli.Get("/api/stats")->body);
    CHECK(stats["totals"]["raw_pages"] == 2);
    CHECK(stats["totals"]["daily_increase"] == 1);

    auto post = [&](const std::string& path, const json& j, httplib::Headers h = {}) {
        return cli.Post(path.c_str(), h, j.dump(), "application/json");
    };
    auto record = annotation::to_json(vote(a.id, "w1", true, {Topic::MedicalInformation}));
    auto created = post("/api/annotations", record);
    CHECK(created->status == 201);
    CHECK(json::parse(created->body)["labels"]["related"] == true);
    CHECK(post("/api/annotations", record)->status == 409);
    CHECK(post("/api/annotations", annotation::to_json(vote("ghost", "w1", true)))->status == 404);
    CHECK(post("/api/annotations", annotation::to_json(vote(a.id, "w2", false, {Topic::Economic})))->status == 422);
    CHECK(cli.Post("/api/annotations", "{not json", "application/json")->status == 400);

    auto upload = json::array({core::to_json(make("new", "de", kNow))});
    CHECK(post("/api/articles", upload)->status == 401);
    CHECK(post("/api/articles", upload, {{"X-Api-Token", "wrong"}})->status == 401);
    auto ok = post("/api/articles", upload, {{"X-Api-Token", "secret"}});
    CHECK(ok->status == 200);
    CHECK(json::parse(ok->body)["changed"] == 1);
    CHECK(post("/api/articles", json{{"articles", 3}}, {{"X-Api-Token", "secret"}})->status == 400);
    CHECK(store.size() == 3);

    auto preflight = cli.Options("/api/articles");
    CHECK(preflight->status == 204);
    CHECK(preflight->get_header_value("Access-Control-Allow-Headers").find("X-Api-Token") != std::string::npos);

    ArticleStore closed_store;
    RunningServer closed(closed_store, ApiConfig{});
    auto closed_cli = closed.client();
    CHECK(closed_cli.Post("/api/articles", "[]", "application/json")->status == 403);
}
