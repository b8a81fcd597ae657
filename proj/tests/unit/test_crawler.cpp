#include <doctest.h>

#include <atomic>
#include <set>
#include <thread>

#include "newsagg/core/text.hpp"
#include "newsagg/crawler/crawler.hpp"
#include "newsagg/crawler/html.hpp"
#include "newsagg/crawler/robots.hpp"
#include "newsagg/crawler/simulated_web.hpp"
#include "newsagg/crawler/url.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace newsagg;
using namespace newsagg::crawler;

namespace {

const auto kStart = core::parse_rfc3339("2020-05-01T00:00:00Z");

registry::SourceRecord source_at(const std::string& entry) {
    registry::SourceRecord s;
    s.site_key = site_host(parse_url(entry).host);
    s.country = "fr";
    s.language = "fr";
    s.entry_url = entry;
    return s;
}

SimulatedPage page(std::string body, std::vector<std::string> links) {
    SimulatedPage p;
    p.body = std::move(body);
    p.links = std::move(links);
    return p;
}

std::vector<std::string> urls_of(const CrawlResult& r) {
    std::vector<std::string> out;
    for (const auto& p : r.pages) out.push_back(p.url);
    return out;
}

}  // namespace

TEST_CASE("url canonical form") {
    CHECK(normalize_url("HTTP://Example.com:80/a/../b?utm_source=x") == "http://example.com/b");
    CHECK(normalize_url("https://site.org/p?b=2&a=1") == "https://site.org/p?a=1&b=2");
    CHECK(normalize_url("https://site.org/p#sec2") == "https://site.org/p");
    CHECK(normalize_url("https://site.org") == "https://site.org/");
    CHECK(normalize_url("https://site.org:8443/x") == "https://site.org:8443/x");
    CHECK_THROWS_AS(normalize_url("mailto:someone@example.com"), UrlError);
    CHECK_THROWS_AS(normalize_url("https:///nohost"), UrlError);
    CHECK_FALSE(try_normalize_url("::").has_value());
}

TEST_CASE("url resolution and sites") {
    CHECK(resolve_url("https://a.org/x/y.html", "z.html") == "https://a.org/x/z.html");
    CHECK(resolve_url("https://a.org/x/y.html", "../up") == "https://a.org/up");
    CHECK(resolve_url("https://a.org/x/", "/root?q=1#f") == "https://a.org/root?q=1");
    CHECK(resolve_url("https://a.org/x/", "//b.org/p") == "https://b.org/p");
    CHECK(remove_dot_segments("/a/b/c/./../../g") == "/a/g");
    CHECK(site_host("www.rki.de") == "rki.de");
    CHECK(same_site("https://www.rki.de/a", "https://rki.de/b"));
    CHECK_FALSE(same_site("https://rki.de/a", "https://news.rki.de/b"));
    CHECK(parse_url("https://u@h.org:81/p?q#f").origin() == "https://h.org:81");
}

TEST_CASE("robots rules") {
    const char* text =
        "User-agent: *\n"
        "Disallow: /private\n"
        "\n"
        "User-agent: newsagg-crawler\n"
        "Disallow: /tmp # scratch\n";
    auto mine = RobotsRules::parse(text, "newsagg-crawler/1.0");
    CHECK_FALSE(mine.allowed("/tmp/x"));
    CHECK(mine.allowed("/private/x"));
    auto other = RobotsRules::parse(text, "otherbot/2.0");
    CHECK_FALSE(other.allowed("/private/x"));
    CHECK(other.allowed("/tmp/x"));
    CHECK(RobotsRules::parse("User-agent: *\nDisallow:\n", "x").allowed("/anything"));
    CHECK(RobotsRules::allow_all().allowed(""));
}

TEST_CASE("html extraction") {
    std::string html =
        "<html><head><title>News &amp; more</title><style>p{}</style></head>"
        "<body><script>var x = '<a href=\"/no\">';</script><!-- <a href=\"/hidden\"> -->"
        "<p>First&nbsp;line</p><a href='/a?x=1&amp;y=2'>A</a><A HREF=\"b.html\">B</A></body></html>";
    CHECK(extract_title(html) == "News & more");
    auto text = extract_text(html);
    CHECK(text.rfind("News & more\n", 0) == 0);
    CHECK(text.find("First") != std::string::npos);
    CHECK(text.find("var x") == std::string::npos);
    CHECK(extract_links(html) == std::vector<std::string>{"/a?x=1&y=2", "b.html"});
    CHECK(decode_entities("&lt;&#x41;&#66;&gt;") == "<AB>");
    CHECK(html_escape("<a & \"b\">") == "&lt;a &amp; &quot;b&quot;&gt;");
}

TEST_CASE("policy validation and json") {
    CrawlPolicy p;
    p.max_depth = 2;
    p.per_host_delay_ms = 250;
    auto back = policy_from_json(to_json(p));
    CHECK(back.max_depth == 2);
    CHECK(back.per_host_delay_ms == 250);
    p.max_pages_per_site = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    CHECK_THROWS(policy_from_json(nlohmann::json{{"max_depth", -1}}));
}

TEST_CASE("small simulated crawl follows the same-site and depth rules") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.add_page("https://e.test/", page("entry", {"/a", "/b"}));
    web.add_page("https://e.test/a", page("page a", {"/b", "https://c.external/"}));
    web.add_page("https://e.test/b", page("page b", {}));
    web.add_page("https://c.external/", page("external", {}));
    CrawlPolicy policy;
    policy.max_depth = 2;
    auto result = crawl_site(source_at("https://e.test/"), policy, web, clock);
    CHECK(urls_of(result) == std::vector<std::string>{"https://e.test/", "https://e.test/a", "https://e.test/b"});
    for (const auto& e : web.fetch_log()) CHECK(e.host != "c.external");
    CHECK(result.pages[0].source_id == "fr:e.test");
    CHECK(result.pages[1].depth == 1);
}

TEST_CASE("entry without links and unreachable entries") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.add_page("https://solo.test/", page("alone", {}));
    auto one = crawl_site(source_at("https://solo.test/"), {}, web, clock);
    CHECK(one.pages.size() == 1);

    auto missing = crawl_site(source_at("https://nowhere.test/"), {}, web, clock);
    CHECK(missing.pages.empty());
    REQUIRE(missing.diagnostics.size() == 1);
    CHECK(missing.diagnostics[0].message.find("entry page unreachable") != std::string::npos);

    registry::SourceRecord broken;
    broken.site_key = "x";
    broken.country = "fr";
    broken.entry_url = "not a url";
    CHECK(crawl_site(broken, {}, web, clock).diagnostics.size() == 1);
}

TEST_CASE("failed fetches are recorded and traversal continues") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.add_page("https://f.test/", page("entry", {"/gone", "/ok"}));
    auto gone = page("", {});
    gone.status = 500;
    web.add_page("https://f.test/gone", gone);
    web.add_page("https://f.test/ok", page("fine", {}));
    auto r = crawl_site(source_at("https://f.test/"), {}, web, clock);
    CHECK(urls_of(r) == std::vector<std::string>{"https://f.test/", "https://f.test/ok"});
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].status == 500);
}

TEST_CASE("page cap keeps BFS order on a large site") {
    auto site = testing::make_site_graph(8000, 4242);
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.load_json(site.graph);
    CrawlPolicy policy;
    policy.max_depth = 100;
    policy.max_pages_per_site = 100;
    policy.per_host_delay_ms = 0;
    auto r = crawl_site(source_at(site.entry), policy, web, clock);
    auto allowed = [&](const std::string& url) {
        return url.rfind(site.origin + "/", 0) == 0 && url.rfind(site.origin + site.disallowed_prefix, 0) != 0;
    };
    auto expected = testing::reference_bfs(site.graph, site.entry, {100, 100}, allowed);
    REQUIRE(r.pages.size() == 100);
    std::vector<std::pair<std::string, int>> got;
    for (const auto& p : r.pages) got.emplace_back(p.url, p.depth);
    CHECK(got == expected);
}

TEST_CASE("robots.txt disallow is honoured") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.add_page("https://r.test/", page("entry", {"/private/x", "/public"}));
    auto hidden = page("secret", {});
    hidden.robots_disallow = {"/private/"};
    web.add_page("https://r.test/private/x", hidden);
    web.add_page("https://r.test/public", page("public", {}));
    auto r = crawl_site(source_at("https://r.test/"), {}, web, clock);
    CHECK(urls_of(r) == std::vector<std::string>{"https://r.test/", "https://r.test/public"});
    int robots = 0;
    for (const auto& e : web.fetch_log()) {
        CHECK(e.url.find("/private/") == std::string::npos);
        robots += e.url == "https://r.test/robots.txt";
    }
    CHECK(robots == 1);
}

TEST_CASE("parallel crawl keeps per-host spacing") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    std::vector<registry::SourceRecord> sources;
    for (int h = 0; h < 6; ++h) {
        auto origin = "https://host" + std::to_string(h) + ".test";
        std::vector<std::string> links;
        for (int i = 0; i < 15; ++i) {
            links.push_back("/p" + std::to_string(i));
            web.add_page(origin + "/p" + std::to_string(i), page(origin + " page " + std::to_string(i), {}));
        }
        web.add_page(origin + "/", page("entry " + origin, links));
        sources.push_back(source_at(origin + "/"));
    }
    CrawlPolicy policy;
    policy.per_host_delay_ms = 500;
    CrawlSession session(policy, web, clock);
    auto results = session.crawl_all(sources, 4);
    REQUIRE(results.size() == 6);
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(results[i].source_id == sources[i].id());
        CHECK(results[i].pages.size() == 16);
    }
    std::map<std::string, std::vector<core::Timestamp>> per_host;
    std::set<std::string> urls;
    for (const auto& e : web.fetch_log()) {
        per_host[e.host].push_back(e.at);
        CHECK(urls.insert(e.url).second);
    }
    for (auto& [host, times] : per_host) {
        std::sort(times.begin(), times.end());
        for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] - times[i - 1] >= std::chrono::milliseconds(500));
    }
}

TEST_CASE("virtual clock never moves backwards") {
    VirtualClock clock(kStart);
    clock.sleep_until(kStart + std::chrono::seconds(5));
    clock.sleep_until(kStart + std::chrono::seconds(2));
    CHECK(clock.now() == kStart + std::chrono::seconds(5));
    clock.advance(std::chrono::milliseconds(10));
    CHECK(clock.now() == kStart + std::chrono::milliseconds(5010));
}

TEST_CASE("dedup") {
    RawPage p1{"u", "s", 0, kStart, 200, "x", 1};
    RawPage p2{"u", "s", 1, kStart, 200, "y", 1};
    RawPage p3{"u2", "s", 0, kStart, 200, "x", 1};
    RawPage p4{"u3", "s", 0, kStart, 200, "z", 2};
    CHECK(dedup({p1, p2}) == std::vector<RawPage>{p1});
    CHECK(dedup({p1, p3}) == std::vector<RawPage>{p1});
    CHECK(dedup({p1, p3, p4}) == std::vector<RawPage>{p1, p4});
    CHECK(dedup({}).empty());
}

TEST_CASE("raw pages and articles") {
    RawPage p{"https://www.lemonde.fr/a", "fr:lemonde.fr", 1, kStart, 200,
              "<title>Titre</title><p>Le coronavirus</p>", 0};
    p.content_hash = core::fnv1a64(extract_text(p.body));
    CHECK(raw_page_from_json(to_json(p)) == p);

    auto a = page_to_article(p, source_at("https://www.lemonde.fr/"));
    CHECK(a.id == core::article_id_for_url(p.url));
    CHECK(a.country == "fr");
    CHECK(a.language == "fr");
    CHECK(a.extracted_text == "Titre\nLe coronavirus");
    CHECK(a.fetched_at == kStart);
}

TEST_CASE("simulated web graph json") {
    VirtualClock clock(kStart);
    SimulatedWeb web(clock);
    web.load_json(nlohmann::json{{"https://g.test/", {{"body", "b"}, {"links", {"/x"}}, {"robots_disallow", {"/x"}}}}});
    SimulatedWeb copy(clock);
    copy.load_json(web.to_json());
    CHECK(copy.pages().size() == 1);
    auto robots = web.fetch("https://g.test/robots.txt");
    CHECK(robots.ok());
    CHECK(robots.body.find("Disallow: /x") != std::string::npos);
    CHECK(web.fetch("https://g.test/missing").status == 404);
    CHECK(web.fetch_log().size() == 2);
}
