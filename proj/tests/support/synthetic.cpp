#include "synthetic.hpp"

#include <algorithm>
#include <cstdio>

#include "newsagg/core/text.hpp"

namespace newsagg::testing {

namespace {

const std::vector<std::string> kFiller = {
    "river",  "garden",  "council", "bridge",  "morning", "train",   "harbor", "library", "weather", "district",
    "road",   "painting", "forest", "village", "station", "meeting", "mayor",  "bakery",  "ferry",   "autumn",
    "lantern", "orchard", "traffic", "parade", "clock",   "tower",   "market", "poster",  "window",  "valley",
};

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string id_for(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%05zu", prefix, i);
    return buf;
}

}  // namespace

std::string filler_sentence(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> len(5, 9), word(0, kFiller.size() - 1);
    std::string s = "The";
    for (auto n = len(rng); n > 0; --n) s += " " + kFiller[word(rng)];
    return s + ".";
}

const std::map<core::Topic, TopicMarker>& topic_markers() {
    using core::Topic;
    static const std::map<Topic, TopicMarker> markers = {
        {Topic::RelatedToCovid, {"covid", "sars illness"}},
        {Topic::InfectionStatus, {"infection count", "case tally"}},
        {Topic::Prevention, {"face mask", "stay indoors order"}},
        {Topic::MedicalInformation, {"vaccine trial", "clinical study"}},
        {Topic::Economic, {"stimulus package", "jobless claims"}},
        {Topic::Education, {"school closure", "online lessons"}},
        {Topic::ArtAndSport, {"concert", "league match"}},
        {Topic::Others, {"rumour", "hearsay"}},
    };
    return markers;
}

std::string marker_sentence(const std::string& phrase) { return "Reporters asked about the " + phrase + " today."; }

filter::KeywordSpec marker_keywords() {
    filter::KeywordSpec spec;
    for (const auto& [t, m] : topic_markers()) spec[t] = {m.keyword};
    return spec;
}

std::vector<classifier::SignalRule> marker_signals(double amplitude) {
    std::vector<classifier::SignalRule> rules;
    for (const auto& [t, m] : topic_markers()) {
        auto dim = static_cast<int>(core::index_of(t));
        rules.push_back({m.keyword, dim, amplitude});
        rules.push_back({m.hidden, dim, amplitude});
    }
    return rules;
}

TopicCorpus make_topic_corpus(const CorpusOptions& o) {
    std::mt19937_64 rng(o.seed);
    TopicCorpus corpus;
    const auto& markers = topic_markers();
    auto phrase = [&](core::Topic t) {
        const auto& m = markers.at(t);
        return chance(rng, o.withheld_share) ? m.hidden : m.keyword;
    };
    std::uniform_int_distribution<int> n_filler(3, 6);
    std::uniform_int_distribution<std::size_t> pick_topic(0, core::kContentTopics.size() - 1);

    for (std::size_t i = 0; i < o.articles; ++i) {
        core::Article a;
        a.id = id_for("syn", i);
        a.source_id = "us:synthetic.example";
        a.url = "https://synthetic.example/a/" + std::to_string(i);
        a.country = "us";
        a.language = "en";
        a.fetched_at = core::parse_rfc3339("2020-05-01T00:00:00Z") + std::chrono::minutes(i);

        core::TopicFlags truth;
        std::vector<std::string> sentences;
        if (chance(rng, o.related_share)) {
            truth[core::Topic::RelatedToCovid] = true;
            sentences.push_back(marker_sentence(phrase(core::Topic::RelatedToCovid)));
            for (auto t : core::kContentTopics) {
                if (!chance(rng, o.topic_share)) continue;
                truth[t] = true;
                sentences.push_back(marker_sentence(phrase(t)));
            }
        } else if (chance(rng, o.distractor_share)) {
            sentences.push_back(marker_sentence(phrase(core::kContentTopics[pick_topic(rng)])));
        }
        for (int n = n_filler(rng); n > 0; --n) sentences.push_back(filler_sentence(rng));
        std::shuffle(sentences.begin(), sentences.end(), rng);

        a.sentences = sentences;
        a.extracted_text = core::join(sentences, " ");
        core::AggregatedLabels gold;
        gold.article_id = a.id;
        gold.n_workers = 10;
        gold.related = truth.gate();
        gold.topic_flags = truth;
        corpus.gold[a.id] = gold;
        corpus.articles.push_back(std::move(a));
    }
    return corpus;
}

annotation::ReliabilityMatrix random_matrix(std::mt19937_64& rng, int max_items, int max_coders, int categories,
                                            double missing) {
    std::uniform_int_distribution<int> items(1, max_items), coders(1, max_coders), value(0, categories - 1);
    annotation::ReliabilityMatrix m;
    int n_items = items(rng), n_coders = coders(rng);
    for (int c = 0; c < n_coders; ++c) m.coders.push_back("c" + std::to_string(c));
    for (int i = 0; i < n_items; ++i) {
        m.items.push_back("i" + std::to_string(i));
        auto& row = m.values.emplace_back();
        for (int c = 0; c < n_coders; ++c) {
            if (chance(rng, missing)) row.emplace_back(std::nullopt);
            else row.emplace_back(value(rng));
        }
    }
    return m;
}

std::vector<annotation::AnnotationRecord> random_crowd(std::mt19937_64& rng, std::size_t articles, int workers) {
    std::vector<annotation::AnnotationRecord> out;
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    for (std::size_t i = 0; i < articles; ++i) {
        double p = rate(rng);
        for (int w = 0; w < workers; ++w) {
            annotation::AnnotationRecord r;
            r.article_id = id_for("art", i);
            r.worker_id = "w" + std::to_string(w);
            r.related = chance(rng, p);
            r.useful = chance(rng, p);
            r.fluent = chance(rng, p);
            if (r.related) {
                for (auto t : core::kContentTopics) {
                    if (chance(rng, p)) r.topics.insert(t);
                }
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<annotation::AnnotationRecord> noisy_crowd(std::mt19937_64& rng, const std::string& article_id,
                                                      const core::TopicFlags& truth, int workers, double noise) {
    std::vector<annotation::AnnotationRecord> out;
    for (int w = 0; w < workers; ++w) {
        annotation::AnnotationRecord r;
        r.article_id = article_id;
        r.worker_id = "w" + std::to_string(w);
        r.related = truth.gate() != chance(rng, noise);
        r.useful = !chance(rng, noise);
        r.fluent = !chance(rng, noise);
        if (r.related) {
            for (auto t : core::kContentTopics) {
                if (truth[t] != chance(rng, noise)) r.topics.insert(t);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

const std::vector<BalanceRow>& published_balance_rows() {
    using core::Topic;
    static const std::vector<BalanceRow> rows = {
        {Topic::RelatedToCovid, 24361, 32265, "43.0"}, {Topic::InfectionStatus, 6664, 49962, "11.8"},
        {Topic::Prevention, 2533, 54093, "4.5"},       {Topic::MedicalInformation, 5075, 51551, "9.0"},
        {Topic::Economic, 2066, 54560, "3.6"},         {Topic::Education, 173, 56453, "0.3"},
        {Topic::ArtAndSport, 657, 55969, "1.2"},       {Topic::Others, 37331, 19295, "65.9"},
    };
    return rows;
}

classifier::GoldLabels published_balance_gold() {
    const auto& rows = published_balance_rows();
    const int total = rows.front().positive + rows.front().negative;
    classifier::GoldLabels gold;
    for (int i = 0; i < total; ++i) {
        core::AggregatedLabels l;
        l.article_id = id_for("t4", static_cast<std::size_t>(i));
        l.n_workers = 10;
        for (const auto& row : rows) l.topic_flags[row.topic] = i < row.positive;
        l.related = l.topic_flags.gate();
        gold.emplace(l.article_id, std::move(l));
    }
    return gold;
}

SiteGraph make_site_graph(std::size_t pages, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SiteGraph site;
    site.origin = "https://news.site.test";
    site.entry = site.origin + "/";

    std::vector<std::string> urls{site.entry};
    for (std::size_t i = 1; i < pages; ++i) {
        bool hidden = chance(rng, 0.05);
        urls.push_back(site.origin + (hidden ? site.disallowed_prefix : std::string("/p/")) + std::to_string(i));
    }
    const std::vector<std::string> external = {
        "https://ads.example.net/banner", "https://ads.example.net/track", "http://news.site.test:8080/p/1",
        "https://mirror.example.org/p/2"};

    std::uniform_int_distribution<std::size_t> pick(0, urls.size() - 1), fanout(2, 6);
    for (std::size_t i = 0; i < urls.size(); ++i) {
        nlohmann::json node;
        node["body"] = "Page " + std::to_string(i) + ". " + filler_sentence(rng);
        std::vector<std::string> links;
        // A chain keeps every page reachable unless a hidden page breaks it.
        if (i + 1 < urls.size()) links.push_back(urls[i + 1]);
        for (auto n = fanout(rng); n > 0; --n) {
            const auto& target = urls[pick(rng)];
            auto roll = std::uniform_int_distribution<int>(0, 9)(rng);
            if (roll == 0) links.push_back(target.substr(site.origin.size()));  // absolute path
            else if (roll == 1) links.push_back(target + "#comments");
            else links.push_back(target);
        }
        if (chance(rng, 0.2)) links.push_back(external[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
        node["links"] = links;
        if (urls[i].find(site.disallowed_prefix) != std::string::npos) {
            node["robots_disallow"] = std::vector<std::string>{site.disallowed_prefix};
        }
        if (i > 0 && chance(rng, 0.02)) node["status"] = 404;
        site.graph[urls[i]] = std::move(node);
    }
    for (const auto& url : external) {
        site.graph[url] = {{"body", "External page."}, {"links", std::vector<std::string>{site.entry}}};
    }
    return site;
}

}  // namespace newsagg::testing
