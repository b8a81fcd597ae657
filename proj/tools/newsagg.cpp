// newsagg: command-line driver for every pipeline stage.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "newsagg/annotation/aggregate.hpp"
#include "newsagg/annotation/alpha.hpp"
#include "newsagg/classifier/dataset.hpp"
#include "newsagg/classifier/embedding.hpp"
#include "newsagg/classifier/evaluate.hpp"
#include "newsagg/classifier/linear_head.hpp"
#include "newsagg/classifier/pooling.hpp"
#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/region.hpp"
#include "newsagg/core/text.hpp"
#include "newsagg/crawler/crawler.hpp"
#include "newsagg/crawler/simulated_web.hpp"
#include "newsagg/filter/keywords.hpp"
#include "newsagg/registry/registry.hpp"
#include "newsagg/service/http_api.hpp"
#include "newsagg/service/store.hpp"
#include "newsagg/translation/gateway.hpp"

using nlohmann::json;
using namespace newsagg;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

template <typename T, typename F>
void write_jsonl(const std::string& path, const std::vector<T>& items, F&& to) {
    auto out = open_out(path);
    for (const auto& item : items) core::write_jsonl_line(out, to(item));
}

std::vector<std::string> read_ids(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        auto id = core::trim(line);
        if (!id.empty()) ids.emplace_back(id);
    }
    return ids;
}

void write_ids(const std::string& path, const std::vector<std::string>& ids) {
    auto out = open_out(path);
    for (const auto& id : ids) out << id << "\n";
}

classifier::GoldLabels read_labels(const std::string& path) {
    classifier::GoldLabels gold;
    core::read_jsonl_file(path, [&](const json& j) {
        auto l = core::labels_from_json(j);
        gold[l.article_id] = std::move(l);
    });
    return gold;
}

classifier::Predictions read_predictions(const std::string& path) {
    classifier::Predictions preds;
    core::read_jsonl_file(path, [&](const json& j) {
        preds[j.at("article_id").get<std::string>()] = core::topic_flags_from_json(j.at("topics"));
    });
    return preds;
}

std::vector<classifier::FeatureVector> read_features(const std::string& path) {
    std::vector<classifier::FeatureVector> out;
    core::read_jsonl_file(path, [&](const json& j) { out.push_back(classifier::features_from_json(j)); });
    return out;
}

std::vector<std::string> parse_targets(const std::string& csv) {
    std::vector<std::string> targets;
    for (const auto& t : core::split(csv, ',')) {
        auto v = core::trim(t);
        if (!v.empty()) targets.emplace_back(v);
    }
    return targets;
}

translation::Day today_utc() { return translation::Day{std::chrono::floor<std::chrono::days>(core::now_utc())}; }

std::unique_ptr<classifier::EmbeddingProvider> make_embedder(const std::string& spec, int dim,
                                                             const std::string& signals_path) {
    if (spec.rfind("mock", 0) == 0) {
        auto parts = core::split(spec, ':');
        int d = parts.size() > 1 ? std::stoi(parts[1]) : dim;
        std::uint64_t seed = parts.size() > 2 ? std::stoull(parts[2]) : 0;
        std::vector<classifier::SignalRule> rules;
        if (!signals_path.empty()) rules = classifier::load_signal_rules(signals_path);
        return std::make_unique<classifier::MockEmbeddingProvider>(d, seed, std::move(rules));
    }
    if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
        return std::make_unique<classifier::HttpEmbeddingProvider>(spec, dim);
    }
    throw std::runtime_error("unknown embedding provider '" + spec + "' (mock[:dim[:seed]] or an http URL)");
}

void print_report(const classifier::EvalReport& report) {
    std::printf("%-20s %9s %9s %9s %9s %9s %7s\n", "task", "precision", "recall", "f_score", "positive", "negative",
                "pos%");
    for (auto t : core::kAllTopics) {
        const auto& s = report.scores.at(t);
        const auto& b = report.balance.at(t);
        std::printf("%-20s %9.4f %9.4f %9.4f %9d %9d %6.1f%%\n", std::string(core::to_string(t)).c_str(),
                    s.precision, s.recall, s.f_score, b.positive, b.negative, b.positive_percentage);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilingual COVID-19 news aggregation pipeline"};
    app.require_subcommand(1);

    // registry
    auto* reg = app.add_subcommand("registry", "Build and query the source registry");
    reg->require_subcommand(1);
    std::string q_in, topic_map_path, reg_out, reg_path, country, select_out;
    std::size_t top_n = 35;

    auto* ingest = reg->add_subcommand("ingest", "Questionnaire CSV -> registry JSON");
    ingest->add_option("--in", q_in, "questionnaire CSV")->required();
    ingest->add_option("--topic-map", topic_map_path, "JSON phrase -> topic map");
    ingest->add_option("--out", reg_out, "registry JSON")->required();
    ingest->callback([&] {
        auto map = topic_map_path.empty() ? core::default_questionnaire_topic_map()
                                          : core::load_questionnaire_topic_map(topic_map_path);
        auto parsed = registry::parse_questionnaire_csv_file(q_in, map);
        for (const auto& d : parsed.diagnostics) std::cerr << "row " << d.row << ": " << d.message << "\n";
        auto result = registry::ingest_questionnaires(parsed.rows);
        for (const auto& d : result.diagnostics) std::cerr << "row " << d.row << ": " << d.message << "\n";
        core::write_json_file(reg_out, registry::to_json(result.registry));
        std::cout << "questionnaires " << result.registry.total_questionnaires() << ", sites "
                  << result.registry.total_sites() << "\n";
        for (const auto& [code, c] : result.registry.per_country_counts) {
            std::cout << "  " << code << ": " << c.questionnaires << " questionnaires, " << c.reliable_sites
                      << " sites\n";
        }
    });

    auto* rank = reg->add_subcommand("rank", "Per-country ranking by mention count");
    rank->add_option("--registry", reg_path)->required();
    rank->add_option("--country", country)->required();
    rank->add_option("--top", top_n, "rows to print")->default_val(3);
    rank->callback([&] {
        auto r = registry::registry_from_json(core::read_json_file(reg_path));
        auto code = core::normalize_region(country);
        if (!code) throw std::runtime_error("unknown country " + country);
        auto ranked = registry::rank_sources(r, *code);
        for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) {
            std::cout << ranked[i].site_key << "\t" << ranked[i].mention_count << "\t"
                      << (ranked[i].primary ? "primary" : "secondary") << "\n";
        }
    });

    auto* select = reg->add_subcommand("select", "Top-n crawl set");
    select->add_option("--registry", reg_path)->required();
    select->add_option("--n", top_n)->default_val(35);
    select->add_option("--out", select_out)->required();
    select->callback([&] {
        auto r = registry::registry_from_json(core::read_json_file(reg_path));
        auto set = registry::select_crawl_set(r, top_n);
        json arr = json::array();
        for (const auto& s : set) arr.push_back(registry::to_json(s));
        core::write_json_file(select_out, arr);
        std::cout << "selected " << set.size() << " sources\n";
    });

    // crawl
    auto* crawl = app.add_subcommand("crawl", "Crawl the selected sources into article JSONL");
    std::string sources_path, crawl_out, graph_path, policy_path, start_time;
    std::size_t crawl_workers = 4;
    crawler::CrawlPolicy policy;
    crawl->add_option("--sources,--crawlset", sources_path, "crawl set JSON")->required();
    crawl->add_option("--out", crawl_out, "article JSONL")->required();
    crawl->add_option("--graph,--simulate", graph_path, "simulated web graph JSON (no network)");
    crawl->add_option("--policy", policy_path, "crawl policy JSON");
    crawl->add_option("--max-depth", policy.max_depth);
    crawl->add_option("--max-pages", policy.max_pages_per_site);
    crawl->add_option("--delay-ms", policy.per_host_delay_ms);
    crawl->add_option("--workers", crawl_workers)->default_val(4);
    crawl->add_option("--start", start_time, "virtual clock start for --graph (RFC 3339)");
    crawl->callback([&] {
        if (!policy_path.empty()) policy = crawler::policy_from_json(core::read_json_file(policy_path));
        auto sources = registry::read_crawl_set(sources_path);
        std::unique_ptr<crawler::Clock> clock;
        std::unique_ptr<crawler::PageFetcher> fetcher;
        if (!graph_path.empty()) {
            auto vclock = std::make_unique<crawler::VirtualClock>(start_time.empty() ? core::now_utc()
                                                                                     : core::parse_rfc3339(start_time));
            auto web = std::make_unique<crawler::SimulatedWeb>(*vclock);
            web->load_json(core::read_json_file(graph_path));
            clock = std::move(vclock);
            fetcher = std::move(web);
        } else {
            clock = std::make_unique<crawler::SystemClock>();
            fetcher = std::make_unique<crawler::HttpFetcher>(policy.user_agent, policy.timeout_ms);
        }
        crawler::CrawlSession session(policy, *fetcher, *clock);
        auto results = session.crawl_all(sources, crawl_workers);
        std::vector<crawler::RawPage> pages;
        std::map<std::string, const registry::SourceRecord*> by_id;
        for (const auto& s : sources) by_id[s.id()] = &s;
        for (const auto& r : results) {
            for (const auto& d : r.diagnostics) std::cerr << r.source_id << ": " << d.url << ": " << d.message << "\n";
            pages.insert(pages.end(), r.pages.begin(), r.pages.end());
        }
        auto unique = crawler::dedup(pages);
        std::vector<core::Article> articles;
        for (const auto& p : unique) articles.push_back(crawler::page_to_article(p, *by_id.at(p.source_id)));
        core::write_articles(crawl_out, articles);
        std::cout << "fetched " << pages.size() << " pages, " << articles.size() << " after dedup\n";
    });

    // filter
    auto* filt = app.add_subcommand("filter", "Keep pages matching the relatedness keywords");
    std::string pages_path, kw_path, filter_out;
    filt->add_option("--pages", pages_path)->required();
    filt->add_option("--keywords", kw_path)->required();
    filt->add_option("--out", filter_out)->required();
    filt->callback([&] {
        auto matcher = filter::KeywordMatcher::compile(filter::load_keyword_spec(kw_path));
        auto articles = core::read_articles(pages_path);
        std::vector<core::Article> kept;
        for (auto& a : articles) {
            if (filter::is_relevant(a, matcher)) kept.push_back(std::move(a));
        }
        core::write_articles(filter_out, kept);
        std::cout << "kept " << kept.size() << " of " << articles.size() << " pages\n";
    });

    // translate
    auto* trans = app.add_subcommand("translate", "Translate articles under the daily budget");
    std::string tr_in, tr_out, tr_deferred, tr_provider = "identity", tr_targets = "ja,en", tr_state, tr_day,
                                             tr_sources;
    int tr_budget = 3000;
    std::size_t tr_workers = 4;
    trans->add_option("--in", tr_in)->required();
    trans->add_option("--out", tr_out, "translated articles")->required();
    trans->add_option("--deferred", tr_deferred, "articles left for later days, plus failures");
    trans->add_option("--budget", tr_budget, "articles per day")->default_val(3000);
    trans->add_option("--targets", tr_targets)->default_val("ja,en");
    trans->add_option("--provider", tr_provider, "identity | dict:<path> | http(s) URL")->default_val("identity");
    trans->add_option("--state", tr_state, "budget state JSON, read and updated");
    trans->add_option("--day", tr_day, "YYYY-MM-DD (default: today UTC)");
    trans->add_option("--sources", tr_sources, "crawl set JSON; primary sources get priority 0");
    trans->add_option("--workers", tr_workers)->default_val(4);
    trans->callback([&] {
        auto day = tr_day.empty() ? today_utc() : translation::parse_day(tr_day);
        translation::TranslationBudget budget{tr_budget, 0, day};
        if (!tr_state.empty() && std::filesystem::exists(tr_state)) {
            budget = translation::budget_from_json(core::read_json_file(tr_state));
            budget.daily_capacity = tr_budget;
            translation::validate(budget);
        }
        std::set<std::string> primary;
        if (!tr_sources.empty()) {
            for (const auto& s : registry::read_crawl_set(tr_sources)) {
                if (s.primary) primary.insert(s.id());
            }
        }
        auto provider = translation::make_provider(tr_provider);
        translation::GatewayConfig config;
        config.workers = tr_workers;
        config.targets = parse_targets(tr_targets);
        translation::TranslationGateway gateway(*provider, config, budget);
        auto articles = core::read_articles(tr_in);
        for (const auto& a : articles) gateway.enqueue(a, primary.count(a.source_id) ? 0 : 1);
        auto report = gateway.run_day(day);
        core::write_articles(tr_out, report.translated);
        if (!tr_deferred.empty()) {
            std::vector<core::Article> left;
            for (const auto& job : gateway.pending()) left.push_back(gateway.pending_articles().at(job.article_id));
            std::map<std::string, const core::Article*> by_id;
            for (const auto& a : articles) by_id[a.id] = &a;
            for (const auto& job : report.failed) left.push_back(*by_id.at(job.article_id));
            core::write_articles(tr_deferred, left);
        }
        for (const auto& job : report.failed) std::cerr << job.article_id << ": " << job.reason << "\n";
        if (!tr_state.empty()) core::write_json_file(tr_state, translation::to_json(gateway.budget()));
        std::cout << "translated " << report.done.size() << ", failed " << report.failed.size() << ", deferred "
                  << report.deferred << " (budget used " << gateway.budget().consumed_today << "/"
                  << gateway.budget().daily_capacity << " on " << translation::to_string(day) << ")\n";
    });

    // annotate
    auto* ann = app.add_subcommand("annotate", "Crowd annotation tasks, aggregation and agreement");
    ann->require_subcommand(1);
    std::string ann_in, ann_out, question = "related", ann_articles;
    int k = 10;
    auto* export_tasks = ann->add_subcommand("export-tasks", "Blank annotation sheet, k slots per article");
    export_tasks->add_option("--in", ann_in, "article JSONL")->required();
    export_tasks->add_option("--k", k)->default_val(10);
    export_tasks->add_option("--out", ann_out, "CSV sheet")->required();
    export_tasks->callback([&] {
        auto tasks = annotation::build_tasks(core::read_articles(ann_in), k);
        auto out = open_out(ann_out);
        annotation::write_task_sheet(out, tasks);
        std::cout << tasks.size() << " slots\n";
    });

    auto* aggregate = ann->add_subcommand("aggregate", "Strict-majority labels per article");
    aggregate->add_option("--in", ann_in, "annotation CSV")->required();
    aggregate->add_option("--out", ann_out, "labels JSONL")->required();
    aggregate->callback([&] {
        auto parsed = annotation::parse_annotations_csv_file(ann_in);
        for (const auto& d : parsed.diagnostics) std::cerr << "row " << d.row << ": " << d.message << "\n";
        auto labels = annotation::aggregate_labels(parsed.records);
        write_jsonl(ann_out, labels, [](const core::AggregatedLabels& l) { return core::to_json(l); });
        std::cout << labels.size() << " articles aggregated from " << parsed.records.size() << " records\n";
    });

    auto* alpha = ann->add_subcommand("alpha", "Krippendorff's alpha for one question");
    alpha->add_option("--in", ann_in, "annotation CSV")->required();
    alpha->add_option("--question", question, "related | useful | fluent | topic:<name>")->default_val("related");
    alpha->callback([&] {
        auto parsed = annotation::parse_annotations_csv_file(ann_in);
        auto a = annotation::krippendorff_alpha(annotation::item_counts(parsed.records, question));
        std::printf("%s alpha = %.4f\n", question.c_str(), a);
    });

    auto* fluency = ann->add_subcommand("fluency", "Fluency of translated articles");
    fluency->add_option("--in", ann_in, "annotation CSV")->required();
    fluency->add_option("--articles", ann_articles, "restrict to these articles with a ja translation");
    fluency->callback([&] {
        auto records = annotation::parse_annotations_csv_file(ann_in).records;
        if (!ann_articles.empty()) {
            std::set<std::string> ja;
            for (const auto& a : core::read_articles(ann_articles)) {
                if (a.translations.count("ja")) ja.insert(a.id);
            }
            std::erase_if(records, [&](const annotation::AnnotationRecord& r) { return !ja.count(r.article_id); });
        }
        auto rep = annotation::fluency_report(records);
        std::printf("fluent %d, not fluent %d (%.2f%% fluent)", rep.fluent, rep.not_fluent, 100.0 * rep.fluent_share());
        if (rep.alpha) std::printf(", alpha %.3f\n", *rep.alpha);
        else std::printf(", alpha undefined\n");
    });

    // embed
    auto* embed = app.add_subcommand("embed", "Sentence embeddings pooled into feature vectors");
    std::string em_in, em_out, em_provider = "mock:32:0", em_signals, em_lang = "ja", em_raw, em_pre;
    int em_dim = 32;
    std::size_t em_workers = 4;
    embed->add_option("--in", em_in, "article JSONL");
    embed->add_option("--out", em_out, "feature JSONL")->required();
    embed->add_option("--provider", em_provider, "mock[:dim[:seed]] | http(s) URL")->default_val("mock:32:0");
    embed->add_option("--dim", em_dim, "dimension expected from an http provider")->default_val(32);
    embed->add_option("--signals", em_signals, "signal rules for the mock provider");
    embed->add_option("--lang", em_lang, "translation to embed when sentences are absent")->default_val("ja");
    embed->add_option("--embeddings", em_raw, "also write per-sentence embeddings JSONL");
    embed->add_option("--precomputed", em_pre, "pool these embeddings instead of calling a provider");
    embed->add_option("--workers", em_workers)->default_val(4);
    embed->callback([&] {
        std::vector<classifier::SentenceEmbeddings> embs;
        if (!em_pre.empty()) {
            core::read_jsonl_file(em_pre, [&](const json& j) { embs.push_back(classifier::embeddings_from_json(j)); });
        } else {
            if (em_in.empty()) throw std::runtime_error("--in is required unless --precomputed is given");
            auto provider = make_embedder(em_provider, em_dim, em_signals);
            auto articles = core::read_articles(em_in);
            embs.resize(articles.size());
            std::vector<std::string> errors(articles.size());
            std::atomic<std::size_t> next{0};
            auto work = [&] {
                for (auto i = next++; i < articles.size(); i = next++) {
                    auto a = articles[i];
                    a.sentences = classifier::sentences_for(a, em_lang);
                    try {
                        embs[i] = classifier::embed_article(a, *provider);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            };
            {
                std::vector<std::jthread> pool;
                for (std::size_t w = 1; w < std::max<std::size_t>(em_workers, 1); ++w) pool.emplace_back(work);
                work();
            }
            std::vector<classifier::SentenceEmbeddings> ok;
            for (std::size_t i = 0; i < embs.size(); ++i) {
                if (errors[i].empty()) ok.push_back(std::move(embs[i]));
                else std::cerr << errors[i] << "\n";
            }
            embs = std::move(ok);
        }
        if (!em_raw.empty()) {
            write_jsonl(em_raw, embs, [](const classifier::SentenceEmbeddings& e) { return classifier::to_json(e); });
        }
        auto out = open_out(em_out);
        for (const auto& e : embs) core::write_jsonl_line(out, classifier::to_json(classifier::pool(e)));
        std::cout << embs.size() << " feature vectors\n";
    });

    // split
    auto* split = app.add_subcommand("split", "Seeded train/test split of labeled ids");
    std::string sp_labels, sp_train, sp_test;
    double sp_ratio = 0.9;
    std::uint64_t sp_seed = 42;
    split->add_option("--labels", sp_labels, "labels JSONL")->required();
    split->add_option("--ratio", sp_ratio)->default_val(0.9);
    split->add_option("--seed", sp_seed)->default_val(42);
    split->add_option("--train", sp_train)->required();
    split->add_option("--test", sp_test)->required();
    split->callback([&] {
        std::vector<std::string> ids;
        for (const auto& [id, l] : read_labels(sp_labels)) ids.push_back(id);
        auto s = classifier::split_dataset(ids, sp_ratio, sp_seed);
        write_ids(sp_train, s.train);
        write_ids(sp_test, s.test);
        std::cout << s.train.size() << " train / " << s.test.size() << " test\n";
    });

    // train
    auto* train = app.add_subcommand("train", "Train linear heads on pooled features");
    std::string tn_features, tn_labels, tn_task = "all", tn_out, tn_ids;
    classifier::TrainParams params;
    std::size_t tn_threads = 8;
    train->add_option("--features", tn_features)->required();
    train->add_option("--labels", tn_labels)->required();
    train->add_option("--task", tn_task, "topic name or 'all'")->default_val("all");
    train->add_option("--out", tn_out, "head JSON (an array for 'all')")->required();
    train->add_option("--ids", tn_ids, "train only on these article ids");
    train->add_option("--l2", params.l2)->default_val(1e-4);
    train->add_option("--step", params.step)->default_val(0.1);
    train->add_option("--iterations", params.iterations)->default_val(500);
    train->add_flag("--balance", params.balance_classes, "inverse-frequency class weighting");
    train->add_option("--threads", tn_threads)->default_val(8);
    train->callback([&] {
        auto gold = read_labels(tn_labels);
        std::set<std::string> allowed;
        if (!tn_ids.empty()) {
            for (auto& id : read_ids(tn_ids)) allowed.insert(std::move(id));
        }
        std::vector<classifier::FeatureVector> feats;
        for (auto& f : read_features(tn_features)) {
            if (!gold.count(f.article_id)) continue;
            if (!allowed.empty() && !allowed.count(f.article_id)) continue;
            feats.push_back(std::move(f));
        }
        std::vector<core::Topic> tasks;
        if (tn_task == "all") tasks.assign(core::kAllTopics.begin(), core::kAllTopics.end());
        else tasks.push_back(core::parse_topic(tn_task));
        std::map<core::Topic, std::vector<bool>> labels;
        for (auto t : tasks) {
            auto& y = labels[t];
            for (const auto& f : feats) y.push_back(gold.at(f.article_id).topic_flags[t]);
        }
        auto results = classifier::train_heads(feats, labels, params, tn_threads);
        json heads = json::array();
        for (const auto& [t, r] : results) {
            heads.push_back(classifier::to_json(r.head));
            std::printf("%-20s loss %.4f -> %.4f\n", std::string(core::to_string(t)).c_str(),
                        r.loss_history.front(), r.loss_history.back());
        }
        core::write_json_file(tn_out, tn_task == "all" ? heads : heads.at(0));
    });

    // classify
    auto* cls = app.add_subcommand("classify", "Apply trained heads with relatedness gating");
    std::string cl_features, cl_pred, cl_in, cl_out;
    std::vector<std::string> cl_heads;
    cls->add_option("--features", cl_features)->required();
    cls->add_option("--heads", cl_heads, "head JSON files")->required();
    cls->add_option("--pred", cl_pred, "predictions JSONL")->required();
    cls->add_option("--in", cl_in, "articles to annotate with predictions");
    cls->add_option("--out", cl_out, "articles with predictions");
    cls->callback([&] {
        auto heads = classifier::load_heads(cl_heads);
        classifier::Predictions preds;
        for (const auto& f : read_features(cl_features)) preds[f.article_id] = classifier::classify(f, heads);
        {
            auto out = open_out(cl_pred);
            for (const auto& [id, flags] : preds) {
                core::write_jsonl_line(out, json{{"article_id", id}, {"topics", core::to_json(flags)}});
            }
        }
        if (!cl_in.empty() && !cl_out.empty()) {
            auto articles = core::read_articles(cl_in);
            for (auto& a : articles) {
                if (auto it = preds.find(a.id); it != preds.end()) a.predicted = it->second;
            }
            core::write_articles(cl_out, articles);
        }
        std::cout << preds.size() << " articles classified\n";
    });

    // eval
    auto* ev = app.add_subcommand("eval", "Precision, recall, F and class balance");
    std::string ev_pred, ev_gold, ev_report, ev_keywords, ev_articles, ev_ids, ev_lang = "en";
    bool baseline = false;
    ev->add_option("--pred", ev_pred, "predictions JSONL");
    ev->add_option("--gold", ev_gold, "labels JSONL")->required();
    ev->add_option("--report", ev_report, "report JSON");
    ev->add_flag("--baseline", baseline, "score the keyword baseline instead of --pred");
    ev->add_option("--keywords", ev_keywords, "keyword JSON for --baseline");
    ev->add_option("--articles", ev_articles, "article JSONL for --baseline");
    ev->add_option("--lang", ev_lang, "text the baseline reads")->default_val("en");
    ev->add_option("--ids", ev_ids, "score only these article ids");
    ev->callback([&] {
        auto gold = read_labels(ev_gold);
        classifier::Predictions preds;
        if (baseline) {
            if (ev_keywords.empty() || ev_articles.empty()) {
                throw std::runtime_error("--baseline needs --keywords and --articles");
            }
            auto matcher = filter::KeywordMatcher::compile(filter::load_keyword_spec(ev_keywords));
            preds = classifier::keyword_baseline(core::read_articles(ev_articles), matcher, ev_lang);
        } else {
            if (ev_pred.empty()) throw std::runtime_error("--pred is required without --baseline");
            preds = read_predictions(ev_pred);
        }
        if (!ev_ids.empty()) {
            auto ids = read_ids(ev_ids);
            std::set<std::string> keep(ids.begin(), ids.end());
            std::erase_if(preds, [&](const auto& kv) { return !keep.count(kv.first); });
        }
        std::erase_if(preds, [&](const auto& kv) { return !gold.count(kv.first); });
        auto report = classifier::evaluate(preds, gold);
        print_report(report);
        if (!ev_report.empty()) core::write_json_file(ev_report, classifier::to_json(report));
    });

    // publish
    auto* pub = app.add_subcommand("publish", "Load articles (and labels/predictions) into a store");
    std::string pb_store, pb_in, pb_labels, pb_pred;
    pub->add_option("--store", pb_store)->required();
    pub->add_option("--in", pb_in, "article JSONL")->required();
    pub->add_option("--labels", pb_labels, "gold labels JSONL to attach");
    pub->add_option("--pred", pb_pred, "predictions JSONL to attach");
    pub->callback([&] {
        auto articles = core::read_articles(pb_in);
        classifier::GoldLabels gold;
        classifier::Predictions preds;
        if (!pb_labels.empty()) gold = read_labels(pb_labels);
        if (!pb_pred.empty()) preds = read_predictions(pb_pred);
        for (auto& a : articles) {
            if (auto it = gold.find(a.id); it != gold.end()) a.labels = it->second;
            if (auto it = preds.find(a.id); it != preds.end()) a.predicted = it->second;
        }
        service::ArticleStore store(pb_store);
        auto result = store.upsert_articles(articles);
        for (const auto& d : result.diagnostics) std::cerr << d.article_id << ": " << d.message << "\n";
        std::cout << result.changed << " articles changed, store holds " << store.size() << "\n";
    });

    // serve
    auto* serve = app.add_subcommand("serve", "HTTP API over an article store");
    std::string sv_store, sv_addr = "127.0.0.1:8080", sv_token, sv_ui;
    serve->add_option("--store", sv_store)->required();
    serve->add_option("--addr", sv_addr, "host:port")->default_val("127.0.0.1:8080");
    serve->add_option("--token", sv_token, "token for POST /api/articles (or NEWSAGG_API_TOKEN)");
    serve->add_option("--ui", sv_ui, "directory with the browser UI");
    serve->callback([&] {
        if (sv_token.empty()) {
            if (const char* env = std::getenv("NEWSAGG_API_TOKEN")) sv_token = env;
        }
        auto colon = sv_addr.rfind(':');
        if (colon == std::string::npos) throw std::runtime_error("--addr must be host:port");
        auto host = sv_addr.substr(0, colon);
        auto port = std::stoi(sv_addr.substr(colon + 1));
        service::ArticleStore store(sv_store);
        httplib::Server server;
        service::ApiConfig config;
        config.api_token = sv_token;
        if (!sv_ui.empty()) config.static_dir = sv_ui;
        service::register_routes(server, store, config);
        std::cout << "serving " << store.size() << " articles on http://" << host << ":" << port << std::endl;
        if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + sv_addr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
