#pragma once

// Seeded fixture generators shared by the unit tests and the acceptance run.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/annotation/alpha.hpp"
#include "newsagg/annotation/records.hpp"
#include "newsagg/classifier/embedding.hpp"
#include "newsagg/classifier/evaluate.hpp"
#include "newsagg/core/article.hpp"
#include "newsagg/filter/keywords.hpp"

namespace newsagg::testing {

// Filler sentence made of neutral words: none of them contains a keyword
// from the shipped fixture or a topic marker.
std::string filler_sentence(std::mt19937_64& rng);

// Per topic: a phrase listed as a keyword and a synonym that is not.
struct TopicMarker {
    std::string keyword;
    std::string hidden;
};
const std::map<core::Topic, TopicMarker>& topic_markers();
std::string marker_sentence(const std::string& phrase);

// Keyword spec holding only the visible marker of each topic.
filter::KeywordSpec marker_keywords();
// Mock-encoder rules: both markers of topic i push coordinate i.
std::vector<classifier::SignalRule> marker_signals(double amplitude);

struct CorpusOptions {
    std::size_t articles = 1000;
    std::uint64_t seed = 7;
    double related_share = 0.5;
    double topic_share = 0.35;     // per content topic, among related articles
    double withheld_share = 0.3;   // positives carrying only the hidden synonym
    double distractor_share = 0.1; // unrelated articles mentioning one topic marker
};

struct TopicCorpus {
    std::vector<core::Article> articles;  // sentences and extracted_text filled
    classifier::GoldLabels gold;          // gated
};

TopicCorpus make_topic_corpus(const CorpusOptions& options);

// ≤ max_items x ≤ max_coders, values in [0, categories), each cell missing
// with probability `missing`.
annotation::ReliabilityMatrix random_matrix(std::mt19937_64& rng, int max_items, int max_coders, int categories,
                                            double missing);

// `workers` records per article, each answer yes with a per-article
// probability so every majority outcome occurs.
std::vector<annotation::AnnotationRecord> random_crowd(std::mt19937_64& rng, std::size_t articles, int workers);

// Crowd that saw `truth` and answered each question correctly with
// probability 1 - noise. Gate-consistent: topics only when related.
std::vector<annotation::AnnotationRecord> noisy_crowd(std::mt19937_64& rng, const std::string& article_id,
                                                      const core::TopicFlags& truth, int workers, double noise);

// Published class balance of the topic dataset: positive and negative counts per task.
struct BalanceRow {
    core::Topic topic;
    int positive;
    int negative;
    const char* percentage;
};
const std::vector<BalanceRow>& published_balance_rows();
// Gold labels with exactly those counts; flags are set as counted, without
// gating.
classifier::GoldLabels published_balance_gold();

// Simulated site: `pages` HTML pages on one host, a disallowed "/private/"
// area, a few broken pages, and links to two external hosts (which also
// exist in the graph and must never be fetched).
struct SiteGraph {
    nlohmann::json graph;
    std::string entry;
    std::string origin;
    std::string disallowed_prefix = "/private/";
};
SiteGraph make_site_graph(std::size_t pages, std::uint64_t seed);

}  // namespace newsagg::testing
