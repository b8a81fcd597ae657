#include "newsagg/classifier/evaluate.hpp"

#include <array>

namespace newsagg::classifier {

using nlohmann::json;

double f_score(double precision, double recall) {
    auto sum = precision + recall;
    return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

TaskScores score_counts(int tp, int fp, int fn, int tn) {
    TaskScores s;
    s.tp = tp;
    s.fp = fp;
    s.fn = fn;
    s.tn = tn;
    s.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    s.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    s.f_score = f_score(s.precision, s.recall);
    return s;
}

std::map<core::Topic, ClassBalance> class_balance(const GoldLabels& gold) {
    std::map<core::Topic, ClassBalance> out;
    for (auto t : core::kAllTopics) {
        auto& b = out[t];
        for (const auto& [id, labels] : gold) {
            if (labels.topic_flags[t]) ++b.positive;
            else ++b.negative;
        }
        auto total = b.positive + b.negative;
        b.positive_percentage = total ? 100.0 * b.positive / total : 0.0;
    }
    return out;
}

EvalReport evaluate(const Predictions& predictions, const GoldLabels& gold) {
    EvalReport report;
    std::map<core::Topic, std::array<int, 4>> counts;  // tp fp fn tn
    for (auto t : core::kAllTopics) counts[t] = {0, 0, 0, 0};
    for (const auto& [id, pred] : predictions) {
        auto it = gold.find(id);
        if (it == gold.end()) throw EvalError("prediction for " + id + " has no gold label");
        const auto& truth = it->second.topic_flags;
        for (auto t : core::kAllTopics) {
            auto& c = counts[t];
            if (pred[t] && truth[t]) ++c[0];
            else if (pred[t]) ++c[1];
            else if (truth[t]) ++c[2];
            else ++c[3];
        }
    }
    for (const auto& [t, c] : counts) report.scores[t] = score_counts(c[0], c[1], c[2], c[3]);
    report.balance = class_balance(gold);
    return report;
}

json to_json(const EvalReport& report) {
    json tasks = json::object();
    for (const auto& [t, s] : report.scores) {
        tasks[std::string(core::to_string(t))] = {{"precision", s.precision}, {"recall", s.recall},
                                                  {"f_score", s.f_score},     {"tp", s.tp},
                                                  {"fp", s.fp},               {"fn", s.fn},
                                                  {"tn", s.tn}};
    }
    json balance = json::object();
    for (const auto& [t, b] : report.balance) {
        balance[std::string(core::to_string(t))] = {
            {"positive", b.positive}, {"negative", b.negative}, {"positive_percentage", b.positive_percentage}};
    }
    return json{{"tasks", tasks}, {"class_balance", balance}};
}

Predictions keyword_baseline(const std::vector<core::Article>& articles, const filter::KeywordMatcher& matcher,
                             const std::string& lang) {
    Predictions out;
    for (const auto& a : articles) {
        auto it = a.translations.find(lang);
        const auto& text = it != a.translations.end() ? it->second : a.extracted_text;
        out[a.id] = matcher.match_topics(text);
    }
    return out;
}

}  // namespace newsagg::classifier
