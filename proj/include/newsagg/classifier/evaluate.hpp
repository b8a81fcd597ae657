#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"
#include "newsagg/filter/keywords.hpp"

namespace newsagg::classifier {

class EvalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// 2PR / (P + R), or 0 when P + R == 0.
double f_score(double precision, double recall);

struct TaskScores {
    int tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

TaskScores score_counts(int tp, int fp, int fn, int tn = 0);

struct ClassBalance {
    int positive = 0;
    int negative = 0;
    double positive_percentage = 0.0;  // 0..100
};

struct EvalReport {
    std::map<core::Topic, TaskScores> scores;
    std::map<core::Topic, ClassBalance> balance;
};

using Predictions = std::map<std::string, core::TopicFlags>;
using GoldLabels = std::map<std::string, core::AggregatedLabels>;

// Positive share of each task over every gold article.
std::map<core::Topic, ClassBalance> class_balance(const GoldLabels& gold);

// Scores each task over the predicted ids against their gold topic flags.
// Throws EvalError when a prediction has no gold label.
EvalReport evaluate(const Predictions& predictions, const GoldLabels& gold);

nlohmann::json to_json(const EvalReport& report);

// match_topics over the translation into `lang` (falling back to the
// extracted text) for every article.
Predictions keyword_baseline(const std::vector<core::Article>& articles, const filter::KeywordMatcher& matcher,
                             const std::string& lang = "en");

}  // namespace newsagg::classifier
