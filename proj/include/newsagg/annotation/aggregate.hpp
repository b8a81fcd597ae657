#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newsagg/annotation/records.hpp"
#include "newsagg/core/article.hpp"

namespace newsagg::annotation {

// More than half: 6 of 10 passes, 5 of 10 does not.
constexpr bool strict_majority(int yes, int n) { return 2 * yes > n; }

// Labels for one article from all of its records. n_workers is the number
// of records present. Topic flags are cleared when the article is judged
// unrelated. Throws AnnotationError on an empty list, mixed article ids or
// a repeated worker.
core::AggregatedLabels aggregate_article(const std::vector<AnnotationRecord>& records);

// One result per article, sorted by article id.
std::vector<core::AggregatedLabels> aggregate_labels(const std::vector<AnnotationRecord>& records);

struct FluencyReport {
    int fluent = 0;
    int not_fluent = 0;
    std::optional<double> alpha;  // absent when undefined
    std::string alpha_error;

    double fluent_share() const {
        auto total = fluent + not_fluent;
        return total == 0 ? 0.0 : static_cast<double>(fluent) / total;
    }
};

// Article-level strict-majority fluency plus alpha over the per-worker
// fluency matrix.
FluencyReport fluency_report(const std::vector<AnnotationRecord>& records);

}  // namespace newsagg::annotation
