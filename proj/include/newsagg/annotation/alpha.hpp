#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newsagg/annotation/records.hpp"

namespace newsagg::annotation {

class AlphaUndefined : public std::runtime_error {
public:
    AlphaUndefined() : std::runtime_error("alpha undefined") {}
    using std::runtime_error::runtime_error;
};

// values[item][coder]; nullopt marks a missing judgment.
struct ReliabilityMatrix {
    std::vector<std::string> items;
    std::vector<std::string> coders;
    std::vector<std::vector<std::optional<int>>> values;
};

// Krippendorff's alpha for nominal data via the coincidence matrix. Items
// with fewer than two values are not pairable and are ignored. Throws
// AlphaUndefined when fewer than two pairable values remain; returns 1.0
// when every pairable value falls in one category.
double krippendorff_alpha(const ReliabilityMatrix& m);

// Same computation from per-item category counts (category -> number of
// coders who chose it), for matrices too sparse to materialize.
using ItemCounts = std::map<int, int>;
double krippendorff_alpha(const std::vector<ItemCounts>& items);

// "related", "useful", "fluent" or "topic:<name>". Throws AnnotationError
// for anything else.
bool answer_of(const AnnotationRecord& r, std::string_view question);

// Items and coders in sorted id order. Throws AnnotationError on a
// duplicate (article, worker) pair.
ReliabilityMatrix build_matrix(const std::vector<AnnotationRecord>& records, std::string_view question);

// Per-article counts for one question, sorted by article id. Throws
// AnnotationError on a duplicate (article, worker) pair.
std::vector<ItemCounts> item_counts(const std::vector<AnnotationRecord>& records, std::string_view question);

}  // namespace newsagg::annotation
