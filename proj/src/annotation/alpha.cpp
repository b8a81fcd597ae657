#include "newsagg/annotation/alpha.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace newsagg::annotation {

double krippendorff_alpha(const ReliabilityMatrix& m) {
    std::vector<ItemCounts> items;
    items.reserve(m.values.size());
    for (const auto& row : m.values) {
        auto& counts = items.emplace_back();
        for (const auto& v : row) {
            if (v) ++counts[*v];
        }
    }
    return krippendorff_alpha(items);
}

double krippendorff_alpha(const std::vector<ItemCounts>& items) {
    std::map<int, double> n_c;  // pairable values per category
    double observed = 0.0;      // sum of off-diagonal coincidences
    for (const auto& counts : items) {
        int m_u = 0;
        for (auto [c, n] : counts) m_u += n;
        if (m_u < 2) continue;
        double same = 0.0;
        for (auto [c, n] : counts) {
            n_c[c] += n;
            same += static_cast<double>(n) * n;
        }
        observed += (static_cast<double>(m_u) * m_u - same) / (m_u - 1);
    }

    double n = 0.0;
    for (auto [c, v] : n_c) n += v;
    if (n < 2) throw AlphaUndefined();

    double sq = 0.0;
    for (auto [c, v] : n_c) sq += v * v;
    double expected = n * n - sq;  // sum over c != k of n_c * n_k
    if (expected == 0.0) return 1.0;
    return 1.0 - (n - 1.0) * observed / expected;
}

bool answer_of(const AnnotationRecord& r, std::string_view question) {
    if (question == "related") return r.related;
    if (question == "useful") return r.useful;
    if (question == "fluent") return r.fluent;
    constexpr std::string_view prefix = "topic:";
    if (question.substr(0, prefix.size()) == prefix) {
        auto topic = core::try_parse_topic(question.substr(prefix.size()));
        if (topic && !core::is_gate(*topic)) return r.topics.count(*topic) > 0;
    }
    throw AnnotationError("unknown question \"" + std::string(question) +
                          "\" (expected related, useful, fluent or topic:<name>)");
}

ReliabilityMatrix build_matrix(const std::vector<AnnotationRecord>& records, std::string_view question) {
    std::set<std::string> items, coders;
    for (const auto& r : records) {
        items.insert(r.article_id);
        coders.insert(r.worker_id);
    }
    ReliabilityMatrix m;
    m.items.assign(items.begin(), items.end());
    m.coders.assign(coders.begin(), coders.end());
    m.values.assign(m.items.size(), std::vector<std::optional<int>>(m.coders.size()));
    auto index = [](const std::vector<std::string>& v, const std::string& key) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
    };
    for (const auto& r : records) {
        auto& cell = m.values[index(m.items, r.article_id)][index(m.coders, r.worker_id)];
        if (cell) throw AnnotationError("duplicate annotation for (" + r.article_id + ", " + r.worker_id + ")");
        cell = answer_of(r, question) ? 1 : 0;
    }
    return m;
}

std::vector<ItemCounts> item_counts(const std::vector<AnnotationRecord>& records, std::string_view question) {
    std::map<std::string, ItemCounts> by_item;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : records) {
        if (!seen.emplace(r.article_id, r.worker_id).second) {
            throw AnnotationError("duplicate annotation for (" + r.article_id + ", " + r.worker_id + ")");
        }
        ++by_item[r.article_id][answer_of(r, question) ? 1 : 0];
    }
    std::vector<ItemCounts> out;
    out.reserve(by_item.size());
    for (auto& [id, counts] : by_item) out.push_back(std::move(counts));
    return out;
}

}  // namespace newsagg::annotation
