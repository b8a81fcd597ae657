#include "newsagg/annotation/aggregate.hpp"

#include <map>
#include <set>

#include "newsagg/annotation/alpha.hpp"

namespace newsagg::annotation {

core::AggregatedLabels aggregate_article(const std::vector<AnnotationRecord>& records) {
    if (records.empty()) throw AnnotationError("no annotations to aggregate");
    core::AggregatedLabels out;
    out.article_id = records.front().article_id;

    std::set<std::string> workers;
    int related = 0, useful = 0, fluent = 0;
    std::map<core::Topic, int> topic_votes;
    for (const auto& r : records) {
        validate_record(r);
        if (r.article_id != out.article_id) {
            throw AnnotationError("mixed article ids: " + out.article_id + " and " + r.article_id);
        }
        if (!workers.insert(r.worker_id).second) {
            throw AnnotationError("duplicate annotation for (" + r.article_id + ", " + r.worker_id + ")");
        }
        related += r.related;
        useful += r.useful;
        fluent += r.fluent;
        for (auto t : r.topics) ++topic_votes[t];
    }

    int n = static_cast<int>(records.size());
    out.n_workers = n;
    out.related = strict_majority(related, n);
    out.useful = strict_majority(useful, n);
    out.fluent = strict_majority(fluent, n);
    out.vote_counts["related"] = related;
    out.vote_counts["useful"] = useful;
    out.vote_counts["fluent"] = fluent;
    out.topic_flags[core::Topic::RelatedToCovid] = out.related;
    for (auto t : core::kContentTopics) {
        int votes = topic_votes[t];
        out.vote_counts["topic:" + std::string(core::to_string(t))] = votes;
        out.topic_flags[t] = out.related && strict_majority(votes, n);
    }
    return out;
}

std::vector<core::AggregatedLabels> aggregate_labels(const std::vector<AnnotationRecord>& records) {
    std::map<std::string, std::vector<AnnotationRecord>> by_article;
    for (const auto& r : records) by_article[r.article_id].push_back(r);
    std::vector<core::AggregatedLabels> out;
    out.reserve(by_article.size());
    for (const auto& [id, group] : by_article) out.push_back(aggregate_article(group));
    return out;
}

FluencyReport fluency_report(const std::vector<AnnotationRecord>& records) {
    FluencyReport report;
    for (const auto& labels : aggregate_labels(records)) {
        if (labels.fluent) ++report.fluent;
        else ++report.not_fluent;
    }
    try {
        report.alpha = krippendorff_alpha(item_counts(records, "fluent"));
    } catch (const AlphaUndefined& e) {
        report.alpha_error = e.what();
    }
    return report;
}

}  // namespace newsagg::annotation
