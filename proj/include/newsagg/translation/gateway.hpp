#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newsagg/core/article.hpp"
#include "newsagg/translation/budget.hpp"
#include "newsagg/translation/providers.hpp"

namespace newsagg::translation {

class TranslationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxSegmentBytes = 4000;

// Packs sentences into segments of at most `max_bytes`, joined with a space.
// A sentence longer than the limit is cut on UTF-8 boundaries.
std::vector<std::string> chunk_sentences(const std::vector<std::string>& sentences,
                                         std::size_t max_bytes = kMaxSegmentBytes);

// Returns a copy with translations[target] set for every target. Segments
// are translated in order and re-joined with a space. A target equal to the
// article language is copied without calling the provider. Throws
// TranslationError when the text is empty, the provider fails or returns
// nothing; the input is never modified.
core::Article translate_article(const core::Article& article, TranslationProvider& provider,
                                const std::vector<std::string>& targets,
                                std::size_t max_segment_bytes = kMaxSegmentBytes);

struct GatewayConfig {
    std::size_t workers = 4;
    std::vector<std::string> targets{"ja", "en"};
    std::size_t max_segment_bytes = kMaxSegmentBytes;
};

struct DayReport {
    Day day{};
    std::vector<core::Article> translated;  // in execution order
    std::vector<TranslationJob> done;
    std::vector<TranslationJob> failed;
    std::size_t deferred = 0;
};

// Persistent queue in front of the provider. Jobs left over at the end of a
// day stay queued and, having older sequence numbers, run before newer jobs
// of the same priority.
class TranslationGateway {
public:
    TranslationGateway(TranslationProvider& provider, GatewayConfig config, TranslationBudget budget);

    // Queues an article; false if a job for that id is already pending.
    bool enqueue(const core::Article& article, int priority);
    bool enqueue(const core::Article& article, int priority, std::vector<std::string> targets);

    // Runs today's share of the queue on the worker pool.
    DayReport run_day(Day day);

    std::vector<TranslationJob> pending() const;
    const std::map<std::string, core::Article>& pending_articles() const { return articles_; }
    TranslationBudget budget() const { return ledger_.snapshot(); }

private:
    TranslationProvider& provider_;
    GatewayConfig config_;
    BudgetLedger ledger_;
    std::uint64_t next_sequence_ = 0;
    std::map<std::string, TranslationJob> jobs_;
    std::map<std::string, core::Article> articles_;
};

}  // namespace newsagg::translation
