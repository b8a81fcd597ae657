#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace newsagg::translation {

using Day = std::chrono::year_month_day;

class BudgetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TranslationBudget {
    int daily_capacity = 3000;  // articles per day
    int consumed_today = 0;
    Day day{};

    int remaining() const { return daily_capacity - consumed_today; }
};

void validate(const TranslationBudget& b);
nlohmann::json to_json(const TranslationBudget& b);
TranslationBudget budget_from_json(const nlohmann::json& j);

std::string to_string(Day d);
Day parse_day(const std::string& s);

enum class JobState { Queued, Done, Failed };

struct TranslationJob {
    std::string article_id;
    std::string source_lang;
    std::vector<std::string> targets;  // subset of {ja, en}
    int priority = 1;                  // lower runs sooner
    std::uint64_t sequence = 0;        // enqueue order, FIFO key within a priority
    JobState state = JobState::Queued;
    std::string reason;                // set when failed

    friend bool operator==(const TranslationJob&, const TranslationJob&) = default;
};

// Throws BudgetError for empty or unknown targets.
void validate(const TranslationJob& job);
nlohmann::json to_json(const TranslationJob& job);
TranslationJob job_from_json(const nlohmann::json& j);

struct QueuePlan {
    std::vector<TranslationJob> today;
    std::vector<TranslationJob> deferred;
};

// Orders jobs by (priority, sequence) and takes as many as the budget has
// left. Both halves keep that order. Throws BudgetError on duplicate
// article ids.
QueuePlan plan_queue(const std::vector<TranslationJob>& jobs, const TranslationBudget& budget);

// Thread-safe daily counter. Every provider-bound article must take a slot
// first; the count resets when the day advances.
class BudgetLedger {
public:
    explicit BudgetLedger(TranslationBudget initial);

    // Moves to `day`, resetting the counter if it is later than the current
    // one. Throws BudgetError when going backwards.
    void roll_to(Day day);

    // Takes one slot for `day` (rolling over if needed); false when the day
    // is used up.
    bool try_acquire(Day day);

    TranslationBudget snapshot() const;

private:
    void roll_locked(Day day);

    mutable std::mutex mutex_;
    TranslationBudget budget_;
};

}  // namespace newsagg::translation
