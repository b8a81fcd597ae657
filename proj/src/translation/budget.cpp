#include "newsagg/translation/budget.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "newsagg/core/article.hpp"
#include "newsagg/core/time.hpp"

namespace newsagg::translation {

using nlohmann::json;

void validate(const TranslationBudget& b) {
    if (b.daily_capacity < 0) throw BudgetError("daily_capacity must be >= 0");
    if (b.consumed_today < 0 || b.consumed_today > b.daily_capacity) {
        throw BudgetError("consumed_today must lie in [0, daily_capacity]");
    }
}

std::string to_string(Day d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

Day parse_day(const std::string& s) {
    try {
        return Day{std::chrono::floor<std::chrono::days>(core::parse_rfc3339(s))};
    } catch (const core::TimeParseError& e) {
        throw BudgetError(std::string("bad day: ") + e.what());
    }
}

json to_json(const TranslationBudget& b) {
    return json{{"daily_capacity", b.daily_capacity},
                {"consumed_today", b.consumed_today},
                {"day", to_string(b.day)}};
}

TranslationBudget budget_from_json(const json& j) {
    TranslationBudget b;
    b.daily_capacity = j.value("daily_capacity", b.daily_capacity);
    b.consumed_today = j.value("consumed_today", 0);
    b.day = parse_day(j.at("day").get<std::string>());
    validate(b);
    return b;
}

void validate(const TranslationJob& job) {
    if (job.article_id.empty()) throw BudgetError("job without article_id");
    if (job.targets.empty()) throw BudgetError("job " + job.article_id + " has no targets");
    for (const auto& t : job.targets) {
        if (!core::is_translation_target(t)) throw BudgetError("unsupported target language: " + t);
    }
}

static const char* state_name(JobState s) {
    switch (s) {
        case JobState::Queued: return "queued";
        case JobState::Done: return "done";
        case JobState::Failed: return "failed";
    }
    return "queued";
}

json to_json(const TranslationJob& job) {
    json j{{"article_id", job.article_id},
           {"source_lang", job.source_lang},
           {"targets", job.targets},
           {"priority", job.priority},
           {"sequence", job.sequence},
           {"state", state_name(job.state)}};
    if (!job.reason.empty()) j["reason"] = job.reason;
    return j;
}

TranslationJob job_from_json(const json& j) {
    TranslationJob job;
    job.article_id = j.at("article_id").get<std::string>();
    job.source_lang = j.value("source_lang", "");
    job.targets = j.at("targets").get<std::vector<std::string>>();
    job.priority = j.value("priority", 1);
    job.sequence = j.value("sequence", std::uint64_t{0});
    auto state = j.value("state", "queued");
    if (state == "queued") job.state = JobState::Queued;
    else if (state == "done") job.state = JobState::Done;
    else if (state == "failed") job.state = JobState::Failed;
    else throw BudgetError("unknown job state: " + state);
    job.reason = j.value("reason", "");
    validate(job);
    return job;
}

QueuePlan plan_queue(const std::vector<TranslationJob>& jobs, const TranslationBudget& budget) {
    validate(budget);
    std::set<std::string> ids;
    for (const auto& job : jobs) {
        if (!ids.insert(job.article_id).second) throw BudgetError("duplicate job for article " + job.article_id);
    }
    auto ordered = jobs;
    std::stable_sort(ordered.begin(), ordered.end(), [](const TranslationJob& a, const TranslationJob& b) {
        if (a.priority != b.priority) return a.priority < b.priority;
        return a.sequence < b.sequence;
    });
    auto take = std::min<std::size_t>(ordered.size(), static_cast<std::size_t>(budget.remaining()));
    QueuePlan plan;
    plan.today.assign(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(take));
    plan.deferred.assign(ordered.begin() + static_cast<std::ptrdiff_t>(take), ordered.end());
    return plan;
}

BudgetLedger::BudgetLedger(TranslationBudget initial) : budget_(initial) { validate(budget_); }

void BudgetLedger::roll_locked(Day day) {
    if (day < budget_.day) throw BudgetError("budget day cannot move backwards to " + to_string(day));
    if (day > budget_.day) {
        budget_.day = day;
        budget_.consumed_today = 0;
    }
}

void BudgetLedger::roll_to(Day day) {
    std::lock_guard lock(mutex_);
    roll_locked(day);
}

bool BudgetLedger::try_acquire(Day day) {
    std::lock_guard lock(mutex_);
    roll_locked(day);
    if (budget_.consumed_today >= budget_.daily_capacity) return false;
    ++budget_.consumed_today;
    return true;
}

TranslationBudget BudgetLedger::snapshot() const {
    std::lock_guard lock(mutex_);
    return budget_;
}

}  // namespace newsagg::translation
