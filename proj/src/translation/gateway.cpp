#include "newsagg/translation/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "newsagg/core/sentences.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::translation {

std::vector<std::string> chunk_sentences(const std::vector<std::string>& sentences, std::size_t max_bytes) {
    if (max_bytes == 0) throw std::invalid_argument("max_bytes must be positive");
    std::vector<std::string> chunks;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) chunks.push_back(std::move(current));
        current.clear();
    };
    for (const auto& sentence : sentences) {
        std::string_view rest = sentence;
        if (rest.size() > max_bytes) {
            flush();
            while (rest.size() > max_bytes) {
                auto cut = core::utf8_safe_prefix(rest, max_bytes);
                if (cut == 0) cut = std::min(rest.size(), max_bytes);
                chunks.emplace_back(rest.substr(0, cut));
                rest.remove_prefix(cut);
            }
            if (!rest.empty()) current = std::string(rest);
            continue;
        }
        if (!current.empty() && current.size() + 1 + rest.size() > max_bytes) flush();
        if (!current.empty()) current += ' ';
        current += rest;
    }
    flush();
    return chunks;
}

core::Article translate_article(const core::Article& article, TranslationProvider& provider,
                                const std::vector<std::string>& targets, std::size_t max_segment_bytes) {
    if (targets.empty()) throw TranslationError("no target languages");
    for (const auto& t : targets) {
        if (!core::is_translation_target(t)) throw TranslationError("unsupported target language: " + t);
    }
    if (core::trim(article.extracted_text).empty()) throw TranslationError("article has no extracted text");

    auto sentences = article.sentences.empty() ? core::segment_sentences(article.extracted_text) : article.sentences;
    auto segments = chunk_sentences(sentences, max_segment_bytes);

    auto out = article;
    for (const auto& target : targets) {
        if (target == article.language) {
            out.translations[target] = article.extracted_text;
            continue;
        }
        std::vector<std::string> translated;
        translated.reserve(segments.size());
        for (const auto& seg : segments) {
            std::string text;
            try {
                text = provider.translate(article.language, target, seg);
            } catch (const ProviderError& e) {
                throw TranslationError(e.what());
            }
            translated.push_back(std::move(text));
        }
        auto joined = core::join(translated, " ");
        if (core::trim(joined).empty()) throw TranslationError("empty translation");
        out.translations[target] = std::move(joined);
    }
    return out;
}

TranslationGateway::TranslationGateway(TranslationProvider& provider, GatewayConfig config, TranslationBudget budget)
    : provider_(provider), config_(std::move(config)), ledger_(budget) {
    if (config_.workers == 0) throw std::invalid_argument("workers must be >= 1");
}

bool TranslationGateway::enqueue(const core::Article& article, int priority) {
    return enqueue(article, priority, config_.targets);
}

bool TranslationGateway::enqueue(const core::Article& article, int priority, std::vector<std::string> targets) {
    if (jobs_.count(article.id)) return false;
    TranslationJob job;
    job.article_id = article.id;
    job.source_lang = article.language;
    job.targets = std::move(targets);
    job.priority = priority;
    job.sequence = next_sequence_++;
    validate(job);
    jobs_.emplace(article.id, std::move(job));
    articles_.emplace(article.id, article);
    return true;
}

std::vector<TranslationJob> TranslationGateway::pending() const {
    std::vector<TranslationJob> out;
    out.reserve(jobs_.size());
    for (const auto& [id, job] : jobs_) out.push_back(job);
    std::sort(out.begin(), out.end(), [](const TranslationJob& a, const TranslationJob& b) {
        return std::tie(a.priority, a.sequence) < std::tie(b.priority, b.sequence);
    });
    return out;
}

DayReport TranslationGateway::run_day(Day day) {
    ledger_.roll_to(day);
    auto plan = plan_queue(pending(), ledger_.snapshot());

    DayReport report;
    report.day = day;
    report.deferred = plan.deferred.size();

    struct Slot {
        std::optional<core::Article> article;
        std::string error;
        bool attempted = false;
    };
    std::vector<Slot> slots(plan.today.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next++; i < plan.today.size(); i = next++) {
            const auto& job = plan.today[i];
            if (!ledger_.try_acquire(day)) continue;
            slots[i].attempted = true;
            try {
                slots[i].article = translate_article(articles_.at(job.article_id), provider_, job.targets,
                                                     config_.max_segment_bytes);
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    auto workers = std::clamp<std::size_t>(config_.workers, 1, std::max<std::size_t>(plan.today.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }

    for (std::size_t i = 0; i < plan.today.size(); ++i) {
        if (!slots[i].attempted) {
            ++report.deferred;
            continue;
        }
        auto job = plan.today[i];
        jobs_.erase(job.article_id);
        articles_.erase(job.article_id);
        if (slots[i].article) {
            job.state = JobState::Done;
            report.done.push_back(job);
            report.translated.push_back(std::move(*slots[i].article));
        } else {
            job.state = JobState::Failed;
            job.reason = slots[i].error;
            report.failed.push_back(job);
        }
    }
    return report;
}

}  // namespace newsagg::translation
