#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"

namespace newsagg::classifier {

class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

struct SentenceEmbeddings {
    std::string article_id;
    int dim = 0;
    std::vector<Vector> vectors;  // one per sentence

    friend bool operator==(const SentenceEmbeddings&, const SentenceEmbeddings&) = default;
};

nlohmann::json to_json(const SentenceEmbeddings& e);
// Throws EmbeddingError when a vector's length differs from dim.
SentenceEmbeddings embeddings_from_json(const nlohmann::json& j);

// Frozen sentence encoder: one vector per input sentence, all of length
// dim(). Implementations must be callable from several threads at once.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual int dim() const = 0;
    virtual std::vector<Vector> embed(const std::vector<std::string>& sentences) = 0;
};

struct SignalRule {
    std::string trigger;  // case-insensitive substring of the sentence
    int dim = 0;          // coordinate that receives the signal
    double amplitude = 1.0;
};

// Deterministic stand-in for an encoder. Each sentence maps to a unit vector
// drawn from a generator seeded by the sentence hash and `seed`; every rule
// whose trigger occurs in the sentence adds amplitude to its coordinate.
class MockEmbeddingProvider final : public EmbeddingProvider {
public:
    MockEmbeddingProvider(int dim, std::uint64_t seed, std::vector<SignalRule> rules = {});

    int dim() const override { return dim_; }
    std::vector<Vector> embed(const std::vector<std::string>& sentences) override;

    std::size_t calls() const { return calls_.load(); }
    std::size_t largest_batch() const { return largest_batch_.load(); }

private:
    int dim_;
    std::uint64_t seed_;
    std::vector<SignalRule> rules_;  // triggers stored case-folded
    std::atomic<std::size_t> calls_{0};
    std::atomic<std::size_t> largest_batch_{0};
};

// rules file: [{"trigger": "...", "dim": 3, "amplitude": 2.0}, ...]
std::vector<SignalRule> load_signal_rules(const std::string& path);

// POST {base_url}/embed with {sentences} -> {dim, vectors}.
class HttpEmbeddingProvider final : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(std::string base_url, int dim, int timeout_ms = 60000);
    int dim() const override { return dim_; }
    std::vector<Vector> embed(const std::vector<std::string>& sentences) override;

private:
    std::string base_url_;
    int dim_;
    int timeout_ms_;
};

inline constexpr std::size_t kEmbedBatch = 64;

// Sentences used for classification: the article's own list when present,
// otherwise the segmented translation into `lang`, otherwise the segmented
// extracted text.
std::vector<std::string> sentences_for(const core::Article& article, const std::string& lang);

// Embeds article.sentences in batches of at most `batch` sentences. Throws
// EmbeddingError (naming the article) on zero sentences or provider failure.
SentenceEmbeddings embed_article(const core::Article& article, EmbeddingProvider& provider,
                                 std::size_t batch = kEmbedBatch);

}  // namespace newsagg::classifier
