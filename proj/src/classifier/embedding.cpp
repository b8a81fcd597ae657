#include "newsagg/classifier/embedding.hpp"

#include <httplib.h>

#include <cmath>
#include <random>

#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/sentences.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::classifier {

using nlohmann::json;

json to_json(const SentenceEmbeddings& e) {
    return json{{"article_id", e.article_id}, {"dim", e.dim}, {"vectors", e.vectors}};
}

SentenceEmbeddings embeddings_from_json(const json& j) {
    SentenceEmbeddings e;
    try {
        e.article_id = j.at("article_id").get<std::string>();
        e.dim = j.at("dim").get<int>();
        e.vectors = j.at("vectors").get<std::vector<Vector>>();
    } catch (const json::exception& ex) {
        throw EmbeddingError(std::string("malformed embeddings: ") + ex.what());
    }
    for (const auto& v : e.vectors) {
        if (static_cast<int>(v.size()) != e.dim) {
            throw EmbeddingError("embedding for " + e.article_id + " has length " + std::to_string(v.size()) +
                                 ", expected " + std::to_string(e.dim));
        }
    }
    return e;
}

MockEmbeddingProvider::MockEmbeddingProvider(int dim, std::uint64_t seed, std::vector<SignalRule> rules)
    : dim_(dim), seed_(seed), rules_(std::move(rules)) {
    if (dim_ < 1) throw EmbeddingError("embedding dim must be >= 1");
    for (auto& r : rules_) {
        if (r.trigger.empty()) throw EmbeddingError("signal rule with empty trigger");
        if (r.dim < 0 || r.dim >= dim_) throw EmbeddingError("signal dim out of range for trigger " + r.trigger);
        r.trigger = core::fold_case(r.trigger);
    }
}

std::vector<Vector> MockEmbeddingProvider::embed(const std::vector<std::string>& sentences) {
    ++calls_;
    auto prev = largest_batch_.load();
    while (prev < sentences.size() && !largest_batch_.compare_exchange_weak(prev, sentences.size())) {
    }

    std::vector<Vector> out;
    out.reserve(sentences.size());
    for (const auto& s : sentences) {
        std::mt19937_64 rng(core::fnv1a64(s) ^ seed_);
        std::normal_distribution<double> normal;
        Vector v(static_cast<std::size_t>(dim_));
        double norm = 0.0;
        for (auto& x : v) {
            x = normal(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        if (!rules_.empty()) {
            auto folded = core::fold_case(s);
            for (const auto& r : rules_) {
                if (folded.find(r.trigger) != std::string::npos) v[static_cast<std::size_t>(r.dim)] += r.amplitude;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<SignalRule> load_signal_rules(const std::string& path) {
    auto j = core::read_json_file(path);
    std::vector<SignalRule> rules;
    try {
        for (const auto& r : j) {
            rules.push_back({r.at("trigger").get<std::string>(), r.at("dim").get<int>(), r.value("amplitude", 1.0)});
        }
    } catch (const json::exception& e) {
        throw EmbeddingError("bad signal rules in " + path + ": " + e.what());
    }
    return rules;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url, int dim, int timeout_ms)
    : base_url_(std::move(base_url)), dim_(dim), timeout_ms_(timeout_ms) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::vector<Vector> HttpEmbeddingProvider::embed(const std::vector<std::string>& sentences) {
    httplib::Client client(base_url_);
    auto t = std::chrono::milliseconds(timeout_ms_);
    client.set_connection_timeout(t);
    client.set_read_timeout(t);
    client.set_write_timeout(t);
    auto res = client.Post("/embed", json{{"sentences", sentences}}.dump(), "application/json");
    if (!res) throw EmbeddingError("embedding request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw EmbeddingError("embedding service returned HTTP " + std::to_string(res->status));
    std::vector<Vector> vectors;
    int dim = 0;
    try {
        auto body = json::parse(res->body);
        dim = body.at("dim").get<int>();
        vectors = body.at("vectors").get<std::vector<Vector>>();
    } catch (const json::exception& e) {
        throw EmbeddingError(std::string("malformed embedding response: ") + e.what());
    }
    if (dim != dim_) throw EmbeddingError("embedding service dim " + std::to_string(dim) + " != " + std::to_string(dim_));
    if (vectors.size() != sentences.size()) throw EmbeddingError("embedding service returned wrong vector count");
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != dim_) throw EmbeddingError("embedding service returned wrong vector length");
    }
    return vectors;
}

std::vector<std::string> sentences_for(const core::Article& article, const std::string& lang) {
    if (!article.sentences.empty()) return article.sentences;
    if (auto it = article.translations.find(lang); it != article.translations.end()) {
        return core::segment_sentences(it->second);
    }
    return core::segment_sentences(article.extracted_text);
}

SentenceEmbeddings embed_article(const core::Article& article, EmbeddingProvider& provider, std::size_t batch) {
    if (batch == 0) throw EmbeddingError("batch size must be >= 1");
    if (article.sentences.empty()) throw EmbeddingError("article " + article.id + " is unembeddable: no sentences");
    SentenceEmbeddings out;
    out.article_id = article.id;
    out.dim = provider.dim();
    out.vectors.reserve(article.sentences.size());
    for (std::size_t i = 0; i < article.sentences.size(); i += batch) {
        auto end = std::min(article.sentences.size(), i + batch);
        std::vector<std::string> chunk(article.sentences.begin() + static_cast<std::ptrdiff_t>(i),
                                       article.sentences.begin() + static_cast<std::ptrdiff_t>(end));
        std::vector<Vector> vecs;
        try {
            vecs = provider.embed(chunk);
        } catch (const std::exception& e) {
            throw EmbeddingError("embedding article " + article.id + " failed: " + e.what());
        }
        if (vecs.size() != chunk.size()) throw EmbeddingError("provider returned wrong vector count for " + article.id);
        for (auto& v : vecs) {
            if (static_cast<int>(v.size()) != out.dim) throw EmbeddingError("provider returned wrong dim for " + article.id);
            out.vectors.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace newsagg::classifier
