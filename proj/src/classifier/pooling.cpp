#include "newsagg/classifier/pooling.hpp"

#include <algorithm>

namespace newsagg::classifier {

using nlohmann::json;

json to_json(const FeatureVector& f) { return json{{"article_id", f.article_id}, {"values", f.values}}; }

FeatureVector features_from_json(const json& j) {
    FeatureVector f;
    try {
        f.article_id = j.at("article_id").get<std::string>();
        f.values = j.at("values").get<Vector>();
    } catch (const json::exception& e) {
        throw EmbeddingError(std::string("malformed feature vector: ") + e.what());
    }
    if (f.values.empty() || f.values.size() % 2 != 0) {
        throw EmbeddingError("feature vector for " + f.article_id + " must have even, non-zero length");
    }
    return f;
}

FeatureVector pool(const SentenceEmbeddings& e) {
    if (e.vectors.empty()) throw EmbeddingError("cannot pool " + e.article_id + ": no sentence vectors");
    auto d = static_cast<std::size_t>(e.dim);
    for (const auto& v : e.vectors) {
        if (v.size() != d) throw EmbeddingError("ragged embeddings for " + e.article_id);
    }
    FeatureVector f;
    f.article_id = e.article_id;
    f.values.assign(2 * d, 0.0);
    std::vector<double> column(e.vectors.size());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t s = 0; s < e.vectors.size(); ++s) column[s] = e.vectors[s][i];
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (double x : column) sum += x;
        double mean = sum / static_cast<double>(column.size());
        f.values[i] = std::clamp(mean, column.front(), column.back());
        f.values[d + i] = column.back();
    }
    return f;
}

}  // namespace newsagg::classifier
