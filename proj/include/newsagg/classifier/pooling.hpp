#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/classifier/embedding.hpp"

namespace newsagg::classifier {

// mean ++ max, length 2 * dim.
struct FeatureVector {
    std::string article_id;
    Vector values;

    std::size_t embedding_dim() const { return values.size() / 2; }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

nlohmann::json to_json(const FeatureVector& f);
FeatureVector features_from_json(const nlohmann::json& j);

// The mean of each coordinate is summed in sorted order, so the result does
// not depend on sentence order at all. Throws EmbeddingError on an empty set
// or ragged vectors.
FeatureVector pool(const SentenceEmbeddings& embeddings);

}  // namespace newsagg::classifier
