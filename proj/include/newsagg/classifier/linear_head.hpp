#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "newsagg/classifier/pooling.hpp"
#include "newsagg/core/topic.hpp"

namespace newsagg::classifier {

class TrainingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LinearHead {
    core::Topic task = core::Topic::RelatedToCovid;
    Vector weights;
    double bias = 0.0;
    double threshold = 0.5;

    std::size_t dim() const { return weights.size(); }
};

nlohmann::json to_json(const LinearHead& h);
LinearHead head_from_json(const nlohmann::json& j);

struct TrainParams {
    double l2 = 1e-4;       // on the weights only
    double step = 0.1;
    int iterations = 500;
    bool balance_classes = false;  // inverse-frequency weighting of the two classes
};

// Full-batch objective: weighted mean cross-entropy + l2/2 * |w|^2. With
// unit sample weights the mean is the plain average.
struct Objective {
    const std::vector<Vector>* x = nullptr;
    const std::vector<bool>* y = nullptr;
    std::vector<double> sample_weight;
    double l2 = 0.0;

    // Returns the loss; fills grad_w / grad_b when non-null.
    double evaluate(const Vector& w, double b, Vector* grad_w, double* grad_b) const;
};

// Builds the objective for `params` over a feature matrix. Throws
// TrainingError on size or dimension mismatch.
Objective make_objective(const std::vector<Vector>& x, const std::vector<bool>& y, const TrainParams& params);

struct TrainResult {
    LinearHead head;
    std::vector<double> loss_history;  // loss before each step, then the final loss
};

// L2-regularized logistic regression by gradient descent from zero. Throws
// TrainingError if there are fewer than two samples, a single class, or
// mismatched dimensions.
TrainResult train_head(core::Topic task, const std::vector<FeatureVector>& features, const std::vector<bool>& labels,
                       const TrainParams& params = {});

// Trains one head per entry of `labels` (same feature order) on up to
// `threads` threads.
std::map<core::Topic, TrainResult> train_heads(const std::vector<FeatureVector>& features,
                                               const std::map<core::Topic, std::vector<bool>>& labels,
                                               const TrainParams& params, std::size_t threads);

double sigmoid(double z);

struct Prediction {
    double probability = 0.0;
    bool label = false;
};

// Throws TrainingError on a dimension mismatch.
Prediction predict(const LinearHead& head, const FeatureVector& features);

// Runs every head; all content topics are cleared when the gate head says
// no. Topics without a head are false. Throws TrainingError without a gate
// head.
core::TopicFlags classify(const FeatureVector& features, const std::map<core::Topic, LinearHead>& heads);

// A model file holds one head object or an array of them.
std::map<core::Topic, LinearHead> load_heads(const std::vector<std::string>& paths);

}  // namespace newsagg::classifier
