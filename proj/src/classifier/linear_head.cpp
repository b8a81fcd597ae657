#include "newsagg/classifier/linear_head.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "newsagg/core/jsonl.hpp"

namespace newsagg::classifier {

using nlohmann::json;

json to_json(const LinearHead& h) {
    return json{{"task", std::string(core::to_string(h.task))},
                {"dim", h.weights.size()},
                {"weights", h.weights},
                {"bias", h.bias},
                {"threshold", h.threshold}};
}

LinearHead head_from_json(const json& j) {
    LinearHead h;
    try {
        h.task = core::parse_topic(j.at("task").get<std::string>());
        h.weights = j.at("weights").get<Vector>();
        h.bias = j.at("bias").get<double>();
        h.threshold = j.value("threshold", 0.5);
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != h.weights.size()) {
            throw TrainingError("head dim does not match weights length");
        }
    } catch (const json::exception& e) {
        throw TrainingError(std::string("malformed head: ") + e.what());
    } catch (const core::TopicError& e) {
        throw TrainingError(e.what());
    }
    if (!(h.threshold > 0.0 && h.threshold < 1.0)) throw TrainingError("threshold must lie in (0, 1)");
    return h;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    auto e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
static double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double Objective::evaluate(const Vector& w, double b, Vector* grad_w, double* grad_b) const {
    const auto& X = *x;
    const auto& Y = *y;
    double total_weight = 0.0;
    for (double sw : sample_weight) total_weight += sw;

    if (grad_w) grad_w->assign(w.size(), 0.0);
    if (grad_b) *grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double z = b;
        for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * X[i][k];
        // cross-entropy of sigmoid(z) against y, written via softplus
        loss += sample_weight[i] * (Y[i] ? softplus(-z) : softplus(z));
        if (grad_w || grad_b) {
            double r = sample_weight[i] * (sigmoid(z) - (Y[i] ? 1.0 : 0.0));
            if (grad_w) {
                for (std::size_t k = 0; k < w.size(); ++k) (*grad_w)[k] += r * X[i][k];
            }
            if (grad_b) *grad_b += r;
        }
    }
    loss /= total_weight;
    double sq = 0.0;
    for (double v : w) sq += v * v;
    loss += 0.5 * l2 * sq;
    if (grad_w) {
        for (std::size_t k = 0; k < w.size(); ++k) (*grad_w)[k] = (*grad_w)[k] / total_weight + l2 * w[k];
    }
    if (grad_b) *grad_b /= total_weight;
    return loss;
}

Objective make_objective(const std::vector<Vector>& x, const std::vector<bool>& y, const TrainParams& params) {
    if (x.size() != y.size()) throw TrainingError("features and labels differ in length");
    if (x.size() < 2) throw TrainingError("need at least two training samples");
    for (const auto& row : x) {
        if (row.size() != x.front().size()) throw TrainingError("feature dimension mismatch");
    }
    std::size_t pos = 0;
    for (bool v : y) pos += v;
    if (pos == 0 || pos == y.size()) throw TrainingError("degenerate training set: only one class present");

    Objective obj;
    obj.x = &x;
    obj.y = &y;
    obj.l2 = params.l2;
    obj.sample_weight.assign(x.size(), 1.0);
    if (params.balance_classes) {
        double n = static_cast<double>(y.size());
        double w_pos = n / (2.0 * static_cast<double>(pos));
        double w_neg = n / (2.0 * static_cast<double>(y.size() - pos));
        for (std::size_t i = 0; i < y.size(); ++i) obj.sample_weight[i] = y[i] ? w_pos : w_neg;
    }
    return obj;
}

TrainResult train_head(core::Topic task, const std::vector<FeatureVector>& features, const std::vector<bool>& labels,
                       const TrainParams& params) {
    if (params.iterations < 0) throw TrainingError("iterations must be >= 0");
    if (!(params.step > 0)) throw TrainingError("step must be positive");
    std::vector<Vector> x;
    x.reserve(features.size());
    for (const auto& f : features) x.push_back(f.values);
    auto obj = make_objective(x, labels, params);

    TrainResult result;
    auto& head = result.head;
    head.task = task;
    head.weights.assign(x.front().size(), 0.0);
    Vector gw;
    double gb = 0.0;
    for (int it = 0; it < params.iterations; ++it) {
        result.loss_history.push_back(obj.evaluate(head.weights, head.bias, &gw, &gb));
        for (std::size_t k = 0; k < gw.size(); ++k) head.weights[k] -= params.step * gw[k];
        head.bias -= params.step * gb;
    }
    result.loss_history.push_back(obj.evaluate(head.weights, head.bias, nullptr, nullptr));
    return result;
}

std::map<core::Topic, TrainResult> train_heads(const std::vector<FeatureVector>& features,
                                               const std::map<core::Topic, std::vector<bool>>& labels,
                                               const TrainParams& params, std::size_t threads) {
    std::vector<core::Topic> tasks;
    for (const auto& [t, y] : labels) tasks.push_back(t);
    std::vector<std::optional<TrainResult>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = train_head(tasks[i], features, labels.at(tasks[i]), params);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work);
        work();
    }
    std::map<core::Topic, TrainResult> out;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.emplace(tasks[i], std::move(*results[i]));
    }
    return out;
}

Prediction predict(const LinearHead& head, const FeatureVector& features) {
    if (features.values.size() != head.weights.size()) {
        throw TrainingError("feature dim " + std::to_string(features.values.size()) + " does not match head dim " +
                            std::to_string(head.weights.size()));
    }
    double z = head.bias;
    for (std::size_t k = 0; k < head.weights.size(); ++k) z += head.weights[k] * features.values[k];
    Prediction p;
    p.probability = sigmoid(z);
    p.label = p.probability >= head.threshold;
    return p;
}

core::TopicFlags classify(const FeatureVector& features, const std::map<core::Topic, LinearHead>& heads) {
    auto gate = heads.find(core::Topic::RelatedToCovid);
    if (gate == heads.end()) throw TrainingError("no head for related_to_covid");
    core::TopicFlags flags;
    flags[core::Topic::RelatedToCovid] = predict(gate->second, features).label;
    for (auto t : core::kContentTopics) {
        auto it = heads.find(t);
        if (it != heads.end()) flags[t] = predict(it->second, features).label;
    }
    return flags.gated();
}

std::map<core::Topic, LinearHead> load_heads(const std::vector<std::string>& paths) {
    std::map<core::Topic, LinearHead> heads;
    auto add = [&](const json& j, const std::string& path) {
        auto h = head_from_json(j);
        auto task = h.task;
        if (!heads.emplace(task, std::move(h)).second) {
            throw TrainingError("second head for " + std::string(core::to_string(task)) + " in " + path);
        }
    };
    for (const auto& path : paths) {
        auto j = core::read_json_file(path);
        if (j.is_array()) {
            for (const auto& h : j) add(h, path);
        } else {
            add(j, path);
        }
    }
    return heads;
}

}  // namespace newsagg::classifier
