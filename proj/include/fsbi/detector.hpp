#pragma once

#include "fsbi/types.hpp"
#include "fsbi/wavelet.hpp"

#include <string>
#include <vector>

namespace fsbi {

// 3 channels x 4 subbands x (mean |coef|, std) in fixed order.
inline constexpr int kFeatureDim = 24;

using FeatureVector = Eigen::VectorXd;

struct Model {
    Eigen::VectorXd weights;
    double bias = 0.0;
    Eigen::VectorXd feature_mean, feature_std;  // frozen at training time
    WaveletSpec wavelet;
};

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 500;
    double l2 = 1e-4;
    std::uint64_t seed = 0;
};

FeatureVector extract_features(const Image& image, const WaveletSpec& wavelet);

struct LossGrad {
    double loss = 0.0;
    Eigen::VectorXd grad_w;
    double grad_b = 0.0;
};

// Mean binary cross-entropy plus (l2/2)*||w||^2 and its exact gradient.
LossGrad loss_and_grad(const Model& model,
                       const std::vector<std::pair<FeatureVector, int>>& batch, double l2);

// Full-batch gradient descent on z-scored features; the normalization
// statistics are frozen into the returned model. `loss_history`, when given,
// receives the loss before each update.
Model train(const std::vector<std::pair<FeatureVector, int>>& samples, const TrainConfig& cfg,
            const WaveletSpec& wavelet, std::vector<double>* loss_history = nullptr);

double predict(const Model& model, const Image& image);
double predict_features(const Model& model, const FeatureVector& raw);

// JSON persistence, full double round-trip.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace fsbi
