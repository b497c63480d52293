#include "fsbi/detector.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace fsbi {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void subband_stats(const Plane& coefs, double& mean_abs, double& stddev) {
    mean_abs = coefs.abs().mean();
    double mu = coefs.mean();
    stddev = std::sqrt((coefs - mu).square().mean());
}

}  // namespace

FeatureVector extract_features(const Image& image, const WaveletSpec& wavelet) {
    if (image.channels() != 3) throw ChannelMismatch("extract_features needs RGB");
    const FilterBank bank = filter_bank(wavelet);
    FeatureVector out(kFeatureDim);
    Index i = 0;
    for (int c = 0; c < 3; ++c) {
        Subbands sb = dwt2d(image.ch[std::size_t(c)], bank, wavelet.mode);
        for (const Plane* p : {&sb.ll, &sb.lh, &sb.hl, &sb.hh}) {
            double mean_abs, stddev;
            subband_stats(*p, mean_abs, stddev);
            out[i++] = mean_abs;
            out[i++] = stddev;
        }
    }
    return out;
}

LossGrad loss_and_grad(const Model& model,
                       const std::vector<std::pair<FeatureVector, int>>& batch, double l2) {
    if (batch.empty()) throw EmptyBatch("loss_and_grad on empty batch");
    const Index dim = model.weights.size();
    LossGrad lg;
    lg.grad_w = Eigen::VectorXd::Zero(dim);
    for (const auto& [x, y] : batch) {
        if (x.size() != dim) throw DimensionMismatch("feature dimension mismatch");
        double p = sigmoid(model.weights.dot(x) + model.bias);
        // Clamped log keeps the loss finite at saturated predictions.
        double eps = 1e-300;
        lg.loss += y ? -std::log(std::max(p, eps)) : -std::log(std::max(1.0 - p, eps));
        double r = p - double(y);
        lg.grad_w += r * x;
        lg.grad_b += r;
    }
    const double n = double(batch.size());
    lg.loss = lg.loss / n + 0.5 * l2 * model.weights.squaredNorm();
    lg.grad_w = lg.grad_w / n + l2 * model.weights;
    lg.grad_b /= n;
    return lg;
}

Model train(const std::vector<std::pair<FeatureVector, int>>& samples, const TrainConfig& cfg,
            const WaveletSpec& wavelet, std::vector<double>* loss_history) {
    if (samples.size() < 2) throw SingleClassData("need at least 2 samples");
    const Index dim = samples.front().first.size();
    bool has0 = false, has1 = false;
    for (const auto& [x, y] : samples) {
        if (x.size() != dim) throw DimensionMismatch("inconsistent feature dimensions");
        (y ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw SingleClassData("training data must contain both classes");

    Model model;
    model.wavelet = wavelet;
    model.feature_mean = Eigen::VectorXd::Zero(dim);
    for (const auto& [x, y] : samples) model.feature_mean += x;
    model.feature_mean /= double(samples.size());
    Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
    for (const auto& [x, y] : samples)
        var += (x - model.feature_mean).cwiseAbs2();
    model.feature_std = (var / double(samples.size())).cwiseSqrt().cwiseMax(1e-8);

    std::vector<std::pair<FeatureVector, int>> norm;
    norm.reserve(samples.size());
    for (const auto& [x, y] : samples)
        norm.emplace_back((x - model.feature_mean).cwiseQuotient(model.feature_std), y);

    model.weights = Eigen::VectorXd::Zero(dim);
    model.bias = 0.0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        LossGrad lg = loss_and_grad(model, norm, cfg.l2);
        if (loss_history) loss_history->push_back(lg.loss);
        model.weights -= cfg.learning_rate * lg.grad_w;
        model.bias -= cfg.learning_rate * lg.grad_b;
    }
    return model;
}

double predict_features(const Model& model, const FeatureVector& raw) {
    if (raw.size() != model.weights.size())
        throw DimensionMismatch("feature dimension mismatch");
    Eigen::VectorXd x = (raw - model.feature_mean).cwiseQuotient(model.feature_std);
    return sigmoid(model.weights.dot(x) + model.bias);
}

double predict(const Model& model, const Image& image) {
    return predict_features(model, extract_features(image, model.wavelet));
}

void save_model(const Model& model, const std::string& path) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["feature_dim"] = int(model.weights.size());
    j["weights"] = std::vector<double>(model.weights.begin(), model.weights.end());
    j["bias"] = model.bias;
    j["feature_mean"] = std::vector<double>(model.feature_mean.begin(), model.feature_mean.end());
    j["feature_std"] = std::vector<double>(model.feature_std.begin(), model.feature_std.end());
    const std::string wname = model.wavelet.name();
    std::string family = wname;
    std::string order;
    auto digit = wname.find_first_of("0123456789");
    if (wname != "haar" && digit != std::string::npos) {
        family = wname.substr(0, digit);
        order = wname.substr(digit);
    }
    j["wavelet"] = {{"family", family},
                    {"order", order},
                    {"mode", extension_mode_name(model.wavelet.mode)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("model JSON parse error: " + std::string(e.what()));
    }
    for (const char* key :
         {"format_version", "feature_dim", "weights", "bias", "feature_mean", "feature_std",
          "wavelet"})
        if (!j.contains(key)) throw SchemaError(std::string("model missing key '") + key + "'");
    if (j["format_version"].get<int>() != 1) throw SchemaError("unsupported model version");

    Model model;
    auto to_vec = [](const nlohmann::json& a) {
        Eigen::VectorXd v(Index(a.size()));
        Index i = 0;
        for (const auto& x : a) v[i++] = x.get<double>();
        return v;
    };
    model.weights = to_vec(j["weights"]);
    model.bias = j["bias"].get<double>();
    model.feature_mean = to_vec(j["feature_mean"]);
    model.feature_std = to_vec(j["feature_std"]);
    const auto& jw = j["wavelet"];
    for (const char* key : {"family", "order", "mode"})
        if (!jw.contains(key)) throw SchemaError(std::string("wavelet missing key '") + key + "'");
    auto [family, order] = parse_wavelet_name(jw["family"].get<std::string>() +
                                              jw["order"].get<std::string>());
    model.wavelet = {family, order, parse_extension_mode(jw["mode"].get<std::string>())};
    if (model.weights.size() != j["feature_dim"].get<int>() ||
        model.feature_mean.size() != model.weights.size() ||
        model.feature_std.size() != model.weights.size())
        throw SchemaError("model dimensions inconsistent");
    return model;
}

}  // namespace fsbi
