#include "onnsim/inference.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "onnsim/errors.hpp"
#include "onnsim/noise.hpp"
#include "onnsim/parallel.hpp"

namespace onnsim::nn {

namespace {

// Electronic stage after the optical sums of layer k.
Vector electronic_stage(const Layer& layer, const Vector& pre, bool last) {
    const Vector xhat = ((pre - layer.bn_running_mean).array() /
                         (layer.bn_running_var.array() + kBnEps).sqrt())
                            .matrix();
    Vector out = (xhat.array() * layer.bn_gamma.array() + layer.bn_beta.array()).matrix();
    if (!last) out = out.unaryExpr([](double z) { return squash(z); });
    return out;
}

void check_data(const OnnModel& model, const Dataset& data) {
    if (data.images.cols() != model.input_dim) {
        throw ShapeError("images have " + std::to_string(data.images.cols()) + " pixels, model expects " +
                         std::to_string(model.input_dim));
    }
    if (static_cast<Eigen::Index>(data.labels.size()) != data.size()) {
        throw MismatchError("images and labels differ in count");
    }
}

}  // namespace

InferenceConfig default_inference_config(std::uint64_t seed) {
    InferenceConfig cfg;
    cfg.engine.mode = engine::Mode::Nonlinear;
    cfg.engine.noise = noise::from_snr(kDefaultInferenceSnr);
    cfg.engine.adc_bits = kDefaultAdcBits;
    cfg.engine.rng_seed = seed;
    return cfg;
}

InferenceConfig clean_inference_config() {
    InferenceConfig cfg;
    cfg.engine.mode = engine::Mode::Nonlinear;
    return cfg;
}

std::vector<engine::AdcCalibration> calibrate_adc(const OnnModel& model, const Dataset& data, int images) {
    validate(model);
    check_data(model, data);
    const Eigen::Index n = std::min<Eigen::Index>(images, data.size());
    if (n < 1) throw DomainError("ADC calibration needs at least one image");

    std::vector<Vector> lo, hi;
    for (const auto& l : model.layers) {
        lo.emplace_back(Vector::Constant(l.outputs(), std::numeric_limits<double>::infinity()));
        hi.emplace_back(Vector::Constant(l.outputs(), -std::numeric_limits<double>::infinity()));
    }
    for (Eigen::Index r = 0; r < n; ++r) {
        Vector x = data.images.row(r).transpose();
        for (std::size_t k = 0; k < model.layers.size(); ++k) {
            const Vector pre = engine::matvec_clean(x, model.layers[k].weights, engine::Mode::Nonlinear);
            lo[k] = lo[k].cwiseMin(pre);
            hi[k] = hi[k].cwiseMax(pre);
            x = electronic_stage(model.layers[k], pre, k + 1 == model.layers.size());
        }
    }
    std::vector<engine::AdcCalibration> out;
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        engine::AdcCalibration c;
        c.center = (hi[k] + lo[k]) / 2.0;
        // Constant channels still need a non-empty window.
        c.half_range = ((hi[k] - lo[k]) / 2.0).cwiseMax(1e-12);
        out.push_back(std::move(c));
    }
    return out;
}

InferenceResult infer_optical(const OnnModel& model, const Dataset& data, const InferenceConfig& cfg) {
    validate(model);
    check_data(model, data);
    engine::validate(cfg.engine);
    if (model.output_dim() > 10) throw ShapeError("confusion matrix supports at most 10 classes");

    const std::size_t layers = model.layers.size();
    std::vector<engine::OpticalMatVec> per_layer(layers, cfg.engine);
    for (auto& e : per_layer) {
        e.mode = engine::Mode::Nonlinear;
        e.adc.reset();
    }
    if (cfg.engine.adc_bits && cfg.calibration_images > 0) {
        auto cal = calibrate_adc(model, data, cfg.calibration_images);
        for (std::size_t k = 0; k < layers; ++k) per_layer[k].adc = std::move(cal[k]);
    }

    const Eigen::Index n = data.size();
    InferenceResult res;
    res.logits.resize(n, model.output_dim());
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Vector x = data.images.row(static_cast<Eigen::Index>(r)).transpose();
            for (std::size_t k = 0; k < layers; ++k) {
                const auto stream = static_cast<std::uint64_t>(r * layers + k);
                const Vector pre = engine::matvec(x, model.layers[k].weights, per_layer[k], stream);
                x = electronic_stage(model.layers[k], pre, k + 1 == layers);
            }
            res.logits.row(static_cast<Eigen::Index>(r)) = x.transpose();
        }
    });

    res.predictions = argmax_rows(res.logits);
    res.confusion.setZero();
    std::size_t hits = 0;
    for (std::size_t r = 0; r < res.predictions.size(); ++r) {
        const int truth = data.labels[r];
        const int pred = res.predictions[r];
        res.confusion(truth, pred) += 1;
        hits += truth == pred;
    }
    res.accuracy = n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
    return res;
}

}  // namespace onnsim::nn
