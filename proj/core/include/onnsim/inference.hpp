#pragma once

// Inference through the optical fabric. Each layer's weighted sums come from
// engine::matvec in nonlinear mode (with readout noise and ADC); batch norm,
// squashing and the final argmax run in electronics, noise-free.

#include <cstdint>
#include <optional>
#include <vector>

#include "onnsim/engine.hpp"
#include "onnsim/mnist.hpp"
#include "onnsim/model.hpp"

namespace onnsim::nn {

inline constexpr double kDefaultInferenceSnr = 135.0;
inline constexpr int kDefaultAdcBits = 6;

struct InferenceConfig {
    // mode is forced to Nonlinear; adc calibration, if any, is ignored in
    // favour of the per-layer calibration below.
    engine::OpticalMatVec engine;
    // Images used for the clean calibration pass that sets each layer's ADC
    // window (per channel min..max). 0 falls back to engine auto-ranging.
    int calibration_images = 256;
};

// SNR 135 and 6-bit ADC.
InferenceConfig default_inference_config(std::uint64_t seed = 0);

// Clean (noise-free, unquantized) configuration.
InferenceConfig clean_inference_config();

struct InferenceResult {
    double accuracy = 0.0;
    Eigen::Matrix<std::int64_t, 10, 10> confusion;  // rows true label, cols prediction
    std::vector<int> predictions;
    Matrix logits;
};

// Noise for image n, layer l is drawn from stream n * layers + l, so results
// are independent of the worker count.
InferenceResult infer_optical(const OnnModel& model, const Dataset& data, const InferenceConfig& cfg);

// Per-layer ADC windows from a clean optical pass over the first `images`
// rows of data.
std::vector<engine::AdcCalibration> calibrate_adc(const OnnModel& model, const Dataset& data, int images);

}  // namespace onnsim::nn
