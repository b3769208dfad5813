#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "onnsim/mnist.hpp"
#include "onnsim/model.hpp"

namespace onnsim::nn {

enum class Optimizer { Sgd, Adam };

struct TrainConfig {
    int epochs = 20;
    int batch_size = 64;
    // Step decay: lr(epoch) = lr * lr_decay^(epoch / decay_every).
    double lr = 0.005;
    double lr_decay = 0.5;
    int decay_every = 5;
    Optimizer optimizer = Optimizer::Adam;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 1;  // shuffling
};

void validate(const TrainConfig& cfg);

double learning_rate(const TrainConfig& cfg, int epoch);

struct EpochStats {
    int epoch = 0;
    double lr = 0.0;
    double train_loss = 0.0;      // mean over the epoch's samples
    double train_accuracy = 0.0;  // from training-mode logits
    std::optional<double> eval_accuracy;
};

struct TrainReport {
    std::vector<EpochStats> epochs;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Mini-batch training with the configured optimizer. Weights are clamped into
// [-1+eps, 1-eps] after every step. Deterministic for a given seed.
TrainReport train(OnnModel& model, const Dataset& train_set, const TrainConfig& cfg,
                  const Dataset* eval_set = nullptr, const EpochCallback& on_epoch = {});

// Inference-mode accuracy.
double evaluate(const OnnModel& model, const Dataset& data);

// Fisher-Yates permutation of [0, n) driven by mt19937_64(seed).
std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, std::uint64_t seed);

}  // namespace onnsim::nn
