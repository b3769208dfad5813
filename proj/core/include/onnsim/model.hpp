#pragma once

// Fully connected network whose layers weight their inputs with the homodyne
// nonlinearity instead of a product:
//
//   pre_j = sum_i f_NL(x_i, W_ij),   f_NL(x, w) = w sqrt(1-x^2) - x sqrt(1-w^2)
//
// Each layer is followed by batch normalization. Hidden layers then squash
// the normalized value back into (-1, 1) so it can drive the next layer's
// phase encoding; the final layer emits raw logits.

#include <cstdint>
#include <vector>

#include "onnsim/types.hpp"

namespace onnsim::nn {

inline constexpr double kClampEps = 1e-4;
inline constexpr double kSquashGain = 0.999;
inline constexpr double kBnEps = 1e-5;

struct Layer {
    Matrix weights;  // inputs x outputs, entries in [-1+eps, 1-eps]
    Vector bn_gamma;
    Vector bn_beta;
    Vector bn_running_mean;
    Vector bn_running_var;
    double bn_momentum = 0.1;

    Eigen::Index inputs() const { return weights.rows(); }
    Eigen::Index outputs() const { return weights.cols(); }
};

struct OnnModel {
    Eigen::Index input_dim = 0;
    std::vector<Layer> layers;
    double clamp_eps = kClampEps;
    std::uint64_t seed = 0;

    // input_dim followed by each layer's width.
    std::vector<Eigen::Index> dims() const;
    Eigen::Index output_dim() const;
};

// Zero weights, identity batch norm (gamma 1, beta 0, running stats 0/1).
// ShapeError unless there are at least two dims, all >= 1.
OnnModel make_model(const std::vector<Eigen::Index>& dims);

// 784 -> 100 -> 10 -> 10.
OnnModel reference_model();

enum class InitLaw {
    Uniform,       // W ~ U[-s, s], s = min(0.5, sqrt(3 / inputs))
    PhaseUniform,  // W = sin(u pi/2) (1 - eps), u ~ U[-1, 1]
};

void init_weights(OnnModel& model, std::uint64_t seed, InitLaw law = InitLaw::Uniform);

// Throws ShapeError if dims do not chain, DomainError if a weight leaves the
// clamp interval or a running variance is not positive.
void validate(const OnnModel& model);

void clamp_weights(OnnModel& model);

double squash(double z);
double squash_derivative(double z);

// sum_i f_NL(x_ki, W_ij) for every row k of x.
Matrix nonlinear_layer(const Matrix& x, const Matrix& w);

struct LayerCache {
    Matrix input;     // k x inputs
    Matrix root;      // sqrt(1 - input^2)
    Matrix pre;       // nonlinear weighted sums
    Matrix xhat;      // normalized pre
    Vector inv_std;   // 1 / sqrt(var + eps)
    Vector mean;      // statistics used for normalization
    Vector var;       // biased batch variance (training) or running variance
    Matrix bn_out;    // gamma xhat + beta
};

struct ForwardCache {
    bool training = false;
    std::vector<LayerCache> layers;
};

struct ForwardResult {
    Matrix logits;
    ForwardCache cache;
};

// Batch norm uses batch statistics when training, running statistics
// otherwise. The model is not modified.
ForwardResult forward(const OnnModel& model, const Matrix& batch, bool training);

// Folds the batch statistics of a training-mode pass into the running
// averages (unbiased variance).
void update_running_stats(OnnModel& model, const ForwardCache& cache);

struct LayerGrad {
    Matrix weights;
    Vector bn_gamma;
    Vector bn_beta;
};

struct Gradients {
    std::vector<LayerGrad> layers;
    double loss = 0.0;
};

// Mean softmax cross-entropy of rows of logits against labels.
double cross_entropy(const Matrix& logits, const std::vector<int>& labels);

// d(mean loss)/d(logits): (softmax - one_hot) / k.
Matrix cross_entropy_grad(const Matrix& logits, const std::vector<int>& labels);

// Gradients of mean cross-entropy. StateError if the cache came from an
// inference-mode pass; ShapeError on label count mismatch.
Gradients backward(const OnnModel& model, const ForwardCache& cache, const std::vector<int>& labels);

std::vector<int> argmax_rows(const Matrix& logits);

}  // namespace onnsim::nn
