#include "onnsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "onnsim/errors.hpp"

namespace onnsim::nn {

namespace {

// Portable uniform in [0, 1) from a 64-bit engine.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_labels(const Matrix& logits, const std::vector<int>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != logits.rows()) {
        throw ShapeError("got " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(logits.rows()) + " rows");
    }
    for (int y : labels) {
        if (y < 0 || y >= logits.cols()) throw ShapeError("label " + std::to_string(y) + " out of range");
    }
}

}  // namespace

std::vector<Eigen::Index> OnnModel::dims() const {
    std::vector<Eigen::Index> d{input_dim};
    for (const auto& l : layers) d.push_back(l.outputs());
    return d;
}

Eigen::Index OnnModel::output_dim() const {
    return layers.empty() ? input_dim : layers.back().outputs();
}

OnnModel make_model(const std::vector<Eigen::Index>& dims) {
    if (dims.size() < 2) throw ShapeError("a model needs at least an input and an output dim");
    for (auto d : dims) {
        if (d < 1) throw ShapeError("layer dims must be >= 1");
    }
    OnnModel m;
    m.input_dim = dims.front();
    for (std::size_t k = 1; k < dims.size(); ++k) {
        Layer l;
        l.weights = Matrix::Zero(dims[k - 1], dims[k]);
        l.bn_gamma = Vector::Ones(dims[k]);
        l.bn_beta = Vector::Zero(dims[k]);
        l.bn_running_mean = Vector::Zero(dims[k]);
        l.bn_running_var = Vector::Ones(dims[k]);
        m.layers.push_back(std::move(l));
    }
    return m;
}

OnnModel reference_model() { return make_model({784, 100, 10, 10}); }

void init_weights(OnnModel& model, std::uint64_t seed, InitLaw law) {
    std::mt19937_64 rng(seed);
    const double bound = 1.0 - model.clamp_eps;
    for (auto& layer : model.layers) {
        const double s = std::min(0.5, std::sqrt(3.0 / static_cast<double>(layer.inputs())));
        // Column-major fill keeps the draw order fixed for a given shape.
        for (Eigen::Index j = 0; j < layer.outputs(); ++j) {
            for (Eigen::Index i = 0; i < layer.inputs(); ++i) {
                const double u = 2.0 * unit_uniform(rng) - 1.0;
                const double w = law == InitLaw::Uniform ? u * s
                                                         : std::sin(u * std::numbers::pi / 2.0) * bound;
                layer.weights(i, j) = std::clamp(w, -bound, bound);
            }
        }
    }
    model.seed = seed;
}

void validate(const OnnModel& model) {
    if (model.layers.empty()) throw ShapeError("model has no layers");
    Eigen::Index prev = model.input_dim;
    const double bound = 1.0 - model.clamp_eps;
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        const Layer& l = model.layers[k];
        const std::string name = "layer " + std::to_string(k);
        if (l.inputs() != prev) throw ShapeError(name + ": input dim does not chain");
        const Eigen::Index n = l.outputs();
        if (l.bn_gamma.size() != n || l.bn_beta.size() != n || l.bn_running_mean.size() != n ||
            l.bn_running_var.size() != n) {
            throw ShapeError(name + ": batch-norm vectors do not match the layer width");
        }
        if (l.weights.size() && !(l.weights.cwiseAbs().maxCoeff() <= bound)) {
            throw DomainError(name + ": weights outside the clamp interval");
        }
        if (!(l.bn_running_var.minCoeff() > 0.0)) throw DomainError(name + ": running variance must be > 0");
        prev = n;
    }
}

void clamp_weights(OnnModel& model) {
    const double bound = 1.0 - model.clamp_eps;
    for (auto& l : model.layers) l.weights = l.weights.cwiseMax(-bound).cwiseMin(bound);
}

double squash(double z) { return kSquashGain * std::tanh(z); }

double squash_derivative(double z) {
    const double t = std::tanh(z);
    return kSquashGain * (1.0 - t * t);
}

Matrix nonlinear_layer(const Matrix& x, const Matrix& w) {
    if (x.cols() != w.rows()) throw ShapeError("layer input width does not match weight rows");
    const Matrix root_x = (1.0 - x.array().square()).max(0.0).sqrt().matrix();
    const Matrix root_w = (1.0 - w.array().square()).max(0.0).sqrt().matrix();
    return root_x * w - x * root_w;
}

ForwardResult forward(const OnnModel& model, const Matrix& batch, bool training) {
    if (batch.cols() != model.input_dim) {
        throw ShapeError("batch has " + std::to_string(batch.cols()) + " columns, model expects " +
                         std::to_string(model.input_dim));
    }
    if (model.layers.empty()) throw ShapeError("model has no layers");
    if (training && batch.rows() < 1) throw ShapeError("training forward needs a non-empty batch");

    ForwardResult out;
    out.cache.training = training;
    Matrix x = batch;
    const double n = static_cast<double>(batch.rows());
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        const Layer& layer = model.layers[k];
        LayerCache c;
        c.root = (1.0 - x.array().square()).max(0.0).sqrt().matrix();
        const Matrix root_w = (1.0 - layer.weights.array().square()).max(0.0).sqrt().matrix();
        c.pre = c.root * layer.weights - x * root_w;
        if (training) {
            c.mean = c.pre.colwise().mean().transpose();
            c.var = ((c.pre.rowwise() - c.mean.transpose()).array().square().colwise().sum() / n)
                        .transpose();
        } else {
            c.mean = layer.bn_running_mean;
            c.var = layer.bn_running_var;
        }
        c.inv_std = (c.var.array() + kBnEps).rsqrt().matrix();
        c.xhat = ((c.pre.rowwise() - c.mean.transpose()).array().rowwise() * c.inv_std.transpose().array())
                     .matrix();
        c.bn_out = ((c.xhat.array().rowwise() * layer.bn_gamma.transpose().array()).rowwise() +
                    layer.bn_beta.transpose().array())
                       .matrix();
        c.input = std::move(x);
        const bool last = k + 1 == model.layers.size();
        if (last) {
            out.logits = c.bn_out;
        } else {
            x = c.bn_out.unaryExpr([](double z) { return squash(z); });
        }
        out.cache.layers.push_back(std::move(c));
    }
    return out;
}

void update_running_stats(OnnModel& model, const ForwardCache& cache) {
    if (!cache.training) throw StateError("running statistics need a training-mode cache");
    if (cache.layers.size() != model.layers.size()) throw ShapeError("cache does not match the model");
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        Layer& l = model.layers[k];
        const LayerCache& c = cache.layers[k];
        const double n = static_cast<double>(c.pre.rows());
        const Vector unbiased = n > 1.0 ? Vector(c.var * (n / (n - 1.0))) : c.var;
        l.bn_running_mean = (1.0 - l.bn_momentum) * l.bn_running_mean + l.bn_momentum * c.mean;
        l.bn_running_var = (1.0 - l.bn_momentum) * l.bn_running_var + l.bn_momentum * unbiased;
    }
}

double cross_entropy(const Matrix& logits, const std::vector<int>& labels) {
    check_labels(logits, labels);
    if (logits.rows() == 0) return 0.0;
    double total = 0.0;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const double mx = logits.row(r).maxCoeff();
        const double lse = mx + std::log((logits.row(r).array() - mx).exp().sum());
        total += lse - logits(r, labels[static_cast<std::size_t>(r)]);
    }
    return total / static_cast<double>(logits.rows());
}

Matrix cross_entropy_grad(const Matrix& logits, const std::vector<int>& labels) {
    check_labels(logits, labels);
    Matrix g(logits.rows(), logits.cols());
    const double inv_n = logits.rows() ? 1.0 / static_cast<double>(logits.rows()) : 0.0;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const double mx = logits.row(r).maxCoeff();
        const Eigen::RowVectorXd e = (logits.row(r).array() - mx).exp().matrix();
        g.row(r) = e / e.sum();
        g(r, labels[static_cast<std::size_t>(r)]) -= 1.0;
    }
    return g * inv_n;
}

Gradients backward(const OnnModel& model, const ForwardCache& cache, const std::vector<int>& labels) {
    if (!cache.training) throw StateError("backward needs a training-mode forward cache");
    if (cache.layers.size() != model.layers.size()) throw ShapeError("cache does not match the model");

    const Matrix& logits = cache.layers.back().bn_out;
    Gradients grads;
    grads.loss = cross_entropy(logits, labels);
    grads.layers.resize(model.layers.size());

    Matrix g = cross_entropy_grad(logits, labels);  // d loss / d bn_out of the current layer
    for (std::size_t kk = model.layers.size(); kk-- > 0;) {
        const Layer& layer = model.layers[kk];
        const LayerCache& c = cache.layers[kk];
        LayerGrad& lg = grads.layers[kk];
        const double n = static_cast<double>(c.pre.rows());

        lg.bn_gamma = (g.array() * c.xhat.array()).colwise().sum().transpose();
        lg.bn_beta = g.colwise().sum().transpose();

        const Matrix dxhat = (g.array().rowwise() * layer.bn_gamma.transpose().array()).matrix();
        const Eigen::RowVectorXd sum_d = dxhat.colwise().sum();
        const Eigen::RowVectorXd sum_dx = (dxhat.array() * c.xhat.array()).colwise().sum();
        const Matrix dpre =
            (((n * dxhat.array()).rowwise() - sum_d.array() - (c.xhat.array().rowwise() * sum_dx.array()))
                 .rowwise() *
             (c.inv_std.transpose().array() / n))
                .matrix();

        const Matrix root_w = (1.0 - layer.weights.array().square()).max(0.0).sqrt().matrix();
        const Matrix xt_dpre = c.input.transpose() * dpre;
        lg.weights = c.root.transpose() * dpre + (xt_dpre.array() * layer.weights.array() / root_w.array()).matrix();

        if (kk == 0) break;
        // Back through this layer's input, which is the previous layer's squash.
        const Matrix dx = -((dpre * layer.weights.transpose()).array() * c.input.array() / c.root.array()).matrix() -
                          dpre * root_w.transpose();
        const LayerCache& prev = cache.layers[kk - 1];
        g = (dx.array() * prev.bn_out.unaryExpr([](double z) { return squash_derivative(z); }).array()).matrix();
    }
    return grads;
}

std::vector<int> argmax_rows(const Matrix& logits) {
    std::vector<int> out(static_cast<std::size_t>(logits.rows()));
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        Eigen::Index best = 0;
        logits.row(r).maxCoeff(&best);
        out[static_cast<std::size_t>(r)] = static_cast<int>(best);
    }
    return out;
}

}  // namespace onnsim::nn
