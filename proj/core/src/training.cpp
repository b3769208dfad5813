#include "onnsim/training.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "onnsim/errors.hpp"

namespace onnsim::nn {

namespace {

struct Moments {
    Matrix w_m, w_v;
    Vector g_m, g_v, b_m, b_v;
};

template <typename T>
void adam_update(T& param, const T& grad, T& m, T& v, double lr, const TrainConfig& cfg, double bc1,
                 double bc2) {
    m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grad;
    v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * grad.cwiseProduct(grad);
    param.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + cfg.adam_eps);
}

Matrix gather_rows(const RowMatrix& images, const std::vector<Eigen::Index>& order, std::size_t lo,
                   std::size_t hi, std::vector<int>& labels_out, const std::vector<int>& labels) {
    Matrix batch(static_cast<Eigen::Index>(hi - lo), images.cols());
    labels_out.resize(hi - lo);
    for (std::size_t r = lo; r < hi; ++r) {
        const auto src = order[r];
        batch.row(static_cast<Eigen::Index>(r - lo)) = images.row(src);
        labels_out[r - lo] = labels[static_cast<std::size_t>(src)];
    }
    return batch;
}

}  // namespace

void validate(const TrainConfig& cfg) {
    if (cfg.epochs < 0) throw DomainError("epochs must be >= 0");
    if (cfg.batch_size < 1) throw DomainError("batch_size must be >= 1");
    if (!(cfg.lr >= 0.0)) throw DomainError("lr must be >= 0");
    if (!(cfg.lr_decay > 0.0)) throw DomainError("lr_decay must be > 0");
    if (cfg.decay_every < 1) throw DomainError("decay_every must be >= 1");
    if (!(cfg.adam_beta1 >= 0.0 && cfg.adam_beta1 < 1.0)) throw DomainError("adam_beta1 must lie in [0, 1)");
    if (!(cfg.adam_beta2 >= 0.0 && cfg.adam_beta2 < 1.0)) throw DomainError("adam_beta2 must lie in [0, 1)");
    if (!(cfg.adam_eps > 0.0)) throw DomainError("adam_eps must be > 0");
}

double learning_rate(const TrainConfig& cfg, int epoch) {
    return cfg.lr * std::pow(cfg.lr_decay, epoch / cfg.decay_every);
}

std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, std::uint64_t seed) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::mt19937_64 rng(seed);
    for (std::size_t k = idx.size(); k > 1; --k) {
        const std::size_t j = static_cast<std::size_t>(rng() % k);
        std::swap(idx[k - 1], idx[j]);
    }
    return idx;
}

double evaluate(const OnnModel& model, const Dataset& data) {
    if (data.size() == 0) return 0.0;
    const auto pred = argmax_rows(forward(model, data.images, false).logits);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < pred.size(); ++k) hits += pred[k] == data.labels[k];
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

TrainReport train(OnnModel& model, const Dataset& train_set, const TrainConfig& cfg,
                  const Dataset* eval_set, const EpochCallback& on_epoch) {
    validate(cfg);
    validate(model);
    if (train_set.images.cols() != model.input_dim) {
        throw ShapeError("training images have " + std::to_string(train_set.images.cols()) +
                         " pixels, model expects " + std::to_string(model.input_dim));
    }
    if (static_cast<Eigen::Index>(train_set.labels.size()) != train_set.size()) {
        throw MismatchError("training images and labels differ in count");
    }

    std::vector<Moments> moments;
    for (const auto& l : model.layers) {
        moments.push_back({Matrix::Zero(l.inputs(), l.outputs()), Matrix::Zero(l.inputs(), l.outputs()),
                           Vector::Zero(l.outputs()), Vector::Zero(l.outputs()), Vector::Zero(l.outputs()),
                           Vector::Zero(l.outputs())});
    }
    std::int64_t step = 0;

    TrainReport report;
    const auto n = static_cast<std::size_t>(train_set.size());
    const auto bs = static_cast<std::size_t>(cfg.batch_size);
    std::vector<int> batch_labels;
    std::mt19937_64 epoch_seeds(cfg.seed);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double lr = learning_rate(cfg, epoch);
        const auto order = shuffled_indices(train_set.size(), epoch_seeds());
        double loss_sum = 0.0;
        std::size_t hits = 0;

        for (std::size_t lo = 0; lo < n; lo += bs) {
            const std::size_t hi = std::min(n, lo + bs);
            const Matrix batch = gather_rows(train_set.images, order, lo, hi, batch_labels, train_set.labels);
            const ForwardResult fr = forward(model, batch, true);
            const Gradients grads = backward(model, fr.cache, batch_labels);
            update_running_stats(model, fr.cache);

            loss_sum += grads.loss * static_cast<double>(hi - lo);
            const auto pred = argmax_rows(fr.logits);
            for (std::size_t k = 0; k < pred.size(); ++k) hits += pred[k] == batch_labels[k];

            ++step;
            const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
            for (std::size_t k = 0; k < model.layers.size(); ++k) {
                Layer& l = model.layers[k];
                const LayerGrad& g = grads.layers[k];
                if (cfg.optimizer == Optimizer::Sgd) {
                    l.weights -= lr * g.weights;
                    l.bn_gamma -= lr * g.bn_gamma;
                    l.bn_beta -= lr * g.bn_beta;
                } else {
                    Moments& m = moments[k];
                    adam_update(l.weights, g.weights, m.w_m, m.w_v, lr, cfg, bc1, bc2);
                    adam_update(l.bn_gamma, g.bn_gamma, m.g_m, m.g_v, lr, cfg, bc1, bc2);
                    adam_update(l.bn_beta, g.bn_beta, m.b_m, m.b_v, lr, cfg, bc1, bc2);
                }
            }
            clamp_weights(model);
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.lr = lr;
        stats.train_loss = n ? loss_sum / static_cast<double>(n) : 0.0;
        stats.train_accuracy = n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
        if (eval_set) stats.eval_accuracy = evaluate(model, *eval_set);
        report.epochs.push_back(stats);
        if (on_epoch) on_epoch(stats);
    }
    return report;
}

}  // namespace onnsim::nn
