#include "onnsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "onnsim/errors.hpp"
#include "onnsim/parallel.hpp"

namespace onnsim::engine {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_operands(const Vector& x, const Matrix& w, Mode mode) {
    if (x.size() != w.rows()) {
        throw ShapeError("matvec: x has " + std::to_string(x.size()) + " entries but w has " +
                         std::to_string(w.rows()) + " rows");
    }
    if (!(w.cwiseAbs().maxCoeff() <= 1.0)) throw DomainError("weights must lie in [-1, 1]");
    if (mode == Mode::Nonlinear && x.size() > 0 && !(x.cwiseAbs().maxCoeff() <= 1.0)) {
        throw DomainError("nonlinear mode needs inputs in [-1, 1]");
    }
}

// Contribution of input i to output j.
inline double contribution(double x, double w, Mode mode) {
    if (mode == Mode::Linear) return x * w;
    return w * std::sqrt(1.0 - x * x) - x * std::sqrt(1.0 - w * w);
}

AdcCalibration auto_range(double peak, Eigen::Index channels) {
    if (!(peak > 0.0)) peak = 1.0;
    return {Vector::Zero(channels), Vector::Constant(channels, peak)};
}

Vector readout(const Vector& x, const Matrix& w, const OpticalMatVec& cfg, std::uint64_t stream,
               const AdcCalibration* adc) {
    Vector y = Vector::Zero(w.cols());
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < w.rows(); ++i) acc += contribution(x[i], w(i, j), cfg.mode);
        y[j] = acc;
    }
    if (cfg.noise && cfg.noise->sigma > 0.0) {
        const Vector s = output_noise_std(x, w, cfg);
        for (Eigen::Index j = 0; j < y.size(); ++j) {
            y[j] += s[j] * gaussian_at(cfg.rng_seed, stream, static_cast<std::uint64_t>(j));
        }
    }
    if (cfg.adc_bits && adc) {
        for (Eigen::Index j = 0; j < y.size(); ++j) {
            y[j] = adc->center[j] + quantize(y[j] - adc->center[j], *cfg.adc_bits, adc->half_range[j]);
        }
    }
    return y;
}

void check_calibration(const AdcCalibration& adc, Eigen::Index channels) {
    if (adc.center.size() != channels || adc.half_range.size() != channels) {
        throw ShapeError("ADC calibration does not match the number of outputs");
    }
    if (channels > 0 && !(adc.half_range.minCoeff() > 0.0)) {
        throw DomainError("ADC half range must be > 0");
    }
}

}  // namespace

int OpticalMatVec::passes(Eigen::Index columns) const {
    return static_cast<int>((columns + fanout_j - 1) / fanout_j);
}

void validate(const OpticalMatVec& cfg) {
    if (cfg.fanout_j < 1) throw DomainError("fanout_j must be >= 1");
    if (cfg.adc_bits && (*cfg.adc_bits < 2 || *cfg.adc_bits > 16)) {
        throw DomainError("adc_bits must lie in [2, 16]");
    }
    if (cfg.noise && !(cfg.noise->sigma >= 0.0)) throw DomainError("noise sigma must be >= 0");
}

Vector matvec_clean(const Vector& x, const Matrix& w, Mode mode) {
    check_operands(x, w, mode);
    Vector y = Vector::Zero(w.cols());
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < w.rows(); ++i) acc += contribution(x[i], w(i, j), mode);
        y[j] = acc;
    }
    return y;
}

double integrated_noise_std(double sigma, Eigen::Index steps) {
    return sigma * kProductSwing * std::sqrt(static_cast<double>(steps));
}

Vector contribution_scale(const Vector& x, const Matrix& w, Mode mode) {
    check_operands(x, w, mode);
    Vector s = Vector::Zero(w.cols());
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
        for (Eigen::Index i = 0; i < w.rows(); ++i) s[j] += std::abs(contribution(x[i], w(i, j), mode));
    }
    return s;
}

Vector output_noise_std(const Vector& x, const Matrix& w, const OpticalMatVec& cfg) {
    if (!cfg.noise || !(cfg.noise->sigma > 0.0)) return Vector::Zero(w.cols());
    if (cfg.noise_reference == NoiseReference::FullScale) {
        return cfg.noise->sigma * contribution_scale(x, w, cfg.mode);
    }
    return Vector::Constant(w.cols(), integrated_noise_std(cfg.noise->sigma, w.rows()));
}

Vector matvec(const Vector& x, const Matrix& w, const OpticalMatVec& cfg, std::uint64_t stream) {
    validate(cfg);
    check_operands(x, w, cfg.mode);
    if (!cfg.adc_bits) return readout(x, w, cfg, stream, nullptr);
    if (cfg.adc) {
        check_calibration(*cfg.adc, w.cols());
        return readout(x, w, cfg, stream, &*cfg.adc);
    }
    const Vector clean = matvec_clean(x, w, cfg.mode);
    const double peak = clean.size() ? clean.cwiseAbs().maxCoeff() : 0.0;
    const AdcCalibration adc = auto_range(peak, w.cols());
    return readout(x, w, cfg, stream, &adc);
}

Matrix matmul_batched(const Matrix& x, const Matrix& w, const OpticalMatVec& cfg) {
    validate(cfg);
    if (x.cols() != w.rows()) {
        throw ShapeError("matmul: x is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         " but w has " + std::to_string(w.rows()) + " rows");
    }
    const Eigen::Index k = x.rows();
    Matrix out(k, w.cols());

    std::optional<AdcCalibration> adc = cfg.adc;
    if (cfg.adc_bits && !adc) {
        double peak = 0.0;
        for (Eigen::Index r = 0; r < k; ++r) {
            const Vector clean = matvec_clean(x.row(r).transpose(), w, cfg.mode);
            if (clean.size()) peak = std::max(peak, clean.cwiseAbs().maxCoeff());
        }
        adc = auto_range(peak, w.cols());
    }
    if (adc) check_calibration(*adc, w.cols());
    for (Eigen::Index r = 0; r < k; ++r) check_operands(x.row(r).transpose(), w, cfg.mode);

    parallel_for(static_cast<std::size_t>(k), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            const auto row = static_cast<Eigen::Index>(r);
            out.row(row) = readout(x.row(row).transpose(), w, cfg, r, adc ? &*adc : nullptr).transpose();
        }
    });
    return out;
}

EmitterGrid make_grid(const Matrix& pattern, double pitch_um) {
    if (pattern.size() == 0) throw DomainError("emitter pattern must be non-empty");
    if (!(pitch_um > 0.0)) throw DomainError("pitch must be > 0");
    if (!(pattern.minCoeff() >= 0.0)) throw DomainError("emitter intensities must be >= 0");
    return EmitterGrid{static_cast<int>(pattern.rows()), static_cast<int>(pattern.cols()), pitch_um,
                       pattern};
}

EmitterGrid uniform_grid(int rows, int cols, double pitch_um) {
    if (rows < 1 || cols < 1) throw DomainError("array dimensions must be >= 1");
    return make_grid(Matrix::Ones(rows, cols), pitch_um);
}

FanoutMask make_mask(const Matrix& weights) {
    if (weights.size() == 0) throw DomainError("fan-out mask must be non-empty");
    if (!(weights.minCoeff() >= 0.0)) throw DomainError("fan-out weights must be >= 0");
    if (std::abs(weights.sum() - 1.0) > 1e-12) throw DomainError("fan-out weights must sum to 1");
    return FanoutMask{weights};
}

FanoutMask uniform_mask(int m) { return uniform_mask(m, m); }

FanoutMask uniform_mask(int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("mask dimensions must be >= 1");
    return FanoutMask{Matrix::Constant(rows, cols, 1.0 / (static_cast<double>(rows) * cols))};
}

Matrix fanout_image(const EmitterGrid& array, const FanoutMask& mask) {
    const Matrix& p = array.pattern;
    const Matrix& m = mask.grid;
    if (p.rows() != array.rows || p.cols() != array.cols) {
        throw ShapeError("emitter grid dimensions do not match its pattern");
    }
    Matrix out = Matrix::Zero(p.rows() + m.rows() - 1, p.cols() + m.cols() - 1);
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
        for (Eigen::Index r = 0; r < p.rows(); ++r) {
            const double a = p(r, c);
            if (a == 0.0) continue;
            out.block(r, c, m.rows(), m.cols()) += a * m;
        }
    }
    return out;
}

double quantize(double v, int bits, double full_scale) {
    if (bits < 2 || bits > 30) throw DomainError("quantizer bits must be >= 2");
    if (!(full_scale > 0.0)) throw DomainError("quantizer full_scale must be > 0");
    const double levels = std::ldexp(1.0, bits);
    const double step = 2.0 * full_scale / levels;
    double index = std::floor(v / step);
    index = std::clamp(index, -levels / 2.0, levels / 2.0 - 1.0);
    return (index + 0.5) * step;
}

double precision_bits(double snr) {
    if (!(snr > 1.0)) throw DomainError("precision_bits needs snr > 1");
    return std::log2(snr);
}

double gaussian_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t key = splitmix(seed ^ splitmix(stream ^ splitmix(index)));
    const double u1 = (static_cast<double>(splitmix(key) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(splitmix(key ^ 0xd1b54a32d192ed03ULL) >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace onnsim::engine
