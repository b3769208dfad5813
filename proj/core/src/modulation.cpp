#include "onnsim/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "onnsim/errors.hpp"
#include "onnsim/photonics.hpp"

namespace onnsim::modulation {

namespace {

void require_range(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!(std::abs(x) <= 1.0)) {
            throw DomainError(std::string(what) + " values must lie in [-1, 1], got " +
                              std::to_string(x));
        }
    }
}

void require_pairs(std::span<const double> x, std::span<const double> w) {
    if (x.size() != w.size()) throw ShapeError("x and w must have equal lengths");
    if (x.empty()) throw ShapeError("at least one symbol is required");
    require_range(x, "input");
    require_range(w, "weight");
}

double lo_angle(const LoConfig& cfg, double t) { return 2.0 * std::numbers::pi * cfg.lo_freq * t; }

template <class PerSample>
Waveform synthesize(std::size_t n_symbols, const LoConfig& cfg, PerSample&& per_sample) {
    validate(cfg);
    Waveform wf;
    wf.sample_rate = cfg.sample_rate();
    const auto L = static_cast<std::size_t>(cfg.samples_per_symbol);
    wf.samples.resize(n_symbols * L);
    for (std::size_t k = 0; k < n_symbols; ++k) {
        for (std::size_t n = 0; n < L; ++n) {
            const std::size_t idx = k * L + n;
            const double s = std::sin(lo_angle(cfg, wf.time(idx)));
            wf.samples[idx] = per_sample(k, s);
        }
    }
    return wf;
}

}  // namespace

LoConfig make_lo_config(double data_rate, int samples_per_symbol) {
    LoConfig cfg{data_rate, 2.0 * data_rate, samples_per_symbol, 0.0};
    validate(cfg);
    return cfg;
}

void validate(const LoConfig& cfg) {
    if (!(cfg.data_rate > 0.0)) throw DomainError("data_rate must be > 0");
    if (!(cfg.lo_freq > 0.0)) throw DomainError("lo_freq must be > 0");
    if (cfg.samples_per_symbol < 16 || cfg.samples_per_symbol % 2 != 0) {
        throw DomainError("samples_per_symbol must be even and >= 16");
    }
}

double Waveform::time(std::size_t n) const {
    return t0 + (static_cast<double>(n) + 0.5) / sample_rate;
}

Waveform modulate(std::span<const double> values, const LoConfig& cfg) {
    if (values.empty()) throw ShapeError("at least one symbol is required");
    require_range(values, "symbol");
    return synthesize(values.size(), cfg, [&](std::size_t k, double s) { return values[k] * s; });
}

Waveform homodyne_waveform(std::span<const double> x_vals, std::span<const double> w_vals,
                           const LoConfig& cfg) {
    require_pairs(x_vals, w_vals);
    return synthesize(x_vals.size(), cfg, [&](std::size_t k, double s) {
        const double x = x_vals[k];
        const double w = w_vals[k];
        return w * s * std::sqrt(1.0 - x * x * s * s) - x * s * std::sqrt(1.0 - w * w * s * s);
    });
}

Waveform reference_waveform(std::span<const double> x_vals, std::span<const double> w_vals,
                            const LoConfig& cfg) {
    require_pairs(x_vals, w_vals);
    std::vector<double> f(x_vals.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = photonics::nonlinear_product(x_vals[k], w_vals[k]);
    return synthesize(f.size(), cfg, [&](std::size_t k, double s) { return f[k] * s; });
}

std::vector<double> demodulate(const Waveform& wf, const LoConfig& cfg) {
    validate(cfg);
    const auto L = static_cast<std::size_t>(cfg.samples_per_symbol);
    if (wf.samples.empty() || wf.samples.size() % L != 0) {
        throw LengthError("waveform of " + std::to_string(wf.samples.size()) +
                          " samples is not a whole number of " + std::to_string(L) +
                          "-sample slots");
    }
    const std::size_t n_symbols = wf.samples.size() / L;
    std::vector<double> out(n_symbols);
    for (std::size_t k = 0; k < n_symbols; ++k) {
        double acc = 0.0;
        for (std::size_t n = 0; n < L; ++n) {
            const std::size_t idx = k * L + n;
            acc += wf.samples[idx] * std::sin(lo_angle(cfg, wf.time(idx)) + cfg.demod_phase);
        }
        out[k] = 2.0 * acc / static_cast<double>(L);
    }
    return out;
}

ResidualStats demodulation_residual(std::span<const double> x_vals, std::span<const double> w_vals,
                                    const LoConfig& cfg) {
    const Waveform wf = homodyne_waveform(x_vals, w_vals, cfg);
    const std::vector<double> d = demodulate(wf, cfg);
    ResidualStats st;
    st.count = d.size();
    double sq = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double r = d[k] - photonics::nonlinear_product(x_vals[k], w_vals[k]);
        sq += r * r;
        st.max_abs = std::max(st.max_abs, std::abs(r));
    }
    st.rms = std::sqrt(sq / static_cast<double>(d.size()));
    return st;
}

void write_waveform_csv(std::ostream& os, const Waveform& wf) {
    os << "time_s,value\n" << std::setprecision(12);
    for (std::size_t n = 0; n < wf.samples.size(); ++n) {
        os << wf.time(n) << ',' << wf.samples[n] << '\n';
    }
}

}  // namespace onnsim::modulation
