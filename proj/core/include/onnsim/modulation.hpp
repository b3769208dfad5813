#pragma once

// Local-oscillator data modulation. Symbols at `data_rate` are mixed onto an
// LO at twice the data rate so every symbol slot averages to zero; the
// homodyne signal is then demodulated per slot by correlating with the LO.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace onnsim::modulation {

struct LoConfig {
    double data_rate = 1e9;            // symbols / s
    double lo_freq = 2e9;              // Hz
    int samples_per_symbol = 64;       // >= 16, even
    double demod_phase = 0.0;          // LO phase offset at the demodulator, rad

    double sample_rate() const { return data_rate * samples_per_symbol; }
};

// LO at twice the data rate.
LoConfig make_lo_config(double data_rate, int samples_per_symbol = 64);

void validate(const LoConfig& cfg);

struct Waveform {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz
    double t0 = 0.0;           // s

    // Sample n sits at the center of its bin, t0 + (n + 1/2) / sample_rate.
    double time(std::size_t n) const;
};

// values[k] * sin(w_LO t) over slot k.
Waveform modulate(std::span<const double> values, const LoConfig& cfg);

// Homodyne signal with both operands mixed onto the LO:
// W s sqrt(1 - X^2 s^2) - X s sqrt(1 - W^2 s^2), s = sin(w_LO t).
Waveform homodyne_waveform(std::span<const double> x_vals, std::span<const double> w_vals,
                           const LoConfig& cfg);

// Ideal separable signal f_NL(X, W) * sin(w_LO t).
Waveform reference_waveform(std::span<const double> x_vals, std::span<const double> w_vals,
                            const LoConfig& cfg);

// Per-slot matched filter, (2/L) sum_n samples[n] sin(w_LO t_n + demod_phase).
// LengthError unless the waveform is a whole number of slots.
std::vector<double> demodulate(const Waveform& wf, const LoConfig& cfg);

struct ResidualStats {
    double rms = 0.0;
    double max_abs = 0.0;
    std::size_t count = 0;
};

// Residual of demodulate(homodyne_waveform) against nonlinear_product.
ResidualStats demodulation_residual(std::span<const double> x_vals, std::span<const double> w_vals,
                                    const LoConfig& cfg);

// Two columns: time_s,value
void write_waveform_csv(std::ostream& os, const Waveform& wf);

}  // namespace onnsim::modulation
