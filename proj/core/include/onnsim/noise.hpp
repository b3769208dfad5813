#pragma once

// Homodyne noise model: detector thermal noise (NEP), photon shot noise and
// laser relative intensity noise (RIN), for per-sample and integrating
// receivers.
//
// For input power P_i on the receiver, weight/input power ratio gamma and
// acquisition time T the relative uncertainty of the homodyne signal is
//
//   sigma = 1/(2 sqrt(T)) * sqrt( NEP^2/(gamma P_i^2)
//                                 + 4 c_g h nu/(eta P_i)
//                                 + 2 b c_g2 RIN )
//
// with c_g = (1+gamma)/(2 gamma), c_g2 = (1+gamma^2)/(2 gamma), and SNR = 1/sigma.
// An integrating receiver reads out once every i symbols, so T = i * t_c.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace onnsim::noise {

inline constexpr double kPlanck = 6.62607015e-34;  // J s

struct NoiseParams {
    double nep = 0.0;       // W / sqrt(Hz)
    double rin_db = -145.0; // dBc/Hz; -inf disables RIN
    double eta = 1.0;       // quantum efficiency, (0, 1]
    double nu = 307.5e12;   // optical frequency, Hz
    int b = 2;              // 1 balanced, 2 unbalanced
    double gamma = 1.0;     // P_W / P_X

    double rin_linear() const;
    double c_gamma() const;
    double c_gamma2() const;
};

void validate(const NoiseParams& noise);

struct ReceiverConfig {
    double clock_rate = 1e9;            // symbols / s
    double t_c = 1e-9;                  // s per symbol
    std::int64_t integration_steps = 1; // i
    double p_input = 1e-6;              // W at the detector

    double acquisition_time() const { return static_cast<double>(integration_steps) * t_c; }
};

// Receiver with t_c = 1 / clock_rate.
ReceiverConfig make_receiver(double clock_rate, std::int64_t integration_steps, double p_input);

void validate(const ReceiverConfig& rx);

struct NoiseFractions {
    double thermal = 0.0;
    double shot = 0.0;
    double rin = 0.0;
};

struct SnrResult {
    double sigma = 0.0;
    double snr = 0.0;
    NoiseFractions fractions;  // variance shares, sum to 1
};

// Uncertainty for a single acquisition window t_acq.
SnrResult sigma_per_sample(const NoiseParams& noise, double p_i, double t_acq);

// Same model with T = integration_steps * t_c and P_i = rx.p_input.
SnrResult sigma_integrating(const NoiseParams& noise, const ReceiverConfig& rx);

// SnrResult carrying only a target SNR (noise shares unknown, left at zero).
SnrResult from_snr(double snr);

// Photons per operation. One symbol time computes one MAC = 2 OP, so
// N = P_i t_c / (2 h nu).
double photons_per_op(double p_i, const ReceiverConfig& rx, double nu);
double power_for_photons(double photons, const ReceiverConfig& rx, double nu);

// Optical energy per operation, N h nu.
double energy_per_op(double photons, double nu);

// n zero-mean Gaussian draws with standard deviation result.sigma from a
// generator seeded by `seed`. Same seed, same sequence.
std::vector<double> sample_noise(const SnrResult& result, std::uint64_t seed, std::size_t n);

struct SweepRow {
    double p_i = 0.0;
    double photons_per_op = 0.0;
    double snr = 0.0;
    double frac_thermal = 0.0;
    double frac_shot = 0.0;
    double frac_rin = 0.0;
};

std::vector<SweepRow> snr_sweep(const NoiseParams& noise, const ReceiverConfig& rx_template,
                                std::span<const double> powers);

// n log-spaced powers between lo and hi inclusive.
std::vector<double> log_powers(double lo, double hi, std::size_t n);

// Header: p_i_watts,photons_per_op,snr,frac_thermal,frac_shot,frac_rin
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

// Named parameter sets for the SNR command.
struct SnrPreset {
    std::string name;
    NoiseParams noise;
    ReceiverConfig rx;
};

SnrPreset preset_single_sample();
SnrPreset preset_integrating();
SnrPreset preset_long_integration();
std::optional<SnrPreset> find_preset(const std::string& name);

}  // namespace onnsim::noise
