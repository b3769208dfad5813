#include "onnsim/noise.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "onnsim/errors.hpp"

namespace onnsim::noise {

double NoiseParams::rin_linear() const { return std::pow(10.0, rin_db / 10.0); }

double NoiseParams::c_gamma() const { return (1.0 + gamma) / (2.0 * gamma); }

double NoiseParams::c_gamma2() const { return (1.0 + gamma * gamma) / (2.0 * gamma); }

void validate(const NoiseParams& n) {
    if (!(n.eta > 0.0 && n.eta <= 1.0)) throw DomainError("eta must lie in (0, 1]");
    if (!(n.nep >= 0.0) || !std::isfinite(n.nep)) throw DomainError("nep must be >= 0");
    if (!(n.gamma > 0.0) || !std::isfinite(n.gamma)) throw DomainError("gamma must be > 0");
    if (n.b != 1 && n.b != 2) throw DomainError("b must be 1 (balanced) or 2 (unbalanced)");
    if (!(n.nu > 0.0) || !std::isfinite(n.nu)) throw DomainError("nu must be > 0");
    if (std::isnan(n.rin_db) || n.rin_db == std::numeric_limits<double>::infinity()) {
        throw DomainError("rin_db must be finite or -inf");
    }
}

ReceiverConfig make_receiver(double clock_rate, std::int64_t integration_steps, double p_input) {
    ReceiverConfig rx{clock_rate, clock_rate > 0.0 ? 1.0 / clock_rate : 0.0, integration_steps,
                      p_input};
    validate(rx);
    return rx;
}

void validate(const ReceiverConfig& rx) {
    if (!(rx.clock_rate > 0.0) || !std::isfinite(rx.clock_rate)) {
        throw DomainError("clock_rate must be > 0");
    }
    if (std::abs(rx.t_c * rx.clock_rate - 1.0) > 1e-12) {
        throw DomainError("t_c must equal 1 / clock_rate");
    }
    if (rx.integration_steps < 1) throw DomainError("integration_steps must be >= 1");
    if (!(rx.p_input > 0.0) || !std::isfinite(rx.p_input)) {
        throw DomainError("p_input must be > 0");
    }
}

SnrResult sigma_per_sample(const NoiseParams& noise, double p_i, double t_acq) {
    validate(noise);
    if (!(p_i > 0.0) || !std::isfinite(p_i)) throw DomainError("p_i must be > 0");
    if (!(t_acq > 0.0) || !std::isfinite(t_acq)) throw DomainError("acquisition time must be > 0");

    const double thermal = noise.nep * noise.nep / (noise.gamma * p_i * p_i);
    const double shot = 4.0 * noise.c_gamma() * kPlanck * noise.nu / (noise.eta * p_i);
    const double rin = 2.0 * noise.b * noise.c_gamma2() * noise.rin_linear();
    const double total = thermal + shot + rin;

    SnrResult r;
    r.sigma = std::sqrt(total) / (2.0 * std::sqrt(t_acq));
    r.snr = 1.0 / r.sigma;
    r.fractions = {thermal / total, shot / total, rin / total};
    return r;
}

SnrResult sigma_integrating(const NoiseParams& noise, const ReceiverConfig& rx) {
    validate(rx);
    return sigma_per_sample(noise, rx.p_input, rx.acquisition_time());
}

SnrResult from_snr(double snr) {
    if (!(snr > 0.0)) throw DomainError("snr must be > 0");
    SnrResult r;
    r.snr = snr;
    r.sigma = std::isinf(snr) ? 0.0 : 1.0 / snr;
    return r;
}

double photons_per_op(double p_i, const ReceiverConfig& rx, double nu) {
    return p_i * rx.t_c / (2.0 * kPlanck * nu);
}

double power_for_photons(double photons, const ReceiverConfig& rx, double nu) {
    return photons * 2.0 * kPlanck * nu / rx.t_c;
}

double energy_per_op(double photons, double nu) { return photons * kPlanck * nu; }

std::vector<double> sample_noise(const SnrResult& result, std::uint64_t seed, std::size_t n) {
    std::vector<double> out(n, 0.0);
    if (result.sigma == 0.0) return out;
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, result.sigma);
    for (auto& v : out) v = dist(gen);
    return out;
}

std::vector<SweepRow> snr_sweep(const NoiseParams& noise, const ReceiverConfig& rx_template,
                                std::span<const double> powers) {
    if (powers.empty()) throw DomainError("snr_sweep needs at least one power");
    std::vector<SweepRow> rows;
    rows.reserve(powers.size());
    for (double p : powers) {
        ReceiverConfig rx = rx_template;
        rx.p_input = p;
        const SnrResult r = sigma_integrating(noise, rx);
        rows.push_back({p, photons_per_op(p, rx, noise.nu), r.snr, r.fractions.thermal,
                        r.fractions.shot, r.fractions.rin});
    }
    return rows;
}

std::vector<double> log_powers(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw DomainError("invalid power range");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log10(lo);
    const double step = (std::log10(hi) - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::pow(10.0, a + step * static_cast<double>(k));
    return out;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "p_i_watts,photons_per_op,snr,frac_thermal,frac_shot,frac_rin\n";
    os << std::setprecision(10);
    for (const auto& r : rows) {
        os << r.p_i << ',' << r.photons_per_op << ',' << r.snr << ',' << r.frac_thermal << ','
           << r.frac_shot << ',' << r.frac_rin << '\n';
    }
}

SnrPreset preset_single_sample() {
    // Non-integrating receiver at 100 MS/s; weight fanned out over a 9x9 block.
    SnrPreset p;
    p.name = "figS2";
    p.noise = {5e-12, -145.0, 0.65, 307.5e12, 2, 81.0};
    p.rx = make_receiver(100e6, 1, 0.6e-6);
    return p;
}

SnrPreset preset_integrating() {
    // Integrating receiver over one MNIST row of products at 1 GS/s.
    // Default power gives 200 photons per operation.
    SnrPreset p;
    p.name = "figS3a";
    p.noise = {1e-12, -145.0, 0.65, 307.5e12, 2, 1.0};
    ReceiverConfig rx = make_receiver(1e9, 784, 1e-6);
    rx.p_input = power_for_photons(200.0, rx, p.noise.nu);
    p.rx = rx;
    return p;
}

SnrPreset preset_long_integration() {
    // Long integration at 25 GS/s; 10 nW lands below one photon per operation.
    SnrPreset p;
    p.name = "figS3b";
    p.noise = {1e-12, -145.0, 0.65, 307.5e12, 2, 1.0};
    p.rx = make_receiver(25e9, 1'000'000, 10e-9);
    return p;
}

std::optional<SnrPreset> find_preset(const std::string& name) {
    if (name == "figS2") return preset_single_sample();
    if (name == "figS3a") return preset_integrating();
    if (name == "figS3b") return preset_long_integration();
    return std::nullopt;
}

}  // namespace onnsim::noise
