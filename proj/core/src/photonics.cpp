#include "onnsim/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "onnsim/errors.hpp"

namespace onnsim::photonics {

namespace {

void require_unit_interval(double v, const char* what) {
    if (!(std::abs(v) <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [-1, 1], got " + std::to_string(v));
    }
}

void require_same_carrier(const LaserField& x, const LaserField& w) {
    if (x.frequency != w.frequency) {
        throw DomainError("homodyne fields must share the carrier frequency");
    }
}

}  // namespace

double normalize_phase(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phase, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

LaserField make_field(double amplitude, double phase, double frequency) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw DomainError("field amplitude must be finite and >= 0");
    }
    if (!std::isfinite(phase) || !std::isfinite(frequency)) {
        throw DomainError("field phase and frequency must be finite");
    }
    return LaserField{amplitude, normalize_phase(phase), frequency};
}

LaserField amplitude_encoded(double value, double frequency) {
    return make_field(std::abs(value), std::signbit(value) ? std::numbers::pi : 0.0, frequency);
}

LaserField phase_encoded(double value, double frequency) {
    require_unit_interval(value, "phase-encoded value");
    return make_field(1.0, std::asin(value), frequency);
}

double balanced_homodyne(const LaserField& x, const LaserField& w) {
    require_same_carrier(x, w);
    return x.amplitude * w.amplitude * std::sin(w.phase - x.phase);
}

PortCurrents single_port_currents(const LaserField& x, const LaserField& w) {
    require_same_carrier(x, w);
    const double dc = x.amplitude * x.amplitude + w.amplitude * w.amplitude;
    const double beat = 2.0 * x.amplitude * w.amplitude * std::sin(w.phase - x.phase);
    return {dc + beat, dc - beat};
}

double linear_product(double x, double w) {
    require_unit_interval(w, "weight");
    if (!std::isfinite(x)) throw DomainError("input must be finite");
    return balanced_homodyne(amplitude_encoded(x), phase_encoded(w));
}

double nonlinear_product(double x, double w) {
    require_unit_interval(x, "input");
    require_unit_interval(w, "weight");
    return w * std::sqrt(1.0 - x * x) - x * std::sqrt(1.0 - w * w);
}

NonlinearGrad nonlinear_product_grad(double x, double w) {
    if (!(std::abs(x) < 1.0) || !(std::abs(w) < 1.0)) {
        throw DomainError("nonlinear_product_grad is singular at |x| = 1 or |w| = 1");
    }
    const double cx = std::sqrt(1.0 - x * x);
    const double cw = std::sqrt(1.0 - w * w);
    return {-w * x / cx - cw, cx + x * w / cw};
}

double lock_range(double p_inj_watts, double kappa) {
    if (!(p_inj_watts >= 0.0)) throw DomainError("injection power must be >= 0");
    if (!(kappa > 0.0)) throw DomainError("lock-range coefficient must be > 0");
    return kappa * std::sqrt(p_inj_watts);
}

InjectionLockState injection_lock(double p_inj_watts, double detuning_hz, double kappa) {
    InjectionLockState s;
    s.injection_power_w = p_inj_watts;
    s.lock_range_hz = lock_range(p_inj_watts, kappa);
    s.detuning_hz = detuning_hz;
    s.locked = s.lock_range_hz > 0.0 && std::abs(detuning_hz) <= s.lock_range_hz;
    return s;
}

VcselParams make_vcsel(double v_bias, double i_bias, double v_pi, double p_optical,
                       double bandwidth_hz, double q_factor) {
    VcselParams p{v_bias, i_bias, v_pi, p_optical, 0.0, bandwidth_hz, q_factor};
    if (v_bias > 0.0 && i_bias > 0.0) p.wall_plug = p_optical / (v_bias * i_bias);
    validate(p);
    return p;
}

void validate(const VcselParams& p) {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string("VCSEL parameter ") + name + " must be > 0");
        }
    };
    positive(p.v_bias, "v_bias");
    positive(p.i_bias, "i_bias");
    positive(p.v_pi, "v_pi");
    positive(p.p_optical, "p_optical");
    positive(p.wall_plug, "wall_plug");
    positive(p.bandwidth_hz, "bandwidth_hz");
    positive(p.q_factor, "q_factor");
    const double expected = p.p_optical / (p.v_bias * p.i_bias);
    if (std::abs(p.wall_plug - expected) > 1e-12 * expected) {
        throw DomainError("wall_plug must equal p_optical / (v_bias * i_bias)");
    }
}

double detuning_from_drive(double v_drive, const VcselParams& params,
                           const InjectionLockState& lock) {
    return 2.0 * v_drive / params.v_pi * lock.lock_range_hz;
}

double phase_from_drive(double v_drive, const VcselParams& params,
                        const InjectionLockState& lock) {
    if (!(lock.lock_range_hz > 0.0)) {
        throw UnlockedError("no injection: the follower laser is free running");
    }
    if (!(std::abs(v_drive) <= 0.5 * params.v_pi)) {
        throw UnlockedError("drive of " + std::to_string(v_drive * 1e3) +
                            " mV exceeds V_pi/2; the VCSEL falls out of injection lock");
    }
    const double ratio = detuning_from_drive(v_drive, params, lock) / lock.lock_range_hz;
    return std::asin(std::clamp(ratio, -1.0, 1.0));
}

double drive_for_value(double value, const VcselParams& params) {
    require_unit_interval(value, "drive target");
    return 0.5 * params.v_pi * value;
}

}  // namespace onnsim::photonics
