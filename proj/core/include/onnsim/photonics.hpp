#pragma once

// Optical field algebra for a pair of injection-locked VCSELs interfering on
// a (balanced) homodyne receiver.
//
// Detector outputs are dimensionless: a balanced receiver reading fields of
// amplitudes A_X, A_W and phases phi_X, phi_W returns A_X * A_W * sin(phi_W - phi_X).
// Responsivity and gain only enter through the noise model (noise.hpp).

namespace onnsim::photonics {

// Optical carrier used throughout the experiments (975 nm band).
inline constexpr double kCarrierHz = 307.5e12;

// Lock range per square-root watt of injected power. Pinned so that 1 uW of
// injection gives a 1.7 GHz locking range.
inline constexpr double kDefaultLockKappa = 1.7e9 / 1e-3;  // Hz / sqrt(W)

struct LaserField {
    double amplitude = 0.0;          // normalized field amplitude, >= 0
    double phase = 0.0;              // radians, in (-pi, pi]
    double frequency = kCarrierHz;   // carrier, Hz
};

// Wraps an angle into (-pi, pi].
double normalize_phase(double phase);

// Builds a validated field; throws DomainError on negative or non-finite
// amplitude. The phase is normalized.
LaserField make_field(double amplitude, double phase, double frequency = kCarrierHz);

// Amplitude encoding of a signed value: |x| on the amplitude, sign folded into
// a 0 / pi phase.
LaserField amplitude_encoded(double value, double frequency = kCarrierHz);

// Phase-only encoding with unit amplitude, sin(phase) = value. |value| <= 1.
LaserField phase_encoded(double value, double frequency = kCarrierHz);

// Differential current of a balanced receiver, A_X * A_W * sin(phi_W - phi_X).
// Fields must share the carrier frequency (DomainError otherwise).
double balanced_homodyne(const LaserField& x, const LaserField& w);

struct PortCurrents {
    double plus = 0.0;
    double minus = 0.0;
};

// The two beamsplitter output ports before subtraction:
// A_X^2 + A_W^2 +/- 2 A_X A_W sin(phi_W - phi_X).
PortCurrents single_port_currents(const LaserField& x, const LaserField& w);

// Linear mode: amplitude-encoded input times phase-encoded weight.
// Evaluated through the field path. DomainError when |w| > 1.
double linear_product(double x, double w);

// Nonlinear mode: both operands phase encoded,
// f_NL = w * sqrt(1 - x^2) - x * sqrt(1 - w^2). DomainError outside [-1, 1].
double nonlinear_product(double x, double w);

struct NonlinearGrad {
    double d_x = 0.0;  // df/dx
    double d_w = 0.0;  // df/dw
};

// Analytic gradient of nonlinear_product. Requires |x| < 1 and |w| < 1; the
// derivative is singular on the boundary (DomainError).
NonlinearGrad nonlinear_product_grad(double x, double w);

// Injection-locking range delta_r = kappa * sqrt(P_inj), Hz.
double lock_range(double p_inj_watts, double kappa = kDefaultLockKappa);

struct InjectionLockState {
    double lock_range_hz = 0.0;
    double detuning_hz = 0.0;
    double injection_power_w = 0.0;
    bool locked = false;
};

// Lock state for a given injection power and detuning.
InjectionLockState injection_lock(double p_inj_watts, double detuning_hz = 0.0,
                                  double kappa = kDefaultLockKappa);

struct VcselParams {
    double v_bias = 0.0;        // V
    double i_bias = 0.0;        // A
    double v_pi = 0.0;          // V, peak-to-peak drive for a pi phase swing
    double p_optical = 0.0;     // W emitted
    double wall_plug = 0.0;     // p_optical / (v_bias * i_bias)
    double bandwidth_hz = 0.0;  // 3 dB modulation bandwidth
    double q_factor = 0.0;      // cavity Q

    double electrical_power() const { return v_bias * i_bias; }
    double resistance() const { return v_bias / i_bias; }
};

// Builds VcselParams with wall_plug derived from the other fields.
VcselParams make_vcsel(double v_bias, double i_bias, double v_pi, double p_optical,
                       double bandwidth_hz, double q_factor);

// Throws DomainError if any field is non-positive or wall_plug is inconsistent.
void validate(const VcselParams& params);

// Detuning produced by a drive voltage: delta_d = (2 v / V_pi) * delta_r.
double detuning_from_drive(double v_drive, const VcselParams& params,
                           const InjectionLockState& lock);

// Locked phase for a drive voltage: phi = asin(delta_d / delta_r). A swing of
// V_pi peak-to-peak spans (-pi/2, pi/2). Throws UnlockedError when
// |v_drive| > V_pi / 2 or when there is no injection.
double phase_from_drive(double v_drive, const VcselParams& params,
                        const InjectionLockState& lock);

// Inverse of phase_from_drive for a target sin(phi) in [-1, 1].
double drive_for_value(double value, const VcselParams& params);

}  // namespace onnsim::photonics
