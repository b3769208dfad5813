#pragma once

// Optical compute fabric. A matrix-vector product y = x W is computed by
// streaming x over i time steps into j coherent receivers; each receiver
// integrates its homodyne products and is read out once.
//
//   Linear mode:    y_j = sum_i x_i W_ij
//   Nonlinear mode: y_j = sum_i f_NL(x_i, W_ij)
//
// Optional readout impairments. Noise is drawn once per integrated output.
// By default each time step carries independent Gaussian noise of std sigma
// times the peak-to-peak swing of one product (2), so an output integrated
// over i steps sees std 2 sigma sqrt(i). The alternative reference scales
// sigma by the output's full scale, sum_i |contribution_ij|. A midrise ADC
// then digitizes the integrated value.

#include <cstdint>
#include <optional>

#include "onnsim/noise.hpp"
#include "onnsim/types.hpp"

namespace onnsim::engine {

enum class Mode { Linear, Nonlinear };

enum class NoiseReference {
    PerStep,    // std 2 sigma sqrt(i)
    FullScale,  // std sigma sum_i |contribution_ij|
};

// Per-channel ADC input range: the converter spans center +/- half_range.
struct AdcCalibration {
    Vector center;
    Vector half_range;
};

struct OpticalMatVec {
    Mode mode = Mode::Linear;
    int fanout_j = 1;                          // receivers available per pass
    std::optional<noise::SnrResult> noise;     // sigma relative to noise_reference
    NoiseReference noise_reference = NoiseReference::PerStep;
    std::optional<int> adc_bits;               // [2, 16]
    std::optional<AdcCalibration> adc;         // absent: auto-range on the call's clean outputs
    std::uint64_t rng_seed = 0;

    // Time-multiplexed passes needed for `columns` outputs.
    int passes(Eigen::Index columns) const;
};

void validate(const OpticalMatVec& cfg);

// Clean integrated outputs without noise or ADC.
Vector matvec_clean(const Vector& x, const Matrix& w, Mode mode);

// Peak-to-peak swing of a single product for inputs in [-1, 1].
inline constexpr double kProductSwing = 2.0;

// Std of the integrated noise on each output after `steps` time steps
// (PerStep reference).
double integrated_noise_std(double sigma, Eigen::Index steps);

// Full-scale reference per output, sum_i |contribution_ij|.
Vector contribution_scale(const Vector& x, const Matrix& w, Mode mode);

// Noise std of every output of one product under cfg (zeros without noise).
Vector output_noise_std(const Vector& x, const Matrix& w, const OpticalMatVec& cfg);

// One optical matrix-vector product. Noise for output j is drawn from the
// substream keyed by (cfg.rng_seed, stream, j), so results do not depend on
// evaluation order.
Vector matvec(const Vector& x, const Matrix& w, const OpticalMatVec& cfg, std::uint64_t stream = 0);

// Row r of the result is matvec(x.row(r), w, cfg, r). Rows run in parallel.
Matrix matmul_batched(const Matrix& x, const Matrix& w, const OpticalMatVec& cfg);

struct EmitterGrid {
    int rows = 0;
    int cols = 0;
    double pitch_um = 80.0;
    Matrix pattern;  // intensities >= 0
};

EmitterGrid make_grid(const Matrix& pattern, double pitch_um = 80.0);
// rows x cols array with every emitter at intensity 1.
EmitterGrid uniform_grid(int rows, int cols, double pitch_um = 80.0);

struct FanoutMask {
    Matrix grid;  // splitting weights >= 0, summing to 1
};

FanoutMask make_mask(const Matrix& weights);
// m x m equal-power splitter.
FanoutMask uniform_mask(int m);
// rows x cols equal-power splitter.
FanoutMask uniform_mask(int rows, int cols);

// Far-field image of the fanned-out array: full 2D convolution of the emitter
// pattern with the splitting kernel, (rows+m-1) x (cols+m-1).
Matrix fanout_image(const EmitterGrid& array, const FanoutMask& mask);

// Midrise uniform quantizer with 2^bits levels over [-full_scale, full_scale].
// Inputs beyond the range clamp to the outermost level. Idempotent.
double quantize(double v, int bits, double full_scale);

// Bits of precision carried by an SNR, log2(snr). DomainError when snr <= 1.
double precision_bits(double snr);

// Standard normal draw addressed by (seed, stream, index).
double gaussian_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace onnsim::engine
