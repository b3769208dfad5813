#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "onnsim/engine.hpp"
#include "onnsim/model.hpp"
#include "onnsim/modulation.hpp"
#include "onnsim/noise.hpp"

using namespace onnsim;

namespace {

Matrix uniform(Eigen::Index r, Eigen::Index c, std::uint64_t seed, double lim) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-lim, lim);
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    return m;
}

void BM_MatvecNonlinear(benchmark::State& state) {
    const auto n = state.range(0);
    const Matrix w = uniform(n, 100, 1, 0.99);
    const Vector x = uniform(n, 1, 2, 0.99).col(0);
    engine::OpticalMatVec cfg;
    cfg.mode = engine::Mode::Nonlinear;
    cfg.noise = noise::from_snr(135.0);
    cfg.adc_bits = 6;
    std::uint64_t stream = 0;
    for (auto _ : state) benchmark::DoNotOptimize(engine::matvec(x, w, cfg, stream++));
    state.SetItemsProcessed(state.iterations() * n * 100);
}
BENCHMARK(BM_MatvecNonlinear)->Arg(100)->Arg(784);

void BM_MatmulBatched(benchmark::State& state) {
    const Matrix x = uniform(state.range(0), 784, 3, 0.99);
    const Matrix w = uniform(784, 100, 4, 0.99);
    engine::OpticalMatVec cfg;
    cfg.mode = engine::Mode::Nonlinear;
    for (auto _ : state) benchmark::DoNotOptimize(engine::matmul_batched(x, w, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatmulBatched)->Arg(64)->Arg(256)->UseRealTime();

void BM_ForwardBackward(benchmark::State& state) {
    auto model = nn::reference_model();
    nn::init_weights(model, 1, nn::InitLaw::PhaseUniform);
    const Matrix x = uniform(state.range(0), 784, 5, 1.0);
    std::vector<int> y(static_cast<std::size_t>(state.range(0)));
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = static_cast<int>(k % 10);
    for (auto _ : state) {
        const auto fw = nn::forward(model, x, true);
        benchmark::DoNotOptimize(nn::backward(model, fw.cache, y));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardBackward)->Arg(64)->UseRealTime();

void BM_Demodulate(benchmark::State& state) {
    const auto cfg = modulation::make_lo_config(1e9, static_cast<int>(state.range(0)));
    const Matrix xw = uniform(1000, 2, 6, 1.0);
    std::vector<double> x(1000), w(1000);
    for (int k = 0; k < 1000; ++k) {
        x[static_cast<std::size_t>(k)] = xw(k, 0);
        w[static_cast<std::size_t>(k)] = xw(k, 1);
    }
    const auto wf = modulation::homodyne_waveform(x, w, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(modulation::demodulate(wf, cfg));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Demodulate)->Arg(16)->Arg(64)->Arg(256);

void BM_SnrSweep(benchmark::State& state) {
    const auto p = noise::preset_integrating();
    const auto powers = noise::log_powers(1e-10, 1e-4, 200);
    for (auto _ : state) benchmark::DoNotOptimize(noise::snr_sweep(p.noise, p.rx, powers));
}
BENCHMARK(BM_SnrSweep);

}  // namespace
BENCHMARK_MAIN();
