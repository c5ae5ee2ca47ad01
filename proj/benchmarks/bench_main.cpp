#include <random>

#include <benchmark/benchmark.h>

#include <biphoton/focksim.hpp>
#include <biphoton/interference.hpp>
#include <biphoton/nsgate.hpp>
#include <biphoton/schmidt.hpp>

using namespace biphoton;

namespace {

JointSpectralAmplitude model(int n) {
    const GaussianSourceModel m{4e13, 4e13};
    const FrequencyGrid g = model_grid(m, angular_frequency(Length::nanometers(800.0)), n);
    return gaussian_model_jsa(m, g, g);
}

void BM_Permanent(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
}
BENCHMARK(BM_Permanent)->DenseRange(4, 12, 4);

void BM_SchmidtSvd(benchmark::State& state) {
    const JointSpectralAmplitude jsa = model(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(schmidt_svd(jsa).K);
}
BENCHMARK(BM_SchmidtSvd)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HomiNumeric(benchmark::State& state) {
    const JointSpectralAmplitude jsa = model(static_cast<int>(state.range(0)));
    const auto tau = default_tau_grid(homi_dip_width({4e13, 4e13}));
    for (auto _ : state) benchmark::DoNotOptimize(two_crystal_homi_numeric(jsa, tau).visibility);
}
BENCHMARK(BM_HomiNumeric)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SixfoldRate(benchmark::State& state) {
    const NSGateConfig cfg = default_ns_config();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ns_sixfold_rate(0.3, cfg, n).rate);
}
BENCHMARK(BM_SixfoldRate)->Arg(6)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
