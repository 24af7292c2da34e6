// Serial reference vs OpenMP kernels. Run with e.g.
//   OMP_NUM_THREADS=8 build/bench/bench_kernels

#include "photodet/detection.hpp"
#include "photodet/dressed.hpp"
#include "photodet/kernels.hpp"
#include "photodet/models.hpp"
#include "photodet/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <memory>
#include <random>

using namespace photodet;
using kernels::Exec;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

const EigenSystem& rabi_eigensystem(std::size_t n_fock) {
  static std::map<std::size_t, EigenSystem> cache;
  auto it = cache.find(n_fock);
  if (it == cache.end()) it = cache.emplace(n_fock, diagonalize(build_rabi(1.0, 1.0, 0.5, n_fock))).first;
  return it->second;
}

void BM_ToEigenbasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& es = rabi_eigensystem(n);
  const Matrix op = coupling_operator(build_rabi(1.0, 1.0, 0.5, n), "quadrature").elements();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::to_eigenbasis(es.states, op, exec_of(state)));
}

void BM_LoweringPart(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& es = rabi_eigensystem(n);
  const Matrix op = coupling_operator(build_rabi(1.0, 1.0, 0.5, n), "quadrature").elements();
  const Matrix o_eig = kernels::to_eigenbasis(es.states, op, Exec::serial);
  const kernels::TransitionWeight w = [](double f) { return Complex(std::sqrt(f), 0.0); };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::lowering_part(o_eig, es.energies, 1e-9, w, exec_of(state)));
}

void BM_LorentzianSum(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::vector<double> centers(200), weights(200), grid(static_cast<std::size_t>(state.range(0)));
  for (auto& c : centers) c = u(rng);
  for (auto& w : weights) w = u(rng);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 5.0 * static_cast<double>(i + 1) / static_cast<double>(grid.size());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::lorentzian_sum(centers, weights, grid, 1e-3, exec_of(state)));
}

void BM_SincSquaredSum(benchmark::State& state) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::vector<double> freqs(200), weights(200), times(static_cast<std::size_t>(state.range(0)));
  for (auto& f : freqs) f = u(rng);
  for (auto& w : weights) w = u(rng);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = 0.01 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sinc_squared_sum(freqs, weights, times, exec_of(state)));
}

void BM_SweepPoints(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::vector<double> out(points);
    kernels::for_each_index(
        points,
        [&](std::size_t i) {
          const auto m = build_rabi(1.0, 1.0, 0.05 * static_cast<double>(i), 30);
          const auto es = std::make_shared<const EigenSystem>(diagonalize(m));
          out[i] = wideband_rate(positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(1.0)), 1);
        },
        exec_of(state));
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

// Second argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_ToEigenbasis)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LoweringPart)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LorentzianSum)->ArgsProduct({{10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SincSquaredSum)->ArgsProduct({{10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepPoints)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
