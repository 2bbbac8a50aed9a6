#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "diskop/boundary.hpp"
#include "diskop/operators.hpp"
#include "diskop/reference.hpp"
#include "diskop/sweep.hpp"
#include "diskop/weights.hpp"

namespace {

std::vector<double> random_values(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = unif(rng);
  return v;
}

void bm_maximal_sweep(benchmark::State& state) {
  auto v = random_values(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto m = diskop::max_arc_average(v);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_maximal_sweep)->Arg(256)->Arg(1024);

void bm_maximal_bruteforce(benchmark::State& state) {
  auto v = random_values(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto m = diskop::reference::hl_maximal_bruteforce(v);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_maximal_bruteforce)->Arg(256);

void bm_ap_constant(benchmark::State& state) {
  diskop::GridCircle grid(static_cast<int>(state.range(0)));
  auto omega = diskop::omega_delta(2.0, 0.2, grid);
  for (auto _ : state) {
    auto rep = diskop::ap_constant(omega, 2.0);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_ap_constant)->Arg(512)->Arg(2048);

void bm_ap_constant_bruteforce(benchmark::State& state) {
  diskop::GridCircle grid(static_cast<int>(state.range(0)));
  auto omega = diskop::omega_delta(2.0, 0.2, grid);
  for (auto _ : state) {
    double v = diskop::reference::ap_constant_bruteforce(omega, 2.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_ap_constant_bruteforce)->Arg(512);

void bm_g_function_fft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  diskop::GridCircle grid(n);
  auto polar = diskop::polar_grid(10, n);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  std::vector<diskop::cplx> s(n);
  for (auto& x : s) x = diskop::cplx(gauss(rng), gauss(rng));
  diskop::BoundaryFunction psi(grid, std::move(s));
  psi.coefficients();
  for (auto _ : state) {
    auto g = diskop::g_function(psi, polar);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(bm_g_function_fft)->Arg(256)->Arg(1024);

void bm_g_function_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  diskop::GridCircle grid(n);
  auto polar = diskop::polar_grid(10, n);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  std::vector<diskop::cplx> s(n);
  for (auto& x : s) x = diskop::cplx(gauss(rng), gauss(rng));
  diskop::BoundaryFunction psi(grid, std::move(s));
  psi.coefficients();
  for (auto _ : state) {
    auto g = diskop::reference::g_function_serial(psi, polar);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(bm_g_function_serial)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
