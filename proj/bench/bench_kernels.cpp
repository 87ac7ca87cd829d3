// Serial reference vs OpenMP kernels, n = 10..20 qubits.
//   ./bench_kernels --benchmark_filter=x_rotation

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "nppq/instance.hpp"
#include "nppq/kernels.hpp"
#include "nppq/rng.hpp"

namespace k = nppq::kernels;
using cplx = std::complex<double>;

namespace {

struct Fixture {
  std::vector<cplx> amps;
  std::vector<double> diag;

  explicit Fixture(int n) : amps(std::size_t{1} << n), diag(amps.size()) {
    nppq::Xoshiro256 rng(static_cast<std::uint64_t>(n));
    for (auto& a : amps) a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    // Flip-symmetric, like every problem diagonal.
    const std::size_t mask = diag.size() - 1;
    for (std::size_t b = 0; b <= mask / 2; ++b) diag[b] = diag[b ^ mask] = rng.uniform(0, 1);
  }
};

template <auto Fn>
void phase(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    Fn(std::span(f.amps), std::span<const double>(f.diag), 0.01);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.amps.size()));
}

template <auto Fn>
void x_rotation_all(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Fixture f(n);
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) Fn(std::span(f.amps), q, 0.01);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<long long>(f.amps.size()));
}

template <auto Fn>
void expectation(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(Fn(std::span<const cplx>(f.amps), std::span<const double>(f.diag)));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.amps.size()));
}

}  // namespace

#define NPPQ_PAIR(name, tmpl, fn)                                            \
  BENCHMARK(tmpl<k::serial::fn>)->Name("serial/" name)->DenseRange(10, 20, 2); \
  BENCHMARK(tmpl<k::omp::fn>)->Name("omp/" name)->DenseRange(10, 20, 2)

NPPQ_PAIR("diagonal_phase", phase, diagonal_phase);
NPPQ_PAIR("diagonal_phase_flip_symmetric", phase, diagonal_phase_flip_symmetric);
NPPQ_PAIR("x_rotation_all_qubits", x_rotation_all, x_rotation);
NPPQ_PAIR("expectation", expectation, expectation);

BENCHMARK_MAIN();
