#include <cmath>

#include "nppq/kernels.hpp"

namespace nppq::kernels::omp {

void diagonal_phase(std::span<std::complex<double>> amps,
                    std::span<const double> diag, double angle) {
  if (amps.size() < kParallelThreshold) {
    return serial::diagonal_phase(amps, diag, angle);
  }
  const auto dim = static_cast<std::int64_t>(amps.size());
  auto* a = amps.data();
  const auto* d = diag.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < dim; ++b) {
    const double phi = angle * d[b];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double re = a[b].real();
    const double im = a[b].imag();
    a[b] = {re * c + im * s, im * c - re * s};
  }
}

void diagonal_phase_flip_symmetric(std::span<std::complex<double>> amps,
                                   std::span<const double> diag, double angle) {
  if (amps.size() < kParallelThreshold) {
    return serial::diagonal_phase_flip_symmetric(amps, diag, angle);
  }
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  const std::uint64_t mask = amps.size() - 1;
  auto* a = amps.data();
  const auto* d = diag.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < half; ++b) {
    const double phi = angle * d[b];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const auto lo = static_cast<std::uint64_t>(b);
    for (const std::uint64_t k : {lo, lo ^ mask}) {
      const double re = a[k].real();
      const double im = a[k].imag();
      a[k] = {re * c + im * s, im * c - re * s};
    }
  }
}

void x_rotation(std::span<std::complex<double>> amps, int qubit,
                double angle) {
  if (amps.size() < kParallelThreshold) {
    return serial::x_rotation(amps, qubit, angle);
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  const std::uint64_t low_mask = stride - 1;
  const auto pairs = static_cast<std::int64_t>(amps.size() / 2);
  auto* a = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < pairs; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    // insert a zero at bit position `qubit`
    const std::uint64_t j = ((uk & ~low_mask) << 1) | (uk & low_mask);
    const auto a0 = a[j];
    const auto a1 = a[j + stride];
    a[j] = {c * a0.real() - s * a1.imag(), c * a0.imag() + s * a1.real()};
    a[j + stride] = {c * a1.real() - s * a0.imag(),
                     c * a1.imag() + s * a0.real()};
  }
}

double expectation(std::span<const std::complex<double>> amps,
                   std::span<const double> diag) {
  if (amps.size() < kParallelThreshold) return serial::expectation(amps, diag);
  const auto dim = static_cast<std::int64_t>(amps.size());
  const auto* a = amps.data();
  const auto* d = diag.data();
  double e = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : e)
  for (std::int64_t b = 0; b < dim; ++b) e += std::norm(a[b]) * d[b];
  return e;
}

std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b) {
  if (a.size() < kParallelThreshold) return serial::inner(a, b);
  const auto dim = static_cast<std::int64_t>(a.size());
  const auto* pa = a.data();
  const auto* pb = b.data();
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::int64_t k = 0; k < dim; ++k) {
    re += pa[k].real() * pb[k].real() + pa[k].imag() * pb[k].imag();
    im += pa[k].real() * pb[k].imag() - pa[k].imag() * pb[k].real();
  }
  return {re, im};
}

double norm_squared(std::span<const std::complex<double>> amps) {
  if (amps.size() < kParallelThreshold) return serial::norm_squared(amps);
  const auto dim = static_cast<std::int64_t>(amps.size());
  const auto* a = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::int64_t b = 0; b < dim; ++b) s += std::norm(a[b]);
  return s;
}

}  // namespace nppq::kernels::omp
