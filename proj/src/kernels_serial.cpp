#include <cmath>

#include "nppq/kernels.hpp"

namespace nppq::kernels::serial {

void diagonal_phase(std::span<std::complex<double>> amps,
                    std::span<const double> diag, double angle) {
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double phi = angle * diag[b];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double re = amps[b].real();
    const double im = amps[b].imag();
    // (re + i im)(c - i s)
    amps[b] = {re * c + im * s, im * c - re * s};
  }
}

void diagonal_phase_flip_symmetric(std::span<std::complex<double>> amps,
                                   std::span<const double> diag, double angle) {
  const std::size_t dim = amps.size();
  if (dim < 2) return diagonal_phase(amps, diag, angle);
  const std::size_t mask = dim - 1;
  for (std::size_t b = 0; b < dim / 2; ++b) {
    const double phi = angle * diag[b];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    for (const std::size_t k : {b, b ^ mask}) {
      const double re = amps[k].real();
      const double im = amps[k].imag();
      amps[k] = {re * c + im * s, im * c - re * s};
    }
  }
}

void x_rotation(std::span<std::complex<double>> amps, int qubit,
                double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
    for (std::size_t j = block; j < block + stride; ++j) {
      const auto a0 = amps[j];
      const auto a1 = amps[j + stride];
      // [c, i s; i s, c]
      amps[j] = {c * a0.real() - s * a1.imag(), c * a0.imag() + s * a1.real()};
      amps[j + stride] = {c * a1.real() - s * a0.imag(),
                          c * a1.imag() + s * a0.real()};
    }
  }
}

double expectation(std::span<const std::complex<double>> amps,
                   std::span<const double> diag) {
  double e = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) e += std::norm(amps[b]) * diag[b];
  return e;
}

std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm_squared(std::span<const std::complex<double>> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace nppq::kernels::serial
