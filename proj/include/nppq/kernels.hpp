#pragma once

// Raw statevector kernels. `serial` is the reference implementation kept
// for testing and benchmarking; `omp` is what the public StateVector API
// dispatches to. Both operate on interleaved complex<double> storage of
// length 2^n and must produce the same results up to rounding.

#include <complex>
#include <cstdint>
#include <span>

namespace nppq::kernels {

namespace serial {
void diagonal_phase(std::span<std::complex<double>> amps,
                    std::span<const double> diag, double angle);
/// Same result as diagonal_phase when diag[b] == diag[b ^ (dim - 1)];
/// each phase factor is computed once per flip pair.
void diagonal_phase_flip_symmetric(std::span<std::complex<double>> amps,
                                   std::span<const double> diag, double angle);
void x_rotation(std::span<std::complex<double>> amps, int qubit, double angle);
double expectation(std::span<const std::complex<double>> amps,
                   std::span<const double> diag);
std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b);
double norm_squared(std::span<const std::complex<double>> amps);
}  // namespace serial

namespace omp {
/// Below this dimension the kernels forward to the serial versions
/// instead of opening a parallel region.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

void diagonal_phase(std::span<std::complex<double>> amps,
                    std::span<const double> diag, double angle);
void diagonal_phase_flip_symmetric(std::span<std::complex<double>> amps,
                                   std::span<const double> diag, double angle);
void x_rotation(std::span<std::complex<double>> amps, int qubit, double angle);
double expectation(std::span<const std::complex<double>> amps,
                   std::span<const double> diag);
std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b);
double norm_squared(std::span<const std::complex<double>> amps);
}  // namespace omp

}  // namespace nppq::kernels
