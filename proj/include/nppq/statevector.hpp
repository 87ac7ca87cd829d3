#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nppq {

using cplx = std::complex<double>;

/// Basis convention, fixed for the whole library: in basis index b, bit i
/// belongs to qubit i, and bit value 0 encodes s_i = +1, bit value 1
/// encodes s_i = -1.
constexpr int spin(std::uint64_t b, int qubit) noexcept {
  return ((b >> qubit) & 1U) ? -1 : 1;
}

/// Global spin flip of basis index b on n qubits.
constexpr std::uint64_t flip_all(std::uint64_t b, int n) noexcept {
  return b ^ ((std::uint64_t{1} << n) - 1);
}

class StateVector {
 public:
  explicit StateVector(int n);

  /// |+>^n, the ground state of any positive transverse drive.
  static StateVector plus(int n);
  static StateVector basis(int n, std::uint64_t index);
  static StateVector from_amplitudes(int n, std::vector<cplx> amps);

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<cplx> amps() noexcept { return amps_; }
  std::span<const cplx> amps() const noexcept { return amps_; }
  cplx& operator[](std::size_t i) noexcept { return amps_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm_squared() const;
  void normalize();

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// A sigma^z-only Hamiltonian, stored as its 2^n diagonal energies.
struct DiagonalOp {
  int n = 0;
  std::vector<double> diag;
  /// Set when diag[b] == diag[~b] holds exactly; lets the phase kernel
  /// share work between flip partners.
  bool flip_symmetric = false;
};

/// amps[b] <- amps[b] * exp(-i * angle * diag[b]).
void apply_diagonal_phase(StateVector& state, const DiagonalOp& op,
                          double angle);

/// Applies exp(+i * angles[q] * sigma^x_q) on every qubit q, i.e.
/// exp(-i beta H_D) for H_D = -sum_q h_q sigma^x_q with angles[q] = beta h_q.
void apply_x_rotations(StateVector& state, std::span<const double> angles);

/// Same rotation angle on every qubit.
void apply_uniform_x_rotation(StateVector& state, double angle);

/// <a|b> = sum_b conj(a_b) b_b.
cplx inner_product(const StateVector& a, const StateVector& b);

/// <psi|D|psi> for diagonal D.
double expectation(const StateVector& state, const DiagonalOp& op);

/// sum over listed basis indices of |amps[b]|^2.
double probability_of(const StateVector& state,
                      std::span<const std::uint32_t> indices);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace nppq
