#include "nppq/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nppq/kernels.hpp"

namespace nppq {

namespace {

void check_qubits(int n) {
  if (n < 0 || n > 30) {
    throw std::domain_error("qubit count out of range: " + std::to_string(n));
  }
}

void require_same(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + " qubits)");
  }
}

}  // namespace

StateVector::StateVector(int n) : n_(n) {
  check_qubits(n);
  amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
}

StateVector StateVector::plus(int n) {
  StateVector s(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (auto& x : s.amps_) x = {a, 0.0};
  return s;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[index] = {1.0, 0.0};
  return s;
}

StateVector StateVector::from_amplitudes(int n, std::vector<cplx> amps) {
  StateVector s(n);
  if (amps.size() != s.dim()) {
    throw std::invalid_argument("amplitude count does not match 2^n");
  }
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm_squared() const {
  return kernels::omp::norm_squared(amps_);
}

void StateVector::normalize() {
  const double nrm = std::sqrt(norm_squared());
  if (!(nrm > 0.0)) throw std::domain_error("cannot normalize a zero state");
  for (auto& a : amps_) a /= nrm;
}

void apply_diagonal_phase(StateVector& state, const DiagonalOp& op,
                          double angle) {
  require_same(state.n(), op.n, "apply_diagonal_phase");
  if (op.diag.size() != state.dim()) {
    throw std::invalid_argument("apply_diagonal_phase: diagonal length");
  }
  if (op.flip_symmetric) {
    kernels::omp::diagonal_phase_flip_symmetric(state.amps(), op.diag, angle);
  } else {
    kernels::omp::diagonal_phase(state.amps(), op.diag, angle);
  }
}

void apply_x_rotations(StateVector& state, std::span<const double> angles) {
  require_same(state.n(), static_cast<int>(angles.size()), "apply_x_rotations");
  for (int q = 0; q < state.n(); ++q) {
    if (angles[q] != 0.0) kernels::omp::x_rotation(state.amps(), q, angles[q]);
  }
}

void apply_uniform_x_rotation(StateVector& state, double angle) {
  if (angle == 0.0) return;
  for (int q = 0; q < state.n(); ++q) {
    kernels::omp::x_rotation(state.amps(), q, angle);
  }
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  require_same(a.n(), b.n(), "inner_product");
  return kernels::omp::inner(a.amps(), b.amps());
}

double expectation(const StateVector& state, const DiagonalOp& op) {
  require_same(state.n(), op.n, "expectation");
  return kernels::omp::expectation(state.amps(), op.diag);
}

double probability_of(const StateVector& state,
                      std::span<const std::uint32_t> indices) {
  double p = 0.0;
  for (const auto b : indices) p += std::norm(state[b]);
  return p;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace nppq
