#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nppq/dense.hpp"
#include "nppq/instance.hpp"
#include "nppq/statevector.hpp"

namespace nppq {

/// H_P = (sum_i w_i sigma^z_i)^2 for the instance weights, diagonal in the
/// computational basis. The i == j terms are kept, so every level carries
/// the constant offset sum_i w_i^2.
struct ProblemHamiltonian {
  NppInstance instance;
  DiagonalOp diag;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<std::uint32_t> ground_indices;  // ascending

  int n() const noexcept { return diag.n; }
  std::size_t degeneracy() const noexcept { return ground_indices.size(); }
};

/// Transverse drive H_D = -sum_i h_i sigma^x_i.
struct DriveSpec {
  std::vector<double> h;

  static DriveSpec uniform(int n) {
    return DriveSpec{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  }
  int n() const noexcept { return static_cast<int>(h.size()); }
  double total() const noexcept;
  /// Throws std::domain_error unless 0 < h_i <= 1 for all i.
  void validate() const;
};

/// lambda(t) = t/T + sum_{m=1..C} b_m sin(m pi t / T).
struct ScheduleSpec {
  double total_time = 50.0;
  std::vector<double> b;

  static ScheduleSpec linear(double total_time) { return {total_time, {}}; }
  int cutoff() const noexcept { return static_cast<int>(b.size()); }
  /// Throws std::domain_error unless T > 0 and -1 <= b_m <= 1.
  void validate() const;
};

/// Evaluates lambda(t). Returns exactly 0 at t = 0 and exactly 1 at t = T.
/// The value may leave [0, 1] in between. Throws std::domain_error for t
/// outside [0, T].
double schedule_lambda(const ScheduleSpec& sched, double t);

/// diag[b] = (sum_i coeffs[i] s_i(b))^2.
DiagonalOp square_form_diagonal(std::span<const double> coeffs);

ProblemHamiltonian build_hp(const NppInstance& inst);

/// H_NPP(alpha): same square form with arbitrary finite weights alpha.
DiagonalOp build_adaptive_hp(const NppInstance& inst,
                             std::span<const double> alpha);

/// Real symmetric matrix of -sum_i h_i sigma^x_i.
Eigen::MatrixXd drive_matrix(const DriveSpec& drive);

/// (1 - lam) H_D + lam diag, real symmetric.
Eigen::MatrixXd interpolated_matrix(const DiagonalOp& diag,
                                    const DriveSpec& drive, double lam);

/// (1 - lam) H_D + lam H_P as a dense Hermitian matrix. Only the spectral
/// and analysis tooling materializes this; time evolution never does.
DenseHermitian build_ht(const ProblemHamiltonian& hp, const DriveSpec& drive,
                        double lam);

/// The blocks of (1 - lam) H_D + lam diag in the even and odd eigenspaces
/// of the global flip X^{(x)n}. Requires diag to be flip-symmetric and
/// n >= 1. Each block has dimension 2^(n-1); the union of their spectra is
/// the full spectrum.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> interpolated_sectors(
    const DiagonalOp& diag, const DriveSpec& drive, double lam);

}  // namespace nppq
