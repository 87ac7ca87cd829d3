#include "nppq/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nppq {

double DriveSpec::total() const noexcept {
  double s = 0.0;
  for (const auto x : h) s += x;
  return s;
}

void DriveSpec::validate() const {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0 && h[i] <= 1.0)) {
      throw std::domain_error("drive field h[" + std::to_string(i) +
                              "] = " + std::to_string(h[i]) +
                              " outside (0, 1]");
    }
  }
}

void ScheduleSpec::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw std::domain_error("schedule: total time must be positive");
  }
  for (std::size_t m = 0; m < b.size(); ++m) {
    if (!(b[m] >= -1.0 && b[m] <= 1.0)) {
      throw std::domain_error("schedule: b[" + std::to_string(m) +
                              "] outside [-1, 1]");
    }
  }
}

double schedule_lambda(const ScheduleSpec& sched, double t) {
  if (!(t >= 0.0 && t <= sched.total_time)) {
    throw std::domain_error("schedule_lambda: t outside [0, T]");
  }
  if (t == 0.0) return 0.0;
  if (t == sched.total_time) return 1.0;
  const double x = t / sched.total_time;
  double lam = x;
  for (std::size_t m = 0; m < sched.b.size(); ++m) {
    lam += sched.b[m] *
           std::sin(static_cast<double>(m + 1) * std::numbers::pi * x);
  }
  return lam;
}

DiagonalOp square_form_diagonal(std::span<const double> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  DiagonalOp op;
  op.n = n;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> field(dim);
  // field[b] = sum_i coeffs[i] s_i(b), built from b with its lowest set bit
  // cleared. The upper half is the exact negation of its flip partner, so
  // the squared diagonal is exactly flip symmetric for any coefficients.
  double all_up = 0.0;
  for (const auto c : coeffs) all_up += c;
  field[0] = all_up;
  const std::size_t half = dim / 2;
  for (std::size_t b = 1; b < std::max<std::size_t>(half, 1); ++b) {
    const int i = std::countr_zero(b);
    field[b] = field[b & (b - 1)] - 2.0 * coeffs[i];
  }
  for (std::size_t b = half; b < dim && n > 0; ++b) field[b] = -field[b ^ (dim - 1)];
  op.diag.resize(dim);
  for (std::size_t b = 0; b < dim; ++b) op.diag[b] = field[b] * field[b];
  op.flip_symmetric = n > 0;
  return op;
}

ProblemHamiltonian build_hp(const NppInstance& inst) {
  ProblemHamiltonian hp;
  hp.instance = inst;
  hp.diag = square_form_diagonal(inst.weights);
  const auto [lo, hi] = std::minmax_element(hp.diag.diag.begin(),
                                            hp.diag.diag.end());
  hp.e_min = *lo;
  hp.e_max = *hi;
  for (std::size_t b = 0; b < hp.diag.diag.size(); ++b) {
    if (hp.diag.diag[b] == hp.e_min) {
      hp.ground_indices.push_back(static_cast<std::uint32_t>(b));
    }
  }
  return hp;
}

DiagonalOp build_adaptive_hp(const NppInstance& inst,
                             std::span<const double> alpha) {
  if (static_cast<int>(alpha.size()) != inst.n) {
    throw std::invalid_argument("build_adaptive_hp: alpha has " +
                                std::to_string(alpha.size()) +
                                " entries, instance has " +
                                std::to_string(inst.n));
  }
  return square_form_diagonal(alpha);
}

Eigen::MatrixXd drive_matrix(const DriveSpec& drive) {
  const int n = drive.n();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (int i = 0; i < n; ++i) m(b ^ (Eigen::Index{1} << i), b) -= drive.h[i];
  }
  return m;
}

Eigen::MatrixXd interpolated_matrix(const DiagonalOp& diag,
                                    const DriveSpec& drive, double lam) {
  if (diag.n != drive.n()) {
    throw std::invalid_argument("interpolated_matrix: qubit count mismatch");
  }
  Eigen::MatrixXd m = (1.0 - lam) * drive_matrix(drive);
  for (std::size_t b = 0; b < diag.diag.size(); ++b) {
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) +=
        lam * diag.diag[b];
  }
  return m;
}

DenseHermitian build_ht(const ProblemHamiltonian& hp, const DriveSpec& drive,
                        double lam) {
  if (!std::isfinite(lam)) throw std::domain_error("build_ht: lambda not finite");
  return DenseHermitian(
      interpolated_matrix(hp.diag, drive, lam).cast<std::complex<double>>());
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> interpolated_sectors(
    const DiagonalOp& diag, const DriveSpec& drive, double lam) {
  const int n = diag.n;
  if (n < 1 || n != drive.n()) {
    throw std::invalid_argument("interpolated_sectors: qubit count mismatch");
  }
  const Eigen::Index half = Eigen::Index{1} << (n - 1);
  const Eigen::Index low_mask = half - 1;
  Eigen::MatrixXd even = Eigen::MatrixXd::Zero(half, half);
  Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(half, half);
  const double mix = 1.0 - lam;
  // Sector basis |b>_{+-} = (|b> +- |~b>)/sqrt(2) for b with the top bit 0.
  for (Eigen::Index b = 0; b < half; ++b) {
    const double e = lam * diag.diag[static_cast<std::size_t>(b)];
    even(b, b) += e;
    odd(b, b) += e;
    for (int i = 0; i + 1 < n; ++i) {
      const Eigen::Index c = b ^ (Eigen::Index{1} << i);
      even(c, b) -= mix * drive.h[i];
      odd(c, b) -= mix * drive.h[i];
    }
    // Flipping the top qubit maps |b>_{+-} to +-|b ^ low_mask>_{+-}.
    const Eigen::Index c = b ^ low_mask;
    even(c, b) -= mix * drive.h[n - 1];
    odd(c, b) += mix * drive.h[n - 1];
  }
  return {std::move(even), std::move(odd)};
}

}  // namespace nppq
