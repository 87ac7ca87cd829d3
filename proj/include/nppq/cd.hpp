#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nppq/hamiltonians.hpp"

namespace nppq {

inline constexpr int kMaxAgpQubits = 10;
inline constexpr int kMaxAgpOrder = 3;
inline constexpr int kMaxBchQubits = 6;

/// Nested-commutator approximation of the adiabatic gauge potential of
/// H(lam) = (1 - lam) H_D + lam H_P with d_lam H = H_P - H_D:
///   A = i sum_k coefficients[k] O_{2k+1},  O_1 = [H, dH], O_{m+1} = [H, O_m].
/// All matrices are real because H_D and H_P are; the odd-order operators
/// are antisymmetric, so i O is Hermitian.
struct AgpAnsatz {
  int order = 1;
  double lambda = 0.0;
  std::vector<double> coefficients;
  std::vector<Eigen::MatrixXd> operators;  // O_1, O_3, ..., O_{2l-1}
  bool singular = false;
};

struct ActionSolution {
  std::vector<double> coefficients;
  bool singular = false;
  double action = 0.0;  // S at the returned coefficients
  Eigen::MatrixXd gram; // Tr(O_{2k} O_{2j})
  Eigen::VectorXd rhs;  // -Tr(dH O_{2k})
};

/// Stationary point of S(alpha) = Tr[G^2], G = dH + i[A, H]. S is quadratic
/// in alpha, so this solves the normal equations; a rank-deficient system
/// returns the minimal-norm solution with `singular` set.
ActionSolution minimize_action(const DiagonalOp& problem, const DriveSpec& drive,
                               double lam, int order);
ActionSolution minimize_action(const NppInstance& inst, const DriveSpec& drive,
                               double lam, int order);

AgpAnsatz build_agp(const DiagonalOp& problem, const DriveSpec& drive,
                    double lam, int order);
AgpAnsatz build_agp(const NppInstance& inst, const DriveSpec& drive,
                    double lam, int order);

/// S(alpha) evaluated directly.
double action_value(const DiagonalOp& problem, const DriveSpec& drive,
                    double lam, const std::vector<double>& coefficients);

struct BchReport {
  double beta = 0.0;
  double gamma = 0.0;
  Eigen::MatrixXcd exact_product;  // e^{-i beta H_D} e^{-i gamma H_P}
  Eigen::MatrixXcd effective;      // e^{-i H_eff}
  double frobenius_error = 0.0;
};

/// Second-order BCH check with the uniform drive and
/// H_eff = beta H_D + gamma H_P - (i beta gamma / 2) [H_D, H_P]. n <= 6.
BchReport bch_check(const NppInstance& inst, double beta, double gamma);

struct PauliTerm {
  std::string label;  // one letter per qubit, qubit 0 first
  std::complex<double> coefficient;
};

/// Expansion M = sum_P c_P P over Pauli strings, c_P = Tr(P M) / 2^n,
/// keeping |c_P| > tol. n <= 6.
std::vector<PauliTerm> pauli_decomposition(const Eigen::MatrixXcd& m, int n,
                                           double tol = 1e-12);

}  // namespace nppq
