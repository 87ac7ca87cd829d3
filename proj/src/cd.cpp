#include "nppq/cd.hpp"

#include <stdexcept>
#include <string>

#include "nppq/dense.hpp"

namespace nppq {

namespace {

void check_agp_args(const DiagonalOp& problem, const DriveSpec& drive,
                    int order) {
  if (problem.n > kMaxAgpQubits) {
    throw std::domain_error("AGP analysis supports n <= " +
                            std::to_string(kMaxAgpQubits));
  }
  if (problem.n != drive.n()) {
    throw std::invalid_argument("AGP analysis: drive size mismatch");
  }
  if (order < 1 || order > kMaxAgpOrder) {
    throw std::domain_error("AGP order must be in [1, 3]");
  }
}

Eigen::MatrixXd diag_matrix(const DiagonalOp& d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.diag.size()));
  for (Eigen::Index b = 0; b < v.size(); ++b) v(b) = d.diag[b];
  return v.asDiagonal();
}

// H, dH and the nested commutators O_1 .. O_{2 order}.
struct Nested {
  Eigen::MatrixXd h;
  Eigen::MatrixXd dh;
  std::vector<Eigen::MatrixXd> ops;  // ops[m] = O_{m+1}
};

Nested nested_commutators(const DiagonalOp& problem, const DriveSpec& drive,
                          double lam, int depth) {
  const Eigen::MatrixXd hd = drive_matrix(drive);
  const Eigen::MatrixXd hp = diag_matrix(problem);
  Nested out;
  out.h = (1.0 - lam) * hd + lam * hp;
  out.dh = hp - hd;
  const Eigen::MatrixXd* prev = &out.dh;
  out.ops.reserve(static_cast<std::size_t>(depth));
  for (int m = 0; m < depth; ++m) {
    out.ops.push_back(commutator(out.h, *prev));
    prev = &out.ops.back();
  }
  return out;
}

double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace

ActionSolution minimize_action(const DiagonalOp& problem, const DriveSpec& drive,
                               double lam, int order) {
  check_agp_args(problem, drive, order);
  const auto nested = nested_commutators(problem, drive, lam, 2 * order);
  // G = dH + sum_k alpha_k O_{2k}; O_{2k} is symmetric.
  ActionSolution sol;
  sol.gram.resize(order, order);
  sol.rhs.resize(order);
  for (int k = 0; k < order; ++k) {
    const auto& ok = nested.ops[2 * k + 1];
    sol.rhs(k) = -frobenius_inner(nested.dh, ok);
    for (int j = 0; j <= k; ++j) {
      sol.gram(k, j) = sol.gram(j, k) =
          frobenius_inner(ok, nested.ops[2 * j + 1]);
    }
  }
  const double scale = sol.gram.cwiseAbs().maxCoeff();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(order);
  if (scale > 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-12);
    cod.compute(sol.gram);
    alpha = cod.solve(sol.rhs);
    sol.singular = cod.rank() < order;
  } else {
    sol.singular = true;
  }
  sol.coefficients.assign(alpha.data(), alpha.data() + alpha.size());

  Eigen::MatrixXd g = nested.dh;
  for (int k = 0; k < order; ++k) g += alpha(k) * nested.ops[2 * k + 1];
  sol.action = frobenius_inner(g, g);
  return sol;
}

ActionSolution minimize_action(const NppInstance& inst, const DriveSpec& drive,
                               double lam, int order) {
  return minimize_action(build_hp(inst).diag, drive, lam, order);
}

AgpAnsatz build_agp(const DiagonalOp& problem, const DriveSpec& drive,
                    double lam, int order) {
  const auto sol = minimize_action(problem, drive, lam, order);
  auto nested = nested_commutators(problem, drive, lam, 2 * order - 1);
  AgpAnsatz agp;
  agp.order = order;
  agp.lambda = lam;
  agp.coefficients = sol.coefficients;
  agp.singular = sol.singular;
  for (int k = 0; k < order; ++k) {
    agp.operators.push_back(std::move(nested.ops[2 * k]));
  }
  return agp;
}

AgpAnsatz build_agp(const NppInstance& inst, const DriveSpec& drive, double lam,
                    int order) {
  return build_agp(build_hp(inst).diag, drive, lam, order);
}

double action_value(const DiagonalOp& problem, const DriveSpec& drive,
                    double lam, const std::vector<double>& coefficients) {
  const int order = static_cast<int>(coefficients.size());
  check_agp_args(problem, drive, order);
  const auto nested = nested_commutators(problem, drive, lam, 2 * order);
  Eigen::MatrixXd g = nested.dh;
  for (int k = 0; k < order; ++k) g += coefficients[k] * nested.ops[2 * k + 1];
  return frobenius_inner(g, g);
}

BchReport bch_check(const NppInstance& inst, double beta, double gamma) {
  if (inst.n > kMaxBchQubits) throw std::domain_error("bch_check: n > 6");
  const auto hp = build_hp(inst);
  const Eigen::MatrixXcd hd =
      drive_matrix(DriveSpec::uniform(inst.n)).cast<std::complex<double>>();
  const Eigen::MatrixXcd hpm = diag_matrix(hp.diag).cast<std::complex<double>>();

  BchReport r;
  r.beta = beta;
  r.gamma = gamma;
  r.exact_product = expm_hermitian(DenseHermitian(hd), beta) *
                    expm_hermitian(DenseHermitian(hpm), gamma);
  const std::complex<double> c(0.0, -0.5 * beta * gamma);
  Eigen::MatrixXcd heff = beta * hd + gamma * hpm + c * commutator(hd, hpm);
  // Remove rounding-level anti-Hermitian residue before the Hermitian check.
  heff = (0.5 * (heff + heff.adjoint())).eval();
  r.effective = expm_hermitian(DenseHermitian(heff), 1.0);
  r.frobenius_error = (r.exact_product - r.effective).norm();
  return r;
}

std::vector<PauliTerm> pauli_decomposition(const Eigen::MatrixXcd& m, int n,
                                           double tol) {
  if (n < 1 || n > 6 || m.rows() != (Eigen::Index{1} << n) ||
      m.cols() != m.rows()) {
    throw std::invalid_argument("pauli_decomposition: need a 2^n square matrix, n <= 6");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<PauliTerm> out;
  const std::complex<double> I(0.0, 1.0);
  std::uint64_t strings = 1;
  for (int q = 0; q < n; ++q) strings *= 4;
  for (std::uint64_t code = 0; code < strings; ++code) {
    std::string label(static_cast<std::size_t>(n), 'I');
    std::uint64_t xmask = 0;
    std::uint64_t c = code;
    for (int q = 0; q < n; ++q) {
      label[q] = "IXYZ"[c % 4];
      if (label[q] == 'X' || label[q] == 'Y') xmask |= std::uint64_t{1} << q;
      c /= 4;
    }
    // Tr(P M) = sum_col <col ^ x| P |col> M(col, col ^ x)
    std::complex<double> tr = 0.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
      std::complex<double> elem = 1.0;
      for (int q = 0; q < n; ++q) {
        const bool bit = (col >> q) & 1U;
        switch (label[q]) {
          case 'Y': elem *= bit ? -I : I; break;
          case 'Z': elem *= bit ? -1.0 : 1.0; break;
          default: break;
        }
      }
      const auto row = col ^ xmask;
      tr += elem * m(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row));
    }
    const auto coef = tr / static_cast<double>(dim);
    if (std::abs(coef) > tol) out.push_back({label, coef});
  }
  return out;
}

}  // namespace nppq
