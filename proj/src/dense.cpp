#include "nppq/dense.hpp"

#include <stdexcept>
#include <string>

namespace nppq {

double DenseHermitian::hermiticity_defect(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DenseHermitian::DenseHermitian(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::domain_error("DenseHermitian: matrix is not square");
  }
  const double defect = hermiticity_defect(m_);
  if (!(defect < 1e-12)) {
    throw std::domain_error("DenseHermitian: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
}

EigenSystem eig_hermitian(const DenseHermitian& m) {
  if (m.dim() > kMaxDenseDim) {
    throw std::domain_error("eig_hermitian: dimension exceeds 4096");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigvals_symmetric: solver did not converge");
  }
  return solver.eigenvalues();
}

Eigen::MatrixXcd expm_hermitian(const EigenSystem& es, double t) {
  if (t == 0.0) {
    return Eigen::MatrixXcd::Identity(es.vectors.rows(), es.vectors.cols());
  }
  const Eigen::VectorXcd phases =
      (es.values.cast<std::complex<double>>() * std::complex<double>(0.0, -t))
          .array()
          .exp();
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Eigen::MatrixXcd expm_hermitian(const DenseHermitian& h, double t) {
  return expm_hermitian(eig_hermitian(h), t);
}

}  // namespace nppq
