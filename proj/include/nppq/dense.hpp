#pragma once

#include <Eigen/Dense>

namespace nppq {

/// Dense complex Hermitian matrix. Construction checks
/// ||M - M^dagger||_max < 1e-12 and throws std::domain_error otherwise.
class DenseHermitian {
 public:
  explicit DenseHermitian(Eigen::MatrixXcd m);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  /// Largest |M_ij - conj(M_ji)|.
  static double hermiticity_defect(const Eigen::MatrixXcd& m);

 private:
  Eigen::MatrixXcd m_;
};

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column k pairs with values[k]
};

inline constexpr Eigen::Index kMaxDenseDim = 4096;

/// Full eigendecomposition (Eigen's self-adjoint solver).
EigenSystem eig_hermitian(const DenseHermitian& m);

/// Eigenvalues only, ascending, for a real symmetric matrix.
Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& m);

/// exp(-i t H) through the eigendecomposition of H.
Eigen::MatrixXcd expm_hermitian(const DenseHermitian& h, double t);
Eigen::MatrixXcd expm_hermitian(const EigenSystem& es, double t);

template <typename Derived, typename Other>
auto commutator(const Eigen::MatrixBase<Derived>& a,
                const Eigen::MatrixBase<Other>& b) {
  return (a * b - b * a).eval();
}

}  // namespace nppq
