#include "nures/krylov.hpp"

#include <Eigen/Eigenvalues>

namespace nures::detail {

Eigen::VectorXcd tridiag_exp_e0(const Eigen::VectorXd& alpha,
                                const Eigen::VectorXd& beta, double dt) {
  const int m = static_cast<int>(alpha.size());
  if (m == 1) {
    Eigen::VectorXcd c(1);
    c(0) = std::exp(Complex(0.0, -dt * alpha(0)));
    return c;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(alpha, beta.head(m - 1));
  if (es.info() != Eigen::Success) {
    throw NumericalError("krylov: tridiagonal eigensolve failed");
  }
  const Eigen::MatrixXd& u = es.eigenvectors();
  const Eigen::VectorXd& lambda = es.eigenvalues();
  Eigen::VectorXcd phases(m);
  for (int k = 0; k < m; ++k) {
    phases(k) = std::exp(Complex(0.0, -dt * lambda(k))) * u(0, k);
  }
  return u * phases;
}

}  // namespace nures::detail
