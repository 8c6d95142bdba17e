#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "nures/errors.hpp"
#include "nures/pauli.hpp"

namespace nures {

namespace detail {

/// Coefficients exp(-i dt T) e_0 for the real symmetric tridiagonal T
/// given by diag(alpha) and offdiag(beta); m = alpha.size().
Eigen::VectorXcd tridiag_exp_e0(const Eigen::VectorXd& alpha,
                                const Eigen::VectorXd& beta, double dt);

}  // namespace detail

/// Lanczos approximation of w = exp(-i dt A) v for Hermitian A, given only
/// through a matrix-free apply. The subspace is grown until either the
/// a-posteriori residual estimate beta_m * |[exp(-i dt T)]_{m-1,0}| drops
/// below `tol`, the recurrence breaks down (invariant subspace reached, the
/// result is then exact), or `max_dim` vectors have been used.
///
/// The basis is fully re-orthogonalized, so the stated tolerances hold at
/// the 1e-12 level for the step sizes used here. dt may be negative
/// (backward evolution).
class KrylovPropagator {
 public:
  explicit KrylovPropagator(int max_dim = 16, double tol = 1e-12)
      : max_dim_(max_dim), tol_(tol) {}

  int max_dim() const { return max_dim_; }

  /// Advances v in place; returns the subspace dimension used.
  template <class ApplyFn>
  int propagate(const ApplyFn& apply, double dt, Eigen::VectorXcd& v) {
    const double vnorm = v.norm();
    if (!(vnorm > 0.0) || !std::isfinite(vnorm)) {
      throw NumericalError("krylov: input vector has invalid norm");
    }
    const Eigen::Index dim = v.size();
    const int m_cap = static_cast<int>(
        std::min<Eigen::Index>(max_dim_, dim));

    basis_.resize(m_cap + 1);
    alpha_.resize(m_cap);
    beta_.resize(m_cap);
    if (work_.size() != dim) work_.resize(dim);

    basis_[0] = v / vnorm;
    int m = 0;
    bool breakdown = false;
    Eigen::VectorXcd coeff;

    while (m < m_cap) {
      apply(basis_[m], work_);
      alpha_(m) = std::real(basis_[m].dot(work_));
      work_ -= alpha_(m) * basis_[m];
      if (m > 0) work_ -= beta_(m - 1) * basis_[m - 1];
      // Full re-orthogonalization keeps the basis clean for small m.
      for (int j = 0; j <= m; ++j) {
        const Complex overlap = basis_[j].dot(work_);
        work_ -= overlap * basis_[j];
      }
      beta_(m) = work_.norm();
      ++m;

      if (beta_(m - 1) < 1e-14 * std::abs(vnorm) + 1e-300) {
        breakdown = true;
        break;
      }
      if (m >= 2 || m == m_cap) {
        coeff = detail::tridiag_exp_e0(alpha_.head(m), beta_.head(m - 1), dt);
        const double residual = beta_(m - 1) * std::abs(coeff(m - 1));
        if (residual < tol_) break;
      }
      if (m < m_cap) basis_[m] = work_ / beta_(m - 1);
    }

    if (breakdown || coeff.size() != m) {
      coeff = detail::tridiag_exp_e0(alpha_.head(m), beta_.head(m - 1), dt);
    }
    v.setZero();
    for (int j = 0; j < m; ++j) v += (vnorm * coeff(j)) * basis_[j];
    return m;
  }

 private:
  int max_dim_;
  double tol_;
  std::vector<Eigen::VectorXcd> basis_;
  Eigen::VectorXd alpha_, beta_;
  Eigen::VectorXcd work_;
};

}  // namespace nures
