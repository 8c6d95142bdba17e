#include "nures/tdvp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "nures/errors.hpp"
#include "nures/krylov.hpp"

namespace nures {

namespace {

// Environment across a bond, one (bra_chi x ket_chi) block per MPO channel.
using EnvBlock = std::vector<Eigen::MatrixXcd>;

EnvBlock boundary_env() {
  return EnvBlock{Eigen::MatrixXcd::Ones(1, 1)};
}

void ensure_zeroed(std::vector<RowMatrixXcd>& v, std::size_t count,
                   Eigen::Index rows, Eigen::Index cols) {
  v.resize(count);
  for (auto& m : v) {
    if (m.rows() != rows || m.cols() != cols) m.resize(rows, cols);
    m.setZero();
  }
}

EnvBlock transfer_left(const EnvBlock& left, const SiteTensor& t,
                       const MpoSite& w) {
  std::array<std::vector<Eigen::MatrixXcd>, 2> lt;
  for (int s = 0; s < 2; ++s) {
    lt[s].resize(static_cast<std::size_t>(w.wl));
    for (int a = 0; a < w.wl; ++a) {
      lt[s][static_cast<std::size_t>(a)] =
          left[static_cast<std::size_t>(a)] * t.block(s);
    }
  }
  EnvBlock out(static_cast<std::size_t>(w.wr));
  for (int b = 0; b < w.wr; ++b) {
    std::array<Eigen::MatrixXcd, 2> acc;
    for (int sp = 0; sp < 2; ++sp) {
      acc[sp] = Eigen::MatrixXcd::Zero(t.chi_l, t.chi_r);
    }
    for (int a = 0; a < w.wl; ++a) {
      if (!w.has(a, b)) continue;
      const Matrix2& m = w.op(a, b);
      for (int sp = 0; sp < 2; ++sp) {
        for (int s = 0; s < 2; ++s) {
          if (m(sp, s) == Complex(0.0, 0.0)) continue;
          acc[sp] += m(sp, s) * lt[s][static_cast<std::size_t>(a)];
        }
      }
    }
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(t.chi_r, t.chi_r);
    for (int sp = 0; sp < 2; ++sp) {
      block.noalias() += t.block(sp).adjoint() * acc[sp];
    }
    out[static_cast<std::size_t>(b)] = std::move(block);
  }
  return out;
}

EnvBlock transfer_right(const EnvBlock& right, const SiteTensor& t,
                        const MpoSite& w) {
  std::array<std::vector<Eigen::MatrixXcd>, 2> rt;
  for (int s = 0; s < 2; ++s) {
    rt[s].resize(static_cast<std::size_t>(w.wr));
    for (int b = 0; b < w.wr; ++b) {
      rt[s][static_cast<std::size_t>(b)] =
          t.block(s) * right[static_cast<std::size_t>(b)].transpose();
    }
  }
  EnvBlock out(static_cast<std::size_t>(w.wl));
  for (int a = 0; a < w.wl; ++a) {
    std::array<Eigen::MatrixXcd, 2> acc;
    for (int sp = 0; sp < 2; ++sp) {
      acc[sp] = Eigen::MatrixXcd::Zero(t.chi_l, t.chi_r);
    }
    for (int b = 0; b < w.wr; ++b) {
      if (!w.has(a, b)) continue;
      const Matrix2& m = w.op(a, b);
      for (int sp = 0; sp < 2; ++sp) {
        for (int s = 0; s < 2; ++s) {
          if (m(sp, s) == Complex(0.0, 0.0)) continue;
          acc[sp] += m(sp, s) * rt[s][static_cast<std::size_t>(b)];
        }
      }
    }
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(t.chi_l, t.chi_l);
    for (int sp = 0; sp < 2; ++sp) {
      block.noalias() += t.block(sp).conjugate() * acc[sp].transpose();
    }
    out[static_cast<std::size_t>(a)] = std::move(block);
  }
  return out;
}

/// Effective two-site Hamiltonian, applied matrix-free to the flattened
/// (chi_l, 2, 2, chi_r) block.
class TwoSiteHam {
 public:
  TwoSiteHam(const EnvBlock& left, const MpoSite& w1, const MpoSite& w2,
             const EnvBlock& right, Eigen::Index chi_l, Eigen::Index chi_r)
      : left_(left), w1_(w1), w2_(w2), right_(right), chi_l_(chi_l),
        chi_r_(chi_r) {}

  void operator()(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    const Eigen::Index cr2 = 2 * chi_r_;
    Eigen::Map<const RowMatrixXcd> in_mat(in.data(), chi_l_, 4 * chi_r_);

    t1_.resize(static_cast<std::size_t>(w1_.wl));
    for (int a = 0; a < w1_.wl; ++a) {
      t1_[static_cast<std::size_t>(a)].noalias() =
          left_[static_cast<std::size_t>(a)] * in_mat;
    }
    ensure_zeroed(t2_, static_cast<std::size_t>(w1_.wr), chi_l_, 4 * chi_r_);
    for (int a = 0; a < w1_.wl; ++a) {
      for (int b = 0; b < w1_.wr; ++b) {
        if (!w1_.has(a, b)) continue;
        const Matrix2& m = w1_.op(a, b);
        for (int sp = 0; sp < 2; ++sp) {
          for (int s = 0; s < 2; ++s) {
            if (m(sp, s) == Complex(0.0, 0.0)) continue;
            t2_[static_cast<std::size_t>(b)].middleCols(sp * cr2, cr2) +=
                m(sp, s) *
                t1_[static_cast<std::size_t>(a)].middleCols(s * cr2, cr2);
          }
        }
      }
    }
    ensure_zeroed(t3_, static_cast<std::size_t>(w2_.wr), chi_l_, 4 * chi_r_);
    for (int b = 0; b < w2_.wl; ++b) {
      for (int c = 0; c < w2_.wr; ++c) {
        if (!w2_.has(b, c)) continue;
        const Matrix2& m = w2_.op(b, c);
        for (int sp = 0; sp < 2; ++sp) {
          for (int s = 0; s < 2; ++s) {
            if (m(sp, s) == Complex(0.0, 0.0)) continue;
            for (int s1 = 0; s1 < 2; ++s1) {
              t3_[static_cast<std::size_t>(c)].middleCols(
                  (s1 * 2 + sp) * chi_r_, chi_r_) +=
                  m(sp, s) * t2_[static_cast<std::size_t>(b)].middleCols(
                                 (s1 * 2 + s) * chi_r_, chi_r_);
            }
          }
        }
      }
    }
    if (out.size() != in.size()) out.resize(in.size());
    Eigen::Map<RowMatrixXcd> out_mat(out.data(), chi_l_ * 4, chi_r_);
    out_mat.setZero();
    for (int c = 0; c < w2_.wr; ++c) {
      Eigen::Map<const RowMatrixXcd> t3_mat(
          t3_[static_cast<std::size_t>(c)].data(), chi_l_ * 4, chi_r_);
      out_mat.noalias() +=
          t3_mat * right_[static_cast<std::size_t>(c)].transpose();
    }
  }

 private:
  const EnvBlock& left_;
  const MpoSite& w1_;
  const MpoSite& w2_;
  const EnvBlock& right_;
  Eigen::Index chi_l_, chi_r_;
  mutable std::vector<RowMatrixXcd> t1_, t2_, t3_;
};

/// Effective one-site Hamiltonian on the flattened (chi_l, 2, chi_r) block.
class OneSiteHam {
 public:
  OneSiteHam(const EnvBlock& left, const MpoSite& w, const EnvBlock& right,
             Eigen::Index chi_l, Eigen::Index chi_r)
      : left_(left), w_(w), right_(right), chi_l_(chi_l), chi_r_(chi_r) {}

  void operator()(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    Eigen::Map<const RowMatrixXcd> in_mat(in.data(), chi_l_, 2 * chi_r_);
    t1_.resize(static_cast<std::size_t>(w_.wl));
    for (int a = 0; a < w_.wl; ++a) {
      t1_[static_cast<std::size_t>(a)].noalias() =
          left_[static_cast<std::size_t>(a)] * in_mat;
    }
    ensure_zeroed(t2_, static_cast<std::size_t>(w_.wr), chi_l_, 2 * chi_r_);
    for (int a = 0; a < w_.wl; ++a) {
      for (int b = 0; b < w_.wr; ++b) {
        if (!w_.has(a, b)) continue;
        const Matrix2& m = w_.op(a, b);
        for (int sp = 0; sp < 2; ++sp) {
          for (int s = 0; s < 2; ++s) {
            if (m(sp, s) == Complex(0.0, 0.0)) continue;
            t2_[static_cast<std::size_t>(b)].middleCols(sp * chi_r_, chi_r_) +=
                m(sp, s) *
                t1_[static_cast<std::size_t>(a)].middleCols(s * chi_r_,
                                                            chi_r_);
          }
        }
      }
    }
    if (out.size() != in.size()) out.resize(in.size());
    Eigen::Map<RowMatrixXcd> out_mat(out.data(), chi_l_ * 2, chi_r_);
    out_mat.setZero();
    for (int b = 0; b < w_.wr; ++b) {
      Eigen::Map<const RowMatrixXcd> t2_mat(
          t2_[static_cast<std::size_t>(b)].data(), chi_l_ * 2, chi_r_);
      out_mat.noalias() +=
          t2_mat * right_[static_cast<std::size_t>(b)].transpose();
    }
  }

 private:
  const EnvBlock& left_;
  const MpoSite& w_;
  const EnvBlock& right_;
  Eigen::Index chi_l_, chi_r_;
  mutable std::vector<RowMatrixXcd> t1_, t2_;
};

struct SvdSplit {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;      // renormalized kept singular values
  Eigen::MatrixXcd vdag;
  double discarded = 0.0;
  bool degenerate = false;
};

SvdSplit split_truncate(const Eigen::Ref<const Eigen::MatrixXcd>& theta,
                        int cap, int structural_cap, const TdvpOptions& opt,
                        int bond_index) {
  if (!theta.allFinite()) {
    throw NumericalError("tdvp2_step: non-finite two-site tensor at bond " +
                         std::to_string(bond_index));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(
      theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!s.allFinite()) {
    throw NumericalError("tdvp2_step: SVD failed at bond " +
                         std::to_string(bond_index));
  }

  // rank_tol = 0 keeps the full coordinate rank (fixed-manifold evolution);
  // the structural Schmidt-rank ceiling 2^min(k, N-k) always applies.
  int natural = 0;
  if (opt.rank_tol > 0.0) {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) > opt.rank_tol * s(0)) ++natural;
    }
  } else {
    natural = static_cast<int>(s.size());
  }
  natural = std::max(natural, 1);
  int keep = std::min(natural, structural_cap);
  if (cap > 0) keep = std::min(keep, cap);

  const double total_weight = s.squaredNorm();
  if (opt.svd_epsilon > 0.0) {
    double tail = 0.0;
    while (keep > 1) {
      const double next_tail = tail + s(keep - 1) * s(keep - 1);
      if (next_tail > opt.svd_epsilon * total_weight) break;
      tail = next_tail;
      --keep;
    }
  }

  SvdSplit out;
  out.u = svd.matrixU().leftCols(keep);
  out.vdag = svd.matrixV().leftCols(keep).adjoint();
  Eigen::VectorXd kept = s.head(keep);
  const double kept_weight = kept.squaredNorm();
  out.discarded = 1.0 - kept_weight / total_weight;
  out.s = kept / std::sqrt(kept_weight);
  out.degenerate =
      keep < natural && (s(keep - 1) - s(keep)) <= 1e-12 * s(0);
  return out;
}

}  // namespace

TdvpStepResult tdvp2_step(MpsState& state, const HamiltonianMpo& mpo,
                          double dt, const TdvpOptions& options) {
  const int n = state.n_sites();
  if (n < 2) {
    throw std::invalid_argument("tdvp2_step: need at least two sites");
  }
  if (mpo.n_sites() != n) {
    throw std::invalid_argument("tdvp2_step: MPO/MPS length mismatch");
  }
  state.move_center(0);

  const double h = 0.5 * dt;
  const int cap = state.bond_cap();
  TdvpStepResult result;
  KrylovPropagator krylov(options.krylov_dim, options.krylov_tol);

  std::vector<EnvBlock> left_env(static_cast<std::size_t>(n));
  std::vector<EnvBlock> right_env(static_cast<std::size_t>(n));
  left_env[0] = boundary_env();
  right_env[static_cast<std::size_t>(n - 1)] = boundary_env();
  for (int i = n - 2; i >= 0; --i) {
    right_env[static_cast<std::size_t>(i)] =
        transfer_right(right_env[static_cast<std::size_t>(i + 1)],
                       state.tensor(i + 1),
                       mpo.sites[static_cast<std::size_t>(i + 1)]);
  }

  auto merge = [](const SiteTensor& a, const SiteTensor& b) {
    SiteTensor theta;  // (chi_l, 4, chi_r) treated through its flat buffer
    theta.chi_l = a.chi_l;
    theta.chi_r = b.chi_r;
    theta.data.resize(static_cast<Eigen::Index>(a.chi_l) * 4 * b.chi_r);
    Eigen::Map<RowMatrixXcd> m(theta.data.data(),
                               static_cast<Eigen::Index>(a.chi_l) * 2,
                               static_cast<Eigen::Index>(b.chi_r) * 2);
    m.noalias() = a.left() * b.right();
    return theta;
  };

  auto evolve_bond = [&](int i, SiteTensor& theta, double tau) {
    TwoSiteHam ham(left_env[static_cast<std::size_t>(i)],
                   mpo.sites[static_cast<std::size_t>(i)],
                   mpo.sites[static_cast<std::size_t>(i + 1)],
                   right_env[static_cast<std::size_t>(i + 1)], theta.chi_l,
                   theta.chi_r);
    krylov.propagate(ham, tau, theta.data);
  };

  auto evolve_site = [&](int i, SiteTensor& c, double tau) {
    OneSiteHam ham(left_env[static_cast<std::size_t>(i)],
                   mpo.sites[static_cast<std::size_t>(i)],
                   right_env[static_cast<std::size_t>(i)], c.chi_l, c.chi_r);
    krylov.propagate(ham, tau, c.data);
  };

  auto structural_cap = [n](int cut) { return 1 << std::min(cut, n - cut); };

  // Left-to-right half step.
  for (int i = 0; i <= n - 2; ++i) {
    SiteTensor theta = merge(state.tensor(i), state.tensor(i + 1));
    evolve_bond(i, theta, h);
    Eigen::Map<const RowMatrixXcd> theta_mat(
        theta.data.data(), static_cast<Eigen::Index>(theta.chi_l) * 2,
        static_cast<Eigen::Index>(theta.chi_r) * 2);
    SvdSplit split =
        split_truncate(theta_mat, cap, structural_cap(i + 1), options, i + 1);
    result.discarded_weight += split.discarded;
    if (split.degenerate) ++result.degenerate_truncations;
    const int keep = static_cast<int>(split.s.size());
    result.max_bond = std::max(result.max_bond, keep);

    SiteTensor u = SiteTensor::zero(theta.chi_l, keep);
    u.left() = split.u;
    state.tensor(i) = std::move(u);
    left_env[static_cast<std::size_t>(i + 1)] =
        transfer_left(left_env[static_cast<std::size_t>(i)], state.tensor(i),
                      mpo.sites[static_cast<std::size_t>(i)]);

    SiteTensor c = SiteTensor::zero(keep, theta.chi_r);
    c.right() = split.s.cast<Complex>().asDiagonal() * split.vdag;
    if (i < n - 2) evolve_site(i + 1, c, -h);
    state.tensor(i + 1) = std::move(c);
  }

  // Right-to-left half step.
  for (int i = n - 2; i >= 0; --i) {
    SiteTensor theta = merge(state.tensor(i), state.tensor(i + 1));
    evolve_bond(i, theta, h);
    Eigen::Map<const RowMatrixXcd> theta_mat(
        theta.data.data(), static_cast<Eigen::Index>(theta.chi_l) * 2,
        static_cast<Eigen::Index>(theta.chi_r) * 2);
    SvdSplit split =
        split_truncate(theta_mat, cap, structural_cap(i + 1), options, i + 1);
    result.discarded_weight += split.discarded;
    if (split.degenerate) ++result.degenerate_truncations;
    const int keep = static_cast<int>(split.s.size());
    result.max_bond = std::max(result.max_bond, keep);

    SiteTensor v = SiteTensor::zero(keep, theta.chi_r);
    v.right() = split.vdag;
    state.tensor(i + 1) = std::move(v);
    right_env[static_cast<std::size_t>(i)] =
        transfer_right(right_env[static_cast<std::size_t>(i + 1)],
                       state.tensor(i + 1),
                       mpo.sites[static_cast<std::size_t>(i + 1)]);

    SiteTensor c = SiteTensor::zero(theta.chi_l, keep);
    c.left() = split.u * split.s.cast<Complex>().asDiagonal();
    if (i > 0) evolve_site(i, c, -h);
    state.tensor(i) = std::move(c);
  }

  // The gauge walk above left the center at site 0.
  state.move_center(0);
  state.normalize();
  return result;
}

}  // namespace nures
