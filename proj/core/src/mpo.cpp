#include "nures/mpo.hpp"

#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "nures/errors.hpp"

namespace nures {

namespace {
constexpr int kDone = 0;
constexpr int kStart = 4;
}  // namespace

MpoSite MpoSite::zero(int wl_, int wr_) {
  MpoSite s;
  s.wl = wl_;
  s.wr = wr_;
  s.ops.assign(static_cast<std::size_t>(wl_) * wr_, Matrix2::Zero());
  s.present.assign(static_cast<std::size_t>(wl_) * wr_, 0);
  return s;
}

void HamiltonianMpo::set_pair_coupling(double coupling) {
  for (int i = 1; i < n_sites(); ++i) {
    MpoSite& w = sites[static_cast<std::size_t>(i)];
    for (int a = 1; a <= 3; ++a) {
      w.set(a, kDone, coupling * pauli::by_index(a));
    }
  }
  pair_coupling = coupling;
}

HamiltonianMpo build_mpo(const SystemSpec& spec, double t, Basis basis) {
  const int n = spec.n_sites();
  const std::vector<Matrix2> one_body = build_one_body(spec, basis);
  const double coupling = 0.5 * spec.coupling.at(t);

  HamiltonianMpo mpo;
  mpo.sites.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int wl = (i == 0) ? 1 : 5;
    const int wr = (i == n - 1) ? 1 : 5;
    MpoSite w = MpoSite::zero(wl, wr);
    const int start_row = (i == 0) ? 0 : kStart;

    w.set(start_row, kDone, one_body[static_cast<std::size_t>(i)]);
    if (i > 0) {
      w.set(kDone, kDone, pauli::identity());
    }
    if (i < n - 1) {
      w.set(start_row, (i == 0) ? 4 : kStart, pauli::identity());
      for (int a = 1; a <= 3; ++a) {
        w.set(start_row, a, pauli::by_index(a));
        if (i > 0) w.set(a, a, pauli::identity());
      }
    }
    mpo.sites.push_back(std::move(w));
  }
  mpo.set_pair_coupling(coupling);
  return mpo;
}

Eigen::MatrixXcd mpo_to_dense(const HamiltonianMpo& mpo) {
  const int n = mpo.n_sites();
  if (n > 10) {
    throw CapacityError("mpo_to_dense: N = " + std::to_string(n) +
                        " exceeds the N <= 10 contraction guard");
  }
  // Channel-indexed fold: acc[b] is the partial operator on sites [0, i)
  // feeding right-channel b.
  std::vector<Eigen::MatrixXcd> acc(static_cast<std::size_t>(mpo.sites[0].wr));
  for (int b = 0; b < mpo.sites[0].wr; ++b) {
    acc[static_cast<std::size_t>(b)] =
        mpo.sites[0].has(0, b) ? mpo.sites[0].op(0, b)
                               : Matrix2::Zero().eval();
  }
  for (int i = 1; i < n; ++i) {
    const MpoSite& w = mpo.sites[static_cast<std::size_t>(i)];
    const Eigen::Index dim = acc[0].rows() * 2;
    std::vector<Eigen::MatrixXcd> next(
        static_cast<std::size_t>(w.wr),
        Eigen::MatrixXcd::Zero(dim, dim));
    for (int a = 0; a < w.wl; ++a) {
      for (int b = 0; b < w.wr; ++b) {
        if (!w.has(a, b)) continue;
        next[static_cast<std::size_t>(b)] +=
            Eigen::kroneckerProduct(acc[static_cast<std::size_t>(a)],
                                    w.op(a, b));
      }
    }
    acc = std::move(next);
  }
  return acc[0];
}

}  // namespace nures
