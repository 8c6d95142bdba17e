#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nures/model.hpp"
#include "nures/pauli.hpp"

namespace nures {

/// Operator-valued MPO site tensor: wl x wr grid of 2x2 blocks.
struct MpoSite {
  int wl = 1;
  int wr = 1;
  std::vector<Matrix2> ops;      // row-major (a, b)
  std::vector<char> present;     // nonzero-block mask

  static MpoSite zero(int wl, int wr);
  Matrix2& op(int a, int b) { return ops[static_cast<std::size_t>(a) * wr + b]; }
  const Matrix2& op(int a, int b) const {
    return ops[static_cast<std::size_t>(a) * wr + b];
  }
  bool has(int a, int b) const {
    return present[static_cast<std::size_t>(a) * wr + b] != 0;
  }
  void set(int a, int b, const Matrix2& m) {
    op(a, b) = m;
    present[static_cast<std::size_t>(a) * wr + b] = 1;
  }
};

/// Bond-5 MPO of the collective Hamiltonian. The uniform pair coupling
/// permits a five-channel finite-state machine per site:
///   0 = done (identity to the right), 1..3 = one sigma_{x,y,z} placed and
///   awaiting its partner, 4 = start (identity to the left).
/// One-body terms ride the start->done transition; the pair channel places
/// a bare Pauli on start->pending and pair_coupling * Pauli on
/// pending->done, so a time-dependent mu(t) only rescales one scalar
/// channel (see set_pair_coupling).
struct HamiltonianMpo {
  std::vector<MpoSite> sites;
  double pair_coupling = 0.0;  // mu(t)/2 currently installed

  int n_sites() const { return static_cast<int>(sites.size()); }

  /// Rescales the pending->done channel in place to a new mu(t)/2.
  void set_pair_coupling(double coupling);
};

HamiltonianMpo build_mpo(const SystemSpec& spec, double t,
                         Basis basis = Basis::Flavor);

/// Dense contraction oracle (guarded at N <= 10).
Eigen::MatrixXcd mpo_to_dense(const HamiltonianMpo& mpo);

}  // namespace nures
