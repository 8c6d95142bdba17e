#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nures/model.hpp"
#include "nures/state_vector.hpp"

namespace nures {

using RowMatrixXcd =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rank-3 MPS site tensor T(l, s, r), physical dimension 2, stored row-major
/// in (l, s, r) order so both matricizations are zero-copy views:
///   left()  : (chi_l * 2) x chi_r, row (l, s) -- the left-canonical shape
///   right() : chi_l x (2 * chi_r), col (s, r) -- the right-canonical shape
struct SiteTensor {
  int chi_l = 1;
  int chi_r = 1;
  Eigen::VectorXcd data;

  static SiteTensor zero(int chi_l, int chi_r);

  Eigen::Map<RowMatrixXcd> left() {
    return {data.data(), static_cast<Eigen::Index>(chi_l) * 2, chi_r};
  }
  Eigen::Map<const RowMatrixXcd> left() const {
    return {data.data(), static_cast<Eigen::Index>(chi_l) * 2, chi_r};
  }
  Eigen::Map<RowMatrixXcd> right() {
    return {data.data(), chi_l, static_cast<Eigen::Index>(chi_r) * 2};
  }
  Eigen::Map<const RowMatrixXcd> right() const {
    return {data.data(), chi_l, static_cast<Eigen::Index>(chi_r) * 2};
  }
  /// Physical block s as a strided chi_l x chi_r view.
  Eigen::Map<const RowMatrixXcd, 0, Eigen::OuterStride<>> block(int s) const {
    return {data.data() + static_cast<Eigen::Index>(s) * chi_r, chi_l, chi_r,
            Eigen::OuterStride<>(2 * chi_r)};
  }
};

/// Matrix product state with mixed-canonical bookkeeping: tensors left of
/// `ortho_center` are left-orthonormal, tensors right of it right-orthonormal.
/// `bond_cap` (0 = uncapped) is the truncation cap applied by the TDVP
/// sweeps; gauge moves never truncate.
class MpsState {
 public:
  MpsState() = default;

  /// Product state from per-site local bits (0 -> (1,0), 1 -> (0,1)).
  static MpsState product_state(const std::vector<int>& bits);

  /// Product state of spec.initial_config in the flavor basis; all bond
  /// dimensions 1.
  static MpsState from_spec(const SystemSpec& spec);

  /// Exact (up to rank_tol) MPS compression of a dense state by a train of
  /// SVDs; max_bond = 0 keeps the full natural rank.
  static MpsState from_state_vector(const StateVector& psi, int max_bond = 0,
                                    double rank_tol = 1e-14);

  int n_sites() const { return static_cast<int>(tensors_.size()); }
  int ortho_center() const { return center_; }

  int bond_cap() const { return bond_cap_; }
  void set_bond_cap(int cap) { bond_cap_ = cap; }

  const SiteTensor& tensor(int i) const { return tensors_[i]; }
  SiteTensor& tensor(int i) { return tensors_[i]; }

  /// Bond dimensions at the N-1 internal cuts.
  std::vector<int> bond_dimensions() const;
  int max_bond_dimension() const;

  /// QR-based gauge moves; exact, no truncation.
  void move_center(int site);

  /// Pads every bond with zero-weight orthonormal directions up to
  /// min(cap, 2^min(k, N-k)) at cut k (cap = 0 pads to the structural
  /// ceiling). The represented state is unchanged; combined with
  /// rank_tol = 0 in the TDVP options this pins the evolution to a
  /// fixed-rank manifold from t = 0, on which the two-site sweep is exact.
  void expand_bonds(int cap);

  double norm() const;
  void normalize();

  /// Contraction to the dense 2^N amplitude vector (guarded at N <= 20).
  StateVector to_state_vector() const;

  Matrix2 site_rdm(int site) const;
  std::vector<Matrix2> all_site_rdms() const;

  /// Squared Schmidt values across bond `cut` (between sites cut-1 and cut),
  /// descending; cut in [1, N-1].
  std::vector<double> entanglement_spectrum_at_cut(int cut) const;

  /// Eigenvalues {l0 >= l1} of the one-site reduced density matrix.
  std::vector<double> single_site_spectrum(int site) const;

  /// Largest deviation from the canonical-form orthonormality conditions,
  /// for invariant checks.
  double max_orthonormality_residual() const;

 private:
  void orthonormalize_left(int site);   // absorb R into site+1
  void orthonormalize_right(int site);  // absorb L into site-1

  std::vector<SiteTensor> tensors_;
  int center_ = 0;
  int bond_cap_ = 0;
};

}  // namespace nures
