#pragma once

#include "nures/mpo.hpp"
#include "nures/mps.hpp"

namespace nures {

struct TdvpOptions {
  int krylov_dim = 16;
  double krylov_tol = 1e-12;
  /// Singular values below rank_tol * s_max never count toward the natural
  /// rank (they carry no weight at double precision).
  double rank_tol = 1e-14;
  /// Optional extra truncation by discarded weight; 0 means the bond cap is
  /// the only truncation.
  double svd_epsilon = 0.0;
};

struct TdvpStepResult {
  double discarded_weight = 0.0;  // summed over all splits of the step
  int max_bond = 1;
  int degenerate_truncations = 0;  // cap landed inside a degenerate pair
};

/// One symmetric two-site TDVP step: a left-to-right half-sweep of dt/2
/// followed by a right-to-left half-sweep of dt/2. Every local problem is
/// integrated with a Lanczos exponential; two-site tensors are split by SVD
/// with singular values truncated to the state's bond cap; the state is
/// renormalized to unit norm. The MPO is treated as frozen for the step
/// (callers rebuild it with mu at the step midpoint).
///
/// On return the orthogonality center is at site 0.
TdvpStepResult tdvp2_step(MpsState& state, const HamiltonianMpo& mpo,
                          double dt, const TdvpOptions& options = {});

}  // namespace nures
