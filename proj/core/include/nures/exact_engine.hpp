#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "nures/model.hpp"
#include "nures/state_vector.hpp"

namespace nures {

enum class StepMethod { MatrixExponential, Krylov, Rk4 };

struct EvolutionParams {
  double dt = 0.01;
  double t_final = 0.0;
  StepMethod method = StepMethod::Krylov;
  int krylov_dim = 16;
  double krylov_tol = 1e-12;

  std::vector<std::string> validation_errors() const;
  void validate() const;
};

/// y = H(t) x term by term, never materializing the 2^N x 2^N matrix.
/// Agrees with dense_hamiltonian * x to 1e-12 at oracle sizes.
void apply_hamiltonian(const SystemSpec& spec, Basis basis, double t,
                       const Eigen::VectorXcd& x, Eigen::VectorXcd& y);

StateVector apply_hamiltonian(const StateVector& psi, const SystemSpec& spec,
                              double t, Basis basis = Basis::Flavor);

using SnapshotCallback = std::function<void(double t, const StateVector&)>;

/// Dense state-vector evolution under the time-dependent Schroedinger
/// equation, mu frozen at each step midpoint. The callback fires at t = 0,
/// every `snapshot_stride` steps (if > 0), and at t_final. Norm is never
/// re-imposed; drift per step stays below 1e-11 for the Krylov and dense
/// exponential steppers.
StateVector evolve_exact(StateVector psi, const SystemSpec& spec,
                         const EvolutionParams& params,
                         int snapshot_stride = 0,
                         const SnapshotCallback& callback = {},
                         Basis basis = Basis::Flavor);

/// Reduced density matrix of the listed sites (ascending order defines the
/// row ordering). Hermitian, unit trace, PSD within 1e-12.
Eigen::MatrixXcd reduced_density_matrix(const StateVector& psi,
                                        const std::vector<int>& sites);

Matrix2 single_site_rdm(const StateVector& psi, int site);

/// Squared Schmidt values across the bipartition (sites < cut | rest),
/// descending. cut in [1, N-1].
std::vector<double> schmidt_spectrum_at_cut(const StateVector& psi, int cut);

/// Eigenvalues {l0 >= l1} of the one-site reduced density matrix.
std::vector<double> single_site_spectrum(const StateVector& psi, int site);

/// Numerical Schmidt rank at every cut (singular values above
/// rel_tol * s_max), the dense analogue of an MPS bond profile.
std::vector<int> schmidt_rank_profile(const StateVector& psi,
                                      double rel_tol = 1e-12);

}  // namespace nures
