#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nures/model.hpp"
#include "nures/state_vector.hpp"

namespace nures {

/// Polarization vector (<sigma_x>, <sigma_y>, <sigma_z>) of a one-site
/// reduced density matrix, flavor-frame components.
Eigen::Vector3d polarization_from_rdm(const Matrix2& rho);

/// Frame rotation of a flavor-frame polarization vector into the mass
/// frame: a rotation by 2 theta about the y axis fixed by the convention
/// nu_e = cos(theta) nu_1 + sin(theta) nu_2.
Eigen::Vector3d to_mass_frame(const Eigen::Vector3d& p_flavor, double theta);

/// P(omega) = 2 <J_omega> at `site`, in the requested basis frame.
Eigen::Vector3d polarization(const StateVector& psi, int site, Basis basis,
                             double theta);

/// Survival probability of the first mass eigenstate,
/// P_nu1 = (1 + P_z^mass) / 2.
double survival_probability(const StateVector& psi, int site, double theta);
double survival_from_polarization(const Eigen::Vector3d& p_flavor,
                                  double theta);

enum class SplitStrength { Strong, Weak };

struct SplitBoundary {
  int lower_mode = 0;   // 1-based mode indices of the adjacent pair
  int upper_mode = 0;
  double delta = 0.0;   // |P(upper) - P(lower)|
  SplitStrength strength = SplitStrength::Weak;
};

struct SplitReport {
  std::vector<SplitBoundary> boundaries;  // sorted by mode index
  std::vector<double> per_mode_p;
  double weak_threshold = 0.25;
};

/// Scans adjacent mode pairs of the asymptotic P_nu1 spectrum. Strong
/// boundaries have |dP| >= 0.5, weak ones weak_threshold <= |dP| < 0.5.
SplitReport detect_splits(const std::vector<double>& per_mode_p,
                          double weak_threshold = 0.25);

struct ModeResources {
  double entropy = 0.0;
  double nl_sre2 = 0.0;
};

struct ColocationEntry {
  SplitBoundary boundary;
  int high_entropy_mode = 0;     // boundary side with the larger S
  bool entropy_is_global_max = false;
  bool magic_is_local_min = false;
  bool colocated = false;
};

struct ColocationTable {
  std::vector<ColocationEntry> entries;  // one per strong boundary
};

/// For every strong split boundary: does the higher-entropy side attain the
/// global entropy maximum (within entropy_tie_tol, to admit exact mirror
/// degeneracies) and is its NL-SRE2 a local minimum against its existing
/// neighbors?
ColocationTable colocate_resources(const SplitReport& report,
                                   const std::vector<ModeResources>& modes,
                                   double entropy_tie_tol = 1e-4);

struct PairSymmetryResult {
  double max_entropy_delta = 0.0;
  double max_magic_delta = 0.0;
};

/// Max mirror-pair discrepancy of S and NL-SRE2 across modes i and N+1-i.
/// Applicable only when the frequency grid is mirror symmetric about its
/// center (omega_i + omega_{N+1-i} constant) and the initial configuration
/// is mirror flavor-conjugate; throws std::invalid_argument otherwise.
PairSymmetryResult pair_symmetry_check(const SystemSpec& spec,
                                       const std::vector<double>& entropy,
                                       const std::vector<double>& magic);

}  // namespace nures
