#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "nures/pauli.hpp"
#include "nures/state_vector.hpp"

namespace nures {

enum class Flavor : std::uint8_t { Electron = 0, Muon = 1 };
enum class Basis { Mass, Flavor };

enum class CouplingKind { Constant, PowerDecay, SupernovaSingleAngle };

/// Neutrino-neutrino interaction strength mu(t), in units of omega0.
///
/// Three profiles are supported:
///   constant               mu(t) = mu0
///   power_decay            mu(t) = mu0 * (R / (R + t))^p
///   supernova_single_angle mu(t) = mu0 * [1 - sqrt(1 - (R/(R+t))^2)]^2
///
/// All satisfy mu(0) = mu0 and mu(t) >= 0; the two decaying kinds are
/// monotone non-increasing.
struct CouplingProfile {
  CouplingKind kind = CouplingKind::PowerDecay;
  double mu0 = 5.0;
  double radius = 50.0;    // R, ignored for the constant kind
  double exponent = 3.0;   // p, power_decay only

  /// mu(t); rejects t < 0.
  double at(double t) const;

  std::vector<std::string> validation_errors() const;
};

/// Physical definition of the N-mode system: frequency grid, two-flavor
/// mixing angle, coupling profile, and the initial flavor configuration.
///
/// Site i of the qubit register carries frequency omegas[i]; mode numbering
/// in outputs is 1-based, so site i is mode i+1. Electron flavor maps to the
/// local basis vector (1,0) (spin up, P_z = +1).
struct SystemSpec {
  std::vector<double> omegas;           // strictly increasing, all > 0
  double mixing_angle = 0.1;            // theta in (0, pi/4]
  CouplingProfile coupling;
  std::vector<Flavor> initial_config;   // one flavor per site

  int n_sites() const { return static_cast<int>(omegas.size()); }

  std::vector<std::string> validation_errors() const;
  /// Throws std::invalid_argument with the aggregated error list.
  void validate() const;

  /// Spec on the default equally spaced grid omega_i = i * omega0 with
  /// omega0 = 1, sized to the configuration.
  static SystemSpec linear_grid(std::vector<Flavor> config,
                                double mixing_angle = 0.1,
                                CouplingProfile coupling = {});
};

/// Parse a flavor-configuration string, one letter per site:
/// 'e' -> electron, 'm' (or 'u') -> muon. Throws on anything else.
std::vector<Flavor> parse_flavor_string(const std::string& s);

/// The two-flavor PMNS rotation. Rows are flavor states (e, mu), columns
/// mass states (nu1, nu2), with the convention nu_e = cos(theta) nu_1 +
/// sin(theta) nu_2. Flavor-basis operators are U * O_mass * U^dagger.
Eigen::Matrix2d pmns_matrix(double theta);

/// Split form of the Hamiltonian at time t: per-site 2x2 one-body matrices
/// plus the scalar multiplying sum_{i<j} sigma_i . sigma_j.
///
/// In the ordered-pair convention of the model, mu(t) sum_{w != w'}
/// J_w . J_w' equals (mu(t)/2) sum_{i<j} sigma_i . sigma_j, so
/// pair_coupling = mu(t)/2.
struct HamiltonianTerms {
  std::vector<Matrix2> one_body;
  double pair_coupling = 0.0;
};

/// Per-site one-body matrices: -omega_i sigma_z / 2 in the mass basis,
/// -omega_i (cos(2 theta) sigma_z - sin(2 theta) sigma_x) / 2 in flavor.
std::vector<Matrix2> build_one_body(const SystemSpec& spec, Basis basis);

HamiltonianTerms hamiltonian_terms(const SystemSpec& spec, double t,
                                   Basis basis);

/// Full 2^N x 2^N Hermitian matrix. Capacity-guarded at N <= 14; intended
/// for oracle checks at small N.
Eigen::MatrixXcd dense_hamiltonian(const SystemSpec& spec, double t,
                                   Basis basis);

/// Product state in the flavor basis from spec.initial_config;
/// electron -> (1,0), muon -> (0,1). Site 0 is the most significant bit.
StateVector initial_state(const SystemSpec& spec);

}  // namespace nures
