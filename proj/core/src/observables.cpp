#include "nures/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nures/exact_engine.hpp"

namespace nures {

Eigen::Vector3d polarization_from_rdm(const Matrix2& rho) {
  Eigen::Vector3d p;
  p(0) = 2.0 * std::real(rho(1, 0));
  p(1) = 2.0 * std::imag(rho(1, 0));
  p(2) = std::real(rho(0, 0) - rho(1, 1));
  return p;
}

Eigen::Vector3d to_mass_frame(const Eigen::Vector3d& p_flavor, double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  Eigen::Vector3d p;
  p(0) = c * p_flavor(0) + s * p_flavor(2);
  p(1) = p_flavor(1);
  p(2) = -s * p_flavor(0) + c * p_flavor(2);
  return p;
}

Eigen::Vector3d polarization(const StateVector& psi, int site, Basis basis,
                             double theta) {
  const Eigen::Vector3d p = polarization_from_rdm(single_site_rdm(psi, site));
  return basis == Basis::Flavor ? p : to_mass_frame(p, theta);
}

double survival_from_polarization(const Eigen::Vector3d& p_flavor,
                                  double theta) {
  return 0.5 * (1.0 + to_mass_frame(p_flavor, theta)(2));
}

double survival_probability(const StateVector& psi, int site, double theta) {
  return survival_from_polarization(
      polarization(psi, site, Basis::Flavor, theta), theta);
}

SplitReport detect_splits(const std::vector<double>& per_mode_p,
                          double weak_threshold) {
  const int n = static_cast<int>(per_mode_p.size());
  if (n < 2) {
    throw std::invalid_argument("detect_splits: need at least two modes");
  }
  SplitReport report;
  report.per_mode_p = per_mode_p;
  report.weak_threshold = weak_threshold;
  for (int i = 0; i + 1 < n; ++i) {
    const double delta = std::abs(per_mode_p[i + 1] - per_mode_p[i]);
    if (delta >= 0.5) {
      report.boundaries.push_back(
          {i + 1, i + 2, delta, SplitStrength::Strong});
    } else if (delta >= weak_threshold) {
      report.boundaries.push_back({i + 1, i + 2, delta, SplitStrength::Weak});
    }
  }
  return report;
}

ColocationTable colocate_resources(const SplitReport& report,
                                   const std::vector<ModeResources>& modes,
                                   double entropy_tie_tol) {
  const int n = static_cast<int>(report.per_mode_p.size());
  if (static_cast<int>(modes.size()) != n) {
    throw std::invalid_argument(
        "colocate_resources: resource records cover " +
        std::to_string(modes.size()) + " modes, expected " +
        std::to_string(n));
  }
  double s_max = 0.0;
  for (const auto& m : modes) s_max = std::max(s_max, m.entropy);

  ColocationTable table;
  for (const auto& boundary : report.boundaries) {
    if (boundary.strength != SplitStrength::Strong) continue;
    ColocationEntry entry;
    entry.boundary = boundary;
    const int lo = boundary.lower_mode - 1;
    const int hi = boundary.upper_mode - 1;
    const int peak = modes[lo].entropy >= modes[hi].entropy ? lo : hi;
    entry.high_entropy_mode = peak + 1;
    entry.entropy_is_global_max =
        modes[peak].entropy >= s_max - entropy_tie_tol;
    bool local_min = true;
    if (peak > 0 && !(modes[peak].nl_sre2 < modes[peak - 1].nl_sre2)) {
      local_min = false;
    }
    if (peak + 1 < n && !(modes[peak].nl_sre2 < modes[peak + 1].nl_sre2)) {
      local_min = false;
    }
    entry.magic_is_local_min = local_min;
    entry.colocated = entry.entropy_is_global_max && entry.magic_is_local_min;
    table.entries.push_back(entry);
  }
  return table;
}

PairSymmetryResult pair_symmetry_check(const SystemSpec& spec,
                                       const std::vector<double>& entropy,
                                       const std::vector<double>& magic) {
  const int n = spec.n_sites();
  if (static_cast<int>(entropy.size()) != n ||
      static_cast<int>(magic.size()) != n) {
    throw std::invalid_argument(
        "pair_symmetry_check: per-mode arrays must cover all modes");
  }
  if (n % 2 != 0) {
    throw std::invalid_argument(
        "pair_symmetry_check: inapplicable, odd site count has an unpaired "
        "center mode");
  }
  const double omega_sum = spec.omegas.front() + spec.omegas.back();
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    if (std::abs(spec.omegas[i] + spec.omegas[j] - omega_sum) >
        1e-12 * omega_sum) {
      throw std::invalid_argument(
          "pair_symmetry_check: inapplicable, frequency grid is not mirror "
          "symmetric about its center");
    }
    if (spec.initial_config[i] == spec.initial_config[j]) {
      throw std::invalid_argument(
          "pair_symmetry_check: inapplicable, initial configuration is not "
          "mirror flavor-conjugate (modes " + std::to_string(i + 1) + ", " +
          std::to_string(j + 1) + ")");
    }
  }

  PairSymmetryResult out;
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    out.max_entropy_delta =
        std::max(out.max_entropy_delta, std::abs(entropy[i] - entropy[j]));
    out.max_magic_delta =
        std::max(out.max_magic_delta, std::abs(magic[i] - magic[j]));
  }
  return out;
}

}  // namespace nures
