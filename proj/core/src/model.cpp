#include "nures/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nures/errors.hpp"

namespace nures {

double CouplingProfile::at(double t) const {
  if (t < 0.0) {
    throw std::invalid_argument("coupling_at: t must be non-negative");
  }
  switch (kind) {
    case CouplingKind::Constant:
      return mu0;
    case CouplingKind::PowerDecay:
      return mu0 * std::pow(radius / (radius + t), exponent);
    case CouplingKind::SupernovaSingleAngle: {
      const double x = radius / (radius + t);
      const double s = 1.0 - std::sqrt(1.0 - x * x);
      return mu0 * s * s;
    }
  }
  return mu0;
}

std::vector<std::string> CouplingProfile::validation_errors() const {
  std::vector<std::string> errors;
  if (mu0 < 0.0) errors.push_back("coupling.mu0 must be >= 0");
  if (kind != CouplingKind::Constant) {
    if (radius <= 0.0) errors.push_back("coupling.radius must be > 0");
  }
  if (kind == CouplingKind::PowerDecay && exponent <= 0.0) {
    errors.push_back("coupling.exponent must be > 0");
  }
  return errors;
}

std::vector<std::string> SystemSpec::validation_errors() const {
  std::vector<std::string> errors;
  const int n = n_sites();
  if (n < 1) errors.push_back("system.n_sites must be >= 1");
  for (int i = 0; i < n; ++i) {
    if (omegas[i] <= 0.0) {
      errors.push_back("system.omegas[" + std::to_string(i) +
                       "] must be > 0");
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (omegas[i + 1] <= omegas[i]) {
      errors.push_back("system.omegas must be strictly increasing (indices " +
                       std::to_string(i) + ", " + std::to_string(i + 1) + ")");
    }
  }
  if (!(mixing_angle > 0.0 && mixing_angle <= std::numbers::pi / 4.0)) {
    errors.push_back("system.mixing_angle must lie in (0, pi/4]");
  }
  if (static_cast<int>(initial_config.size()) != n) {
    errors.push_back("system.initial_config must name one flavor per site (" +
                     std::to_string(initial_config.size()) + " given, " +
                     std::to_string(n) + " sites)");
  }
  auto coupling_errors = coupling.validation_errors();
  errors.insert(errors.end(), coupling_errors.begin(), coupling_errors.end());
  return errors;
}

void SystemSpec::validate() const {
  auto errors = validation_errors();
  if (errors.empty()) return;
  std::ostringstream msg;
  msg << "invalid SystemSpec:";
  for (const auto& e : errors) msg << "\n  - " << e;
  throw std::invalid_argument(msg.str());
}

SystemSpec SystemSpec::linear_grid(std::vector<Flavor> config,
                                   double mixing_angle,
                                   CouplingProfile coupling) {
  SystemSpec spec;
  spec.omegas.resize(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    spec.omegas[i] = static_cast<double>(i + 1);
  }
  spec.mixing_angle = mixing_angle;
  spec.coupling = coupling;
  spec.initial_config = std::move(config);
  return spec;
}

std::vector<Flavor> parse_flavor_string(const std::string& s) {
  std::vector<Flavor> config;
  config.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'e': case 'E': config.push_back(Flavor::Electron); break;
      case 'm': case 'M': case 'u': config.push_back(Flavor::Muon); break;
      default:
        throw std::invalid_argument(
            std::string("unrecognized flavor letter '") + c +
            "' (expected 'e' or 'm')");
    }
  }
  return config;
}

Eigen::Matrix2d pmns_matrix(double theta) {
  Eigen::Matrix2d u;
  u << std::cos(theta), std::sin(theta),
      -std::sin(theta), std::cos(theta);
  return u;
}

std::vector<Matrix2> build_one_body(const SystemSpec& spec, Basis basis) {
  spec.validate();
  const double c2 = std::cos(2.0 * spec.mixing_angle);
  const double s2 = std::sin(2.0 * spec.mixing_angle);
  std::vector<Matrix2> out;
  out.reserve(spec.omegas.size());
  for (double omega : spec.omegas) {
    if (basis == Basis::Mass) {
      out.push_back(-0.5 * omega * pauli::z());
    } else {
      out.push_back(-0.5 * omega * (c2 * pauli::z() - s2 * pauli::x()));
    }
  }
  return out;
}

HamiltonianTerms hamiltonian_terms(const SystemSpec& spec, double t,
                                   Basis basis) {
  HamiltonianTerms terms;
  terms.one_body = build_one_body(spec, basis);
  terms.pair_coupling = 0.5 * spec.coupling.at(t);
  return terms;
}

Eigen::MatrixXcd dense_hamiltonian(const SystemSpec& spec, double t,
                                   Basis basis) {
  const int n = spec.n_sites();
  if (n > 14) {
    throw CapacityError("dense_hamiltonian: N = " + std::to_string(n) +
                        " exceeds the N <= 14 dense-matrix guard");
  }
  const HamiltonianTerms terms = hamiltonian_terms(spec, t, basis);
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  // One-body terms, embedded site by site.
  for (int i = 0; i < n; ++i) {
    const Matrix2& m = terms.one_body[i];
    const std::int64_t mask = site_mask(i, n);
    for (std::int64_t b = 0; b < dim; ++b) {
      const int bit = site_bit(b, i, n);
      h(b, b) += m(bit, bit);
      h(b ^ mask, b) += m(1 - bit, bit);
    }
  }

  // Pair exchange: sigma_i . sigma_j = 2 SWAP_ij - I.
  const double g = terms.pair_coupling;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t mi = site_mask(i, n);
      const std::int64_t mj = site_mask(j, n);
      for (std::int64_t b = 0; b < dim; ++b) {
        const bool equal = ((b & mi) != 0) == ((b & mj) != 0);
        if (equal) {
          h(b, b) += g;
        } else {
          h(b, b) -= g;
          h(b ^ mi ^ mj, b) += 2.0 * g;
        }
      }
    }
  }
  return h;
}

StateVector initial_state(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.n_sites();
  StateVector psi;
  psi.n_sites = n;
  psi.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
  std::int64_t b = 0;
  for (int i = 0; i < n; ++i) {
    if (spec.initial_config[i] == Flavor::Muon) b |= site_mask(i, n);
  }
  psi.amplitudes(b) = 1.0;
  return psi;
}

}  // namespace nures
