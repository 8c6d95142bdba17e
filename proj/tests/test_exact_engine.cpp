#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nures/errors.hpp"
#include "nures/exact_engine.hpp"
#include "nures/krylov.hpp"
#include "nures/model.hpp"
#include "nures/observables.hpp"

using namespace nures;

namespace {

StateVector random_state(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  StateVector psi;
  psi.n_sites = n;
  psi.amplitudes.resize(std::int64_t{1} << n);
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    psi.amplitudes(i) = Complex(g(rng), g(rng));
  }
  psi.normalize();
  return psi;
}

SystemSpec constant_spec(const std::string& config, double mu0) {
  SystemSpec spec = SystemSpec::linear_grid(parse_flavor_string(config), 0.1);
  spec.coupling.kind = CouplingKind::Constant;
  spec.coupling.mu0 = mu0;
  return spec;
}

double energy(const StateVector& psi, const SystemSpec& spec, double t) {
  const StateVector hpsi = apply_hamiltonian(psi, spec, t);
  return std::real(psi.amplitudes.dot(hpsi.amplitudes));
}

// Brute-force partial trace by explicit index summation, independent of the
// partial-trace implementation under test.
Eigen::MatrixXcd naive_rdm(const StateVector& psi,
                           const std::vector<int>& sites) {
  const int n = psi.n_sites;
  const int na = static_cast<int>(sites.size());
  const std::int64_t da = std::int64_t{1} << na;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  for (std::int64_t b = 0; b < psi.dim(); ++b) {
    for (std::int64_t bp = 0; bp < psi.dim(); ++bp) {
      bool same_env = true;
      for (int i = 0; i < n && same_env; ++i) {
        const bool in_a =
            std::find(sites.begin(), sites.end(), i) != sites.end();
        if (!in_a && site_bit(b, i, n) != site_bit(bp, i, n)) {
          same_env = false;
        }
      }
      if (!same_env) continue;
      std::int64_t a = 0, ap = 0;
      for (int k = 0; k < na; ++k) {
        a |= std::int64_t{site_bit(b, sites[k], n)} << (na - 1 - k);
        ap |= std::int64_t{site_bit(bp, sites[k], n)} << (na - 1 - k);
      }
      rho(a, ap) += psi.amplitudes(b) * std::conj(psi.amplitudes(bp));
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("apply_hamiltonian") {
  SUBCASE("single site, mass basis") {
    SystemSpec spec;
    spec.omegas = {1.0};
    spec.mixing_angle = 0.1;
    spec.initial_config = {Flavor::Electron};
    StateVector psi = initial_state(spec);
    const StateVector hpsi =
        apply_hamiltonian(psi, spec, 0.0, Basis::Mass);
    CHECK(std::abs(hpsi.amplitudes(0) - Complex(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(hpsi.amplitudes(1)) < 1e-15);
  }

  SUBCASE("singlet is an eigenstate of the pure exchange term") {
    SystemSpec spec = constant_spec("ee", 1.0);
    spec.omegas = {1e-12, 2e-12};
    StateVector singlet;
    singlet.n_sites = 2;
    singlet.amplitudes.resize(4);
    singlet.amplitudes << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0),
        0.0;
    const StateVector hpsi = apply_hamiltonian(singlet, spec, 0.0);
    CHECK((hpsi.amplitudes + 1.5 * singlet.amplitudes).cwiseAbs().maxCoeff() <
          1e-9);
  }

  SUBCASE("random N=6 state matches the dense matrix-vector product") {
    std::mt19937 rng(101);
    SystemSpec spec = constant_spec("memeem", 2.3);
    const Eigen::MatrixXcd h = dense_hamiltonian(spec, 0.0, Basis::Flavor);
    for (int rep = 0; rep < 5; ++rep) {
      const StateVector psi = random_state(rng, 6);
      const StateVector fast = apply_hamiltonian(psi, spec, 0.0);
      CHECK((fast.amplitudes - h * psi.amplitudes).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  SUBCASE("dimension mismatch rejected") {
    SystemSpec spec = constant_spec("me", 1.0);
    StateVector psi;
    psi.n_sites = 3;
    psi.amplitudes = Eigen::VectorXcd::Ones(8);
    CHECK_THROWS_AS(apply_hamiltonian(psi, spec, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("evolve_exact") {
  SUBCASE("vacuum oscillation follows the closed-form precession") {
    SystemSpec spec;
    spec.omegas = {1.0};
    spec.mixing_angle = 0.1;
    spec.coupling.kind = CouplingKind::Constant;
    spec.coupling.mu0 = 0.0;
    spec.initial_config = {Flavor::Electron};

    EvolutionParams params;
    params.dt = 0.01;
    params.t_final = 50.0;
    const double c2 = std::cos(0.2), s2 = std::sin(0.2);
    double worst = 0.0;
    evolve_exact(initial_state(spec), spec, params, 10,
                 [&](double t, const StateVector& psi) {
                   const double pz =
                       polarization(psi, 0, Basis::Flavor, 0.1)(2);
                   const double expected = c2 * c2 + s2 * s2 * std::cos(t);
                   worst = std::max(worst, std::abs(pz - expected));
                 });
    CHECK(worst < 1e-8);
  }

  SUBCASE("energy conserved under constant coupling") {
    SystemSpec spec = constant_spec("meem", 3.0);
    EvolutionParams params;
    params.dt = 0.01;
    params.t_final = 20.0;
    const StateVector psi0 = initial_state(spec);
    // Kick the product state into a superposition so <H> is generic.
    StateVector psi = psi0;
    psi.amplitudes(3) = 0.4;
    psi.amplitudes(9) = Complex(0.2, -0.3);
    psi.normalize();
    const double e0 = energy(psi, spec, 0.0);
    const StateVector fin = evolve_exact(psi, spec, params);
    const double e1 = energy(fin, spec, 0.0);
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-9);
    CHECK(std::abs(fin.norm() - 1.0) < 1e-10);
  }

  SUBCASE("rk4 cross-check converges at fourth order") {
    SystemSpec spec = constant_spec("me", 1.5);
    EvolutionParams ref;
    ref.dt = 1e-4;
    ref.t_final = 1.0;
    ref.krylov_dim = 24;
    const StateVector exact = evolve_exact(initial_state(spec), spec, ref);

    auto rk4_error = [&](double dt) {
      EvolutionParams params;
      params.dt = dt;
      params.t_final = 1.0;
      params.method = StepMethod::Rk4;
      const StateVector fin = evolve_exact(initial_state(spec), spec, params);
      return (fin.amplitudes - exact.amplitudes).norm();
    };
    const double e1 = rk4_error(0.02);
    const double e2 = rk4_error(0.01);
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
  }

  SUBCASE("dense exponential stepper agrees with krylov") {
    SystemSpec spec = constant_spec("mee", 2.0);
    EvolutionParams k, d;
    k.dt = d.dt = 0.02;
    k.t_final = d.t_final = 5.0;
    d.method = StepMethod::MatrixExponential;
    const StateVector a = evolve_exact(initial_state(spec), spec, k);
    const StateVector b = evolve_exact(initial_state(spec), spec, d);
    CHECK((a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("time reversal returns the initial state") {
    SystemSpec spec = constant_spec("meme", 2.0);
    EvolutionParams params;
    params.dt = 0.01;
    params.t_final = 10.0;
    const StateVector psi0 = initial_state(spec);
    StateVector fwd = evolve_exact(psi0, spec, params);
    // Backward leg stepped directly with the Krylov propagator.
    KrylovPropagator krylov(params.krylov_dim, params.krylov_tol);
    Eigen::VectorXcd work(fwd.dim());
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      apply_hamiltonian(spec, Basis::Flavor, 0.0, in, out);
    };
    for (int step = 0; step < 1000; ++step) {
      krylov.propagate(apply, -0.01, fwd.amplitudes);
    }
    const double fidelity = std::norm(psi0.amplitudes.dot(fwd.amplitudes));
    CHECK(fidelity >= 1.0 - 1e-8);
  }

  SUBCASE("mass-basis total J_z expectation is conserved") {
    SystemSpec spec = constant_spec("mmee", 4.0);
    spec.coupling.kind = CouplingKind::PowerDecay;
    spec.coupling.radius = 20.0;
    spec.coupling.exponent = 3.0;
    EvolutionParams params;
    params.dt = 0.01;
    params.t_final = 15.0;
    std::vector<double> jz_trace;
    evolve_exact(initial_state(spec), spec, params, 50,
                 [&](double, const StateVector& psi) {
                   double jz = 0.0;
                   for (int i = 0; i < psi.n_sites; ++i) {
                     jz += 0.5 * polarization(psi, i, Basis::Mass,
                                              spec.mixing_angle)(2);
                   }
                   jz_trace.push_back(jz);
                 });
    for (double v : jz_trace) {
      CHECK(std::abs(v - jz_trace.front()) < 1e-8);
    }
  }

  SUBCASE("norm drift stays below 1e-10") {
    SystemSpec spec = constant_spec("mmeeme", 5.0);
    EvolutionParams params;
    params.dt = 0.01;
    params.t_final = 10.0;
    double worst = 0.0;
    evolve_exact(initial_state(spec), spec, params, 20,
                 [&](double, const StateVector& psi) {
                   worst = std::max(worst, std::abs(psi.norm() - 1.0));
                 });
    CHECK(worst < 1e-10);
  }

  SUBCASE("capacity and validation guards") {
    SystemSpec spec = SystemSpec::linear_grid(
        std::vector<Flavor>(15, Flavor::Electron));
    spec.coupling.kind = CouplingKind::Constant;
    EvolutionParams params;
    params.t_final = 1.0;
    CHECK_THROWS_AS(
        evolve_exact(StateVector{Eigen::VectorXcd::Ones(1 << 15), 15}, spec,
                     params),
        CapacityError);
    EvolutionParams bad;
    bad.dt = -1.0;
    bad.t_final = 1.0;
    CHECK(!bad.validation_errors().empty());
    bad.dt = 0.01;
    bad.krylov_dim = 2;
    CHECK(!bad.validation_errors().empty());
  }
}

TEST_CASE("reduced density matrices") {
  SUBCASE("product state gives a rank-1 projector") {
    SystemSpec spec = constant_spec("mem", 1.0);
    const StateVector psi = initial_state(spec);
    const Eigen::MatrixXcd rho = reduced_density_matrix(psi, {1});
    CHECK(std::real(rho(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(rho(1, 1)) < 1e-15);
  }

  SUBCASE("bell pair traces to the maximally mixed site") {
    StateVector bell;
    bell.n_sites = 2;
    bell.amplitudes.resize(4);
    bell.amplitudes << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    const Eigen::MatrixXcd rho = reduced_density_matrix(bell, {0});
    CHECK(std::real(rho(0, 0)) == doctest::Approx(0.5));
    CHECK(std::real(rho(1, 1)) == doctest::Approx(0.5));
    CHECK(std::abs(rho(0, 1)) < 1e-15);
  }

  SUBCASE("random 4-site state vs naive index-summation oracle") {
    std::mt19937 rng(333);
    for (int rep = 0; rep < 5; ++rep) {
      const StateVector psi = random_state(rng, 4);
      const std::vector<int> part = {1, 3};
      const Eigen::MatrixXcd fast = reduced_density_matrix(psi, part);
      const Eigen::MatrixXcd slow = naive_rdm(psi, part);
      CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-13);
      // Hermitian, unit trace, PSD.
      CHECK((fast - fast.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(std::abs(fast.trace().real() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fast);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
  }

  SUBCASE("invalid partitions rejected") {
    std::mt19937 rng(1);
    const StateVector psi = random_state(rng, 3);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {0, 1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {3}), std::invalid_argument);
  }

  SUBCASE("schmidt spectrum matches single-site RDM eigenvalues at the edge") {
    std::mt19937 rng(77);
    const StateVector psi = random_state(rng, 5);
    const auto cut_spec = schmidt_spectrum_at_cut(psi, 1);
    const auto site_spec = single_site_spectrum(psi, 0);
    CHECK(std::abs(cut_spec[0] - site_spec[0]) < 1e-12);
    CHECK(std::abs(cut_spec[1] - site_spec[1]) < 1e-12);
  }
}
