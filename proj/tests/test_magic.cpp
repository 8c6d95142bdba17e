#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nures/errors.hpp"
#include "nures/magic.hpp"
#include "nures/model.hpp"
#include "nures/pauli.hpp"

using namespace nures;

namespace {

StateVector zero_state(int n) {
  StateVector psi;
  psi.n_sites = n;
  psi.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
  psi.amplitudes(0) = 1.0;
  return psi;
}

StateVector t_state() {
  StateVector psi;
  psi.n_sites = 1;
  psi.amplitudes.resize(2);
  psi.amplitudes << 1.0 / std::sqrt(2.0),
      std::exp(Complex(0.0, std::numbers::pi / 4.0)) / std::sqrt(2.0);
  return psi;
}

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

void apply_random_clifford_word(StateVector& psi, std::mt19937& rng,
                                int length) {
  std::uniform_int_distribution<int> gate(0, 2);
  std::uniform_int_distribution<int> site(0, psi.n_sites - 1);
  for (int k = 0; k < length; ++k) {
    switch (gate(rng)) {
      case 0:
        apply_clifford(psi, CliffordGate::H, site(rng));
        break;
      case 1:
        apply_clifford(psi, CliffordGate::S, site(rng));
        break;
      default: {
        if (psi.n_sites < 2) {
          apply_clifford(psi, CliffordGate::H, 0);
          break;
        }
        int c = site(rng), t = site(rng);
        while (t == c) t = site(rng);
        apply_clifford(psi, CliffordGate::Cnot, c, t);
        break;
      }
    }
  }
}

// Direct (non-Gray-code) SRE oracle: enumerate Pauli strings index by
// index and apply each from scratch.
double naive_sre2(const StateVector& psi) {
  const int n = psi.n_sites;
  const std::int64_t strings = std::int64_t{1} << (2 * n);
  double sum = 0.0;
  for (std::int64_t code = 0; code < strings; ++code) {
    Eigen::VectorXcd phi = psi.amplitudes;
    for (int i = 0; i < n; ++i) {
      const int letter = static_cast<int>((code >> (2 * i)) & 3);
      if (letter == 0) continue;
      const Matrix2& m = pauli::by_index(letter);
      const std::int64_t mask = std::int64_t{1} << (n - 1 - i);
      for (std::int64_t b = 0; b < phi.size(); ++b) {
        if (b & mask) continue;
        const Complex x0 = phi(b), x1 = phi(b | mask);
        phi(b) = m(0, 0) * x0 + m(0, 1) * x1;
        phi(b | mask) = m(1, 0) * x0 + m(1, 1) * x1;
      }
    }
    const double p = std::norm(psi.amplitudes.dot(phi));
    sum += p * p;
  }
  return -std::log(sum / static_cast<double>(std::int64_t{1} << n));
}

}  // namespace

TEST_CASE("clifford gates") {
  SUBCASE("H on |0>") {
    StateVector psi = zero_state(1);
    apply_clifford(psi, CliffordGate::H, 0);
    CHECK(std::abs(psi.amplitudes(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(psi.amplitudes(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("CNOT on |10>") {
    StateVector psi = zero_state(2);
    psi.amplitudes(0) = 0.0;
    psi.amplitudes(2) = 1.0;  // |10>, site 0 is the MSB
    apply_clifford(psi, CliffordGate::Cnot, 0, 1);
    CHECK(std::norm(psi.amplitudes(3)) == doctest::Approx(1.0));
  }
  SUBCASE("S phases the |1> component") {
    StateVector psi = zero_state(1);
    apply_clifford(psi, CliffordGate::H, 0);
    apply_clifford(psi, CliffordGate::S, 0);
    CHECK(std::abs(psi.amplitudes(1) - Complex(0.0, 1.0) / std::sqrt(2.0)) <
          1e-15);
  }
  SUBCASE("invalid sites rejected") {
    StateVector psi = zero_state(2);
    CHECK_THROWS_AS(apply_clifford(psi, CliffordGate::H, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_clifford(psi, CliffordGate::Cnot, 0, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("full stabilizer Renyi entropy") {
  SUBCASE("computational basis state has zero magic") {
    CHECK(std::abs(full_sre(zero_state(3), 2.0)) < 1e-12);
  }

  SUBCASE("single-qubit T state reaches ln(4/3)") {
    CHECK(full_sre(t_state(), 2.0) ==
          doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
  }

  SUBCASE("additive under tensor products") {
    StateVector t1 = t_state();
    StateVector tt;
    tt.n_sites = 2;
    tt.amplitudes.resize(4);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        tt.amplitudes(2 * a + b) = t1.amplitudes(a) * t1.amplitudes(b);
      }
    }
    CHECK(full_sre(tt, 2.0) ==
          doctest::Approx(2.0 * std::log(4.0 / 3.0)).epsilon(1e-11));
  }

  SUBCASE("vanishes on random stabilizer states") {
    std::mt19937 rng(2024);
    for (int rep = 0; rep < 10; ++rep) {
      StateVector psi = zero_state(4);
      apply_random_clifford_word(psi, rng, 40);
      CHECK(std::abs(full_sre(psi, 2.0)) < 1e-10);
    }
  }

  SUBCASE("invariant under Clifford words") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 5; ++rep) {
      StateVector psi = random_state(rng, 3);
      const double before = full_sre(psi, 2.0);
      apply_random_clifford_word(psi, rng, 30);
      CHECK(std::abs(full_sre(psi, 2.0) - before) < 1e-10);
    }
  }

  SUBCASE("gray-code enumeration matches the from-scratch oracle") {
    std::mt19937 rng(55);
    for (int n : {1, 2, 3}) {
      const StateVector psi = random_state(rng, n);
      CHECK(std::abs(full_sre(psi, 2.0) - naive_sre2(psi)) < 1e-12);
    }
  }

  SUBCASE("deterministic across worker counts") {
    std::mt19937 rng(7);
    const StateVector psi = random_state(rng, 5);
    const double one = full_sre(psi, 2.0, 1);
    const double four = full_sre(psi, 2.0, 4);
    CHECK(one == four);  // bitwise, by the fixed-order reduction contract
  }

  SUBCASE("generic alpha path") {
    const double m_half = full_sre(t_state(), 0.5);
    CHECK(m_half > 0.0);
    // alpha = 3 for the T state: sum_P |<P>|^6 / 2 = (1 + 2/8) / 2.
    const double expected = -0.5 * std::log((1.0 + 0.25) / 2.0);
    CHECK(full_sre(t_state(), 3.0) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(full_sre(zero_state(1), 1.0), std::invalid_argument);
    StateVector big;
    big.n_sites = 11;
    big.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << 11);
    big.amplitudes(0) = 1.0;
    CHECK_THROWS_AS(full_sre(big, 2.0), CapacityError);
  }
}
