#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nures/errors.hpp"
#include "nures/resources.hpp"

using namespace nures;

namespace {

// Literal Eq.-style oracle: four nested loops, XOR indices, square roots
// taken term by term. Kept deliberately naive.
double brute_force_nl_sre2(const std::vector<double>& lambda) {
  const int r = static_cast<int>(lambda.size());
  double sum = 0.0;
  for (int i1 = 0; i1 < r; ++i1) {
    for (int i2 = 0; i2 < r; ++i2) {
      for (int i3 = 0; i3 < r; ++i3) {
        for (int i4 = 0; i4 < r; ++i4) {
          sum += std::sqrt(lambda[i1] * lambda[i2] * lambda[i3] *
                           lambda[i4]) *
                 std::sqrt(lambda[i1 ^ i2 ^ i3] * lambda[i1 ^ i2 ^ i4]) *
                 std::sqrt(lambda[i1 ^ i3 ^ i4] * lambda[i2 ^ i3 ^ i4]);
        }
      }
    }
  }
  return -std::log(sum);
}

std::vector<double> random_spectrum(std::mt19937& rng, int r) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(static_cast<std::size_t>(r));
  double sum = 0.0;
  for (double& x : v) {
    x = ex(rng);
    sum += x;
  }
  for (double& x : v) x /= sum;
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

constexpr double kLambdaStar = 0.85355339059327376220;  // (2 + sqrt 2)/4
constexpr double kLn43 = 0.28768207245178093;
constexpr double kLn2 = 0.69314718055994531;

}  // namespace

TEST_CASE("spectrum construction") {
  const auto s = EntanglementSpectrum::from_values({0.25, 0.75});
  CHECK(s.values[0] == 0.75);  // sorted descending
  CHECK(s.r() == 2);

  const auto padded = EntanglementSpectrum::from_values({1.0}, 4);
  CHECK(padded.r() == 4);
  CHECK(padded.values[3] == 0.0);

  CHECK_THROWS_AS(EntanglementSpectrum::from_values({0.6, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EntanglementSpectrum::from_values({1.2, -0.2}),
                  std::invalid_argument);
  // Tiny negative eigenvalues from float noise are clamped.
  const auto clamped = EntanglementSpectrum::from_values({1.0, -1e-14});
  CHECK(clamped.values[1] == 0.0);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(EntanglementSpectrum::from_values({1.0, 0.0})) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(von_neumann_entropy(EntanglementSpectrum::from_values({0.5, 0.5})) ==
        doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(von_neumann_entropy(
            EntanglementSpectrum::from_values({0.75, 0.25})) ==
        doctest::Approx(0.56233514461880835).epsilon(1e-12));
}

TEST_CASE("nl_sre2") {
  SUBCASE("flat and pure spectra carry no non-local magic") {
    CHECK(std::abs(nl_sre2(EntanglementSpectrum::from_values({0.5, 0.5}))) <
          1e-14);
    CHECK(std::abs(nl_sre2(EntanglementSpectrum::from_values({1.0, 0.0}))) <
          1e-14);
  }

  SUBCASE("closed-form maximum of the r=2 family") {
    const auto s =
        EntanglementSpectrum::from_values({kLambdaStar, 1.0 - kLambdaStar});
    CHECK(nl_sre2(s) == doctest::Approx(kLn43).epsilon(1e-12));
  }

  SUBCASE("r=2 closed form matches the generic sum to 1e-13") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 10000; ++rep) {
      const auto v = random_spectrum(rng, 2);
      const auto s = EntanglementSpectrum::from_values(v);
      CHECK(std::abs(nl_sre2(s) - brute_force_nl_sre2(v)) < 1e-13);
    }
  }

  SUBCASE("generic path matches the literal quadruple loop at r=4") {
    std::mt19937 rng(19);
    for (int rep = 0; rep < 50; ++rep) {
      const auto v = random_spectrum(rng, 4);
      const auto s = EntanglementSpectrum::from_values(v);
      CHECK(std::abs(nl_sre2(s) - brute_force_nl_sre2(v)) < 1e-13);
    }
  }

  SUBCASE("nonnegative, zero exactly on flat XOR-closed support") {
    std::mt19937 rng(29);
    for (int r : {2, 4, 8}) {
      for (int rep = 0; rep < 200; ++rep) {
        const auto s =
            EntanglementSpectrum::from_values(random_spectrum(rng, r));
        CHECK(nl_sre2(s) > -1e-13);
      }
      // Flat on a power-of-two support, padded into r.
      for (int support = 1; support <= r; support *= 2) {
        std::vector<double> flat(static_cast<std::size_t>(support),
                                 1.0 / support);
        const auto s = EntanglementSpectrum::from_values(flat, r);
        CHECK(std::abs(nl_sre2(s)) < 1e-12);
      }
      // A decisively non-flat spectrum is strictly positive.
      std::vector<double> tilted(static_cast<std::size_t>(r), 0.0);
      tilted[0] = 0.7;
      for (int k = 1; k < r; ++k) tilted[k] = 0.3 / (r - 1);
      CHECK(nl_sre2(EntanglementSpectrum::from_values(tilted)) > 1e-3);
    }
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(
        nl_sre2(EntanglementSpectrum::from_values({0.5, 0.3, 0.2}, 3)),
        std::invalid_argument);
    std::vector<double> big(128, 1.0 / 128.0);
    CHECK_THROWS_AS(nl_sre2(EntanglementSpectrum::from_values(big)),
                    CapacityError);
    EntanglementSpectrum out_of_order{{0.25, 0.75}};  // bypass from_values
    CHECK_THROWS_AS(nl_sre2(out_of_order), std::invalid_argument);
  }
}

TEST_CASE("antiflatness") {
  CHECK(std::abs(antiflatness(EntanglementSpectrum::from_values(
            {0.5, 0.5}))) < 1e-15);
  CHECK(std::abs(antiflatness(EntanglementSpectrum::from_values(
            {1.0, 0.0}))) < 1e-15);
  // lambda0 lambda1 = 1/8 at the magic-maximizing point gives F = 1/16.
  const auto s =
      EntanglementSpectrum::from_values({kLambdaStar, 1.0 - kLambdaStar});
  CHECK(antiflatness(s) == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
}

TEST_CASE("bound chain") {
  SUBCASE("flat spectrum collapses the chain to zero") {
    const auto b = check_bounds(EntanglementSpectrum::from_values({0.5, 0.5}));
    CHECK(std::abs(b.f_over_8) < 1e-15);
    CHECK(std::abs(b.four_f) < 1e-15);
    CHECK(std::abs(b.m2) < 1e-14);
    CHECK(b.lower_holds);
  }

  SUBCASE("magic-maximizing spectrum") {
    const auto b = check_bounds(
        EntanglementSpectrum::from_values({kLambdaStar, 1.0 - kLambdaStar}));
    CHECK(b.f_over_8 == doctest::Approx(1.0 / 128.0).epsilon(1e-12));
    CHECK(b.four_f == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(b.m2 == doctest::Approx(kLn43).epsilon(1e-12));
    CHECK(b.lower_holds);
  }

  SUBCASE("lower bound holds on random r=2 and r=4 spectra") {
    std::mt19937 rng(31);
    int tighter_violations = 0;
    for (int rep = 0; rep < 10000; ++rep) {
      const auto b =
          check_bounds(EntanglementSpectrum::from_values(random_spectrum(rng, 2)));
      CHECK(b.lower_holds);
      if (!b.tighter_holds) ++tighter_violations;
    }
    for (int rep = 0; rep < 2000; ++rep) {
      const auto b =
          check_bounds(EntanglementSpectrum::from_values(random_spectrum(rng, 4)));
      CHECK(b.lower_holds);
    }
    // 4F is only a candidate bound; violations are reported, not asserted.
    MESSAGE("4F <= M2 violations on r=2 sample: ", tighter_violations);
  }
}

TEST_CASE("constraint arc") {
  SUBCASE("endpoints") {
    const ArcPoint flat = arc_curve(0.5);
    CHECK(std::abs(flat.nl_sre2) < 1e-14);
    CHECK(flat.entropy == doctest::Approx(kLn2).epsilon(1e-13));
    const ArcPoint pure = arc_curve(1.0);
    CHECK(std::abs(pure.nl_sre2) < 1e-14);
    CHECK(std::abs(pure.entropy) < 1e-14);
  }

  SUBCASE("interior point frozen from the independent evaluation") {
    const ArcPoint p = arc_curve(kLambdaStar);
    CHECK(p.nl_sre2 == doctest::Approx(kLn43).epsilon(1e-12));
    CHECK(p.entropy == doctest::Approx(0.41649553069968745).epsilon(1e-12));
  }

  SUBCASE("golden-section search finds the magic maximum") {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.5, b = 1.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int it = 0; it < 200; ++it) {
      if (arc_curve(c).nl_sre2 > arc_curve(d).nl_sre2) {
        b = d;
      } else {
        a = c;
      }
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    const double argmax = 0.5 * (a + b);
    CHECK(std::abs(argmax - kLambdaStar) < 1e-8);
    CHECK(arc_curve(argmax).nl_sre2 ==
          doctest::Approx(kLn43).epsilon(1e-10));
  }

  SUBCASE("entropy is maximized at the flat end") {
    for (double l0 = 0.5001; l0 < 1.0; l0 += 0.0101) {
      CHECK(arc_curve(l0).entropy < kLn2);
    }
  }

  SUBCASE("domain guard") {
    CHECK_THROWS_AS(arc_curve(0.4), std::invalid_argument);
    CHECK_THROWS_AS(arc_curve(1.1), std::invalid_argument);
  }
}

TEST_CASE("phase region") {
  CHECK(phase_region(0.1) == PhaseRegion::LowEntanglement);
  CHECK(phase_region(0.6) == PhaseRegion::HighEntanglement);
  CHECK(phase_region(0.4) == PhaseRegion::HighEntanglement);  // tie goes up
  CHECK_THROWS_AS(phase_region(-0.1), std::invalid_argument);
}
