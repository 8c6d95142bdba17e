#include "nures/resources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nures/errors.hpp"

namespace nures {

namespace {

bool is_power_of_two(int r) { return r > 0 && (r & (r - 1)) == 0; }

double quadruple_xor_sum(const std::vector<double>& lambda) {
  const int r = static_cast<int>(lambda.size());
  std::vector<double> s(lambda.size());
  for (int i = 0; i < r; ++i) s[i] = std::sqrt(lambda[i]);

  double total = 0.0;
  for (int i1 = 0; i1 < r; ++i1) {
    if (s[i1] == 0.0) continue;
    for (int i2 = 0; i2 < r; ++i2) {
      const double s12 = s[i1] * s[i2];
      if (s12 == 0.0) continue;
      for (int i3 = 0; i3 < r; ++i3) {
        const double s123 = s12 * s[i3] * s[i1 ^ i2 ^ i3];
        if (s123 == 0.0) continue;
        double inner = 0.0;
        for (int i4 = 0; i4 < r; ++i4) {
          inner += s[i4] * s[i1 ^ i2 ^ i4] * s[i1 ^ i3 ^ i4] *
                   s[i2 ^ i3 ^ i4];
        }
        total += s123 * inner;
      }
    }
  }
  return total;
}

}  // namespace

EntanglementSpectrum EntanglementSpectrum::from_values(std::vector<double> v,
                                                       int r_declared) {
  if (v.empty()) {
    throw std::invalid_argument("EntanglementSpectrum: empty value list");
  }
  double sum = 0.0;
  for (double& x : v) {
    if (x < 0.0) {
      if (x < -1e-12) {
        throw std::invalid_argument(
            "EntanglementSpectrum: negative weight " + std::to_string(x));
      }
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    throw std::invalid_argument(
        "EntanglementSpectrum: weights sum to " + std::to_string(sum) +
        ", expected 1");
  }
  std::sort(v.begin(), v.end(), std::greater<double>());
  if (r_declared > static_cast<int>(v.size())) {
    v.resize(static_cast<std::size_t>(r_declared), 0.0);
  }
  return EntanglementSpectrum{std::move(v)};
}

double von_neumann_entropy(const EntanglementSpectrum& spec) {
  double s = 0.0;
  for (double l : spec.values) {
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double nl_sre2(const EntanglementSpectrum& spec) {
  const int r = spec.r();
  if (!is_power_of_two(r)) {
    throw std::invalid_argument(
        "nl_sre2: spectrum dimension must be a power of two, got " +
        std::to_string(r));
  }
  for (int i = 0; i + 1 < r; ++i) {
    if (spec.values[i] < spec.values[i + 1]) {
      throw std::invalid_argument("nl_sre2: spectrum must be descending");
    }
  }
  if (r == 1) return 0.0;
  if (r == 2) {
    const double l0 = spec.values[0], l1 = spec.values[1];
    const double arg =
        l0 * l0 * l0 * l0 + l1 * l1 * l1 * l1 + 14.0 * l0 * l0 * l1 * l1;
    return -std::log(arg);
  }
  if (r > 64) {
    throw CapacityError("nl_sre2: generic O(r^4) sum is guarded at r <= 64 "
                        "(got r = " + std::to_string(r) + ")");
  }
  return -std::log(quadruple_xor_sum(spec.values));
}

double antiflatness(const EntanglementSpectrum& spec) {
  double p2 = 0.0, p3 = 0.0;
  for (double l : spec.values) {
    p2 += l * l;
    p3 += l * l * l;
  }
  return p3 - p2 * p2;
}

BoundCheck check_bounds(const EntanglementSpectrum& spec) {
  BoundCheck out;
  const double f = antiflatness(spec);
  out.f_over_8 = f / 8.0;
  out.four_f = 4.0 * f;
  out.m2 = nl_sre2(spec);
  // Tolerance absorbs float noise at the flat/pure equality points.
  out.lower_holds = out.f_over_8 <= out.m2 + 1e-12;
  out.tighter_holds = out.four_f <= out.m2 + 1e-12;
  return out;
}

ArcPoint arc_curve(double lambda0) {
  if (!(lambda0 >= 0.5 && lambda0 <= 1.0)) {
    throw std::invalid_argument("arc_curve: lambda0 must lie in [1/2, 1]");
  }
  const double l1 = 1.0 - lambda0;
  ArcPoint p;
  const double arg = lambda0 * lambda0 * lambda0 * lambda0 +
                     l1 * l1 * l1 * l1 +
                     14.0 * lambda0 * lambda0 * l1 * l1;
  p.nl_sre2 = -std::log(arg);
  p.entropy = 0.0;
  if (lambda0 > 0.0) p.entropy -= lambda0 * std::log(lambda0);
  if (l1 > 0.0) p.entropy -= l1 * std::log(l1);
  return p;
}

PhaseRegion phase_region(double entropy, double threshold) {
  if (entropy < 0.0) {
    throw std::invalid_argument("phase_region: entropy must be >= 0");
  }
  return entropy >= threshold ? PhaseRegion::HighEntanglement
                              : PhaseRegion::LowEntanglement;
}

}  // namespace nures
