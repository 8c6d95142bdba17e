#pragma once

#include <vector>

namespace nures {

/// Entanglement spectrum of a bipartition: descending nonnegative values
/// summing to 1, zero-padded to the declared dimension r = 2^|A|.
struct EntanglementSpectrum {
  std::vector<double> values;

  int r() const { return static_cast<int>(values.size()); }

  /// Sorts descending, clamps tiny negative eigenvalues (>= -1e-12) to
  /// zero, pads with exact zeros to `r_declared` (if larger than the input),
  /// and validates normalization to 1e-8.
  static EntanglementSpectrum from_values(std::vector<double> v,
                                          int r_declared = 0);
};

/// Von Neumann entropy -sum l_i ln l_i, natural log, 0 ln 0 := 0.
double von_neumann_entropy(const EntanglementSpectrum& spec);

/// Non-local stabilizer Renyi entropy NL-SRE2 from the entanglement
/// spectrum: -log of the XOR-indexed quadruple sum over i1..i4 in [0, r).
/// r must be a power of two and the spectrum descending. The r = 2 family
/// uses the closed form -ln(l0^4 + l1^4 + 14 l0^2 l1^2); the generic
/// O(r^4) sum is guarded at r <= 64.
double nl_sre2(const EntanglementSpectrum& spec);

/// Antiflatness F = Tr rho_A^3 - (Tr rho_A^2)^2 = sum l^3 - (sum l^2)^2.
double antiflatness(const EntanglementSpectrum& spec);

/// The bound chain F/8 <= M2_NL <= M2({l}) of the non-local magic, plus
/// the tighter (not always valid) candidate 4F. `lower_holds` asserts the
/// proven F/8 bound; `tighter_holds` reports whether 4F <= M2({l}) at this
/// spectrum (logged, never asserted).
struct BoundCheck {
  double f_over_8 = 0.0;
  double four_f = 0.0;
  double m2 = 0.0;
  bool lower_holds = false;
  bool tighter_holds = false;
};
BoundCheck check_bounds(const EntanglementSpectrum& spec);

/// Parametric constraint arc of the single-mode (r = 2) family:
/// (NL-SRE2(l0), S(l0)) for l0 in [1/2, 1].
struct ArcPoint {
  double nl_sre2 = 0.0;
  double entropy = 0.0;
};
ArcPoint arc_curve(double lambda0);

enum class PhaseRegion { LowEntanglement, HighEntanglement };

/// Regime classification at the S threshold (default 0.4 nats); the
/// boundary value is assigned upward (high).
PhaseRegion phase_region(double entropy, double threshold = 0.4);

}  // namespace nures
