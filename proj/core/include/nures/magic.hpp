#pragma once

#include <vector>

#include "nures/state_vector.hpp"

namespace nures {

/// Stabilizer Renyi entropy M_alpha of a pure state:
///   M_alpha = 1/(1-alpha) * log( sum_P |<psi|P|psi>|^(2 alpha) / 2^N )
/// over all 4^N Pauli strings.
///
/// Strings are enumerated in reflected base-4 Gray-code order so that each
/// step updates P|psi> with a single one-site Pauli factor (cost 2^N per
/// string). Partial sums are accumulated over fixed-size string chunks and
/// combined by a fixed-order pairwise reduction, so the result is bitwise
/// identical for any worker count.
///
/// Guards: N <= 10 (4^N enumeration), alpha != 1.
double full_sre(const StateVector& psi, double alpha, int n_threads = 1);

enum class CliffordGate { H, S, Cnot };

/// Exact application of a Clifford generator. `site` is the target for H/S
/// and the control for CNOT; `second_site` is the CNOT target.
void apply_clifford(StateVector& psi, CliffordGate gate, int site,
                    int second_site = -1);

}  // namespace nures
