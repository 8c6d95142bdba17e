#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace nures {

/// Dense complex amplitude vector of length 2^N in the flavor basis.
///
/// Basis-ordering contract: computational index b = sum_i b_i 2^(N-1-i),
/// i.e. site 0 is the most significant bit.
struct StateVector {
  Eigen::VectorXcd amplitudes;
  int n_sites = 0;

  std::int64_t dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }
  void normalize() { amplitudes /= amplitudes.norm(); }
};

/// Bit of basis index b belonging to site `site` under the MSB-first contract.
inline int site_bit(std::int64_t b, int site, int n_sites) {
  return static_cast<int>((b >> (n_sites - 1 - site)) & 1);
}

inline std::int64_t site_mask(int site, int n_sites) {
  return std::int64_t{1} << (n_sites - 1 - site);
}

}  // namespace nures
