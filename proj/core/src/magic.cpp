#include "nures/magic.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "nures/errors.hpp"
#include "nures/pauli.hpp"

namespace nures {

namespace {

constexpr std::int64_t kChunkStrings = 4096;

/// Digits of the reflected base-4 Gray code of k, digit i for site i
/// (site 0 = most significant digit).
void gray_digits(std::int64_t k, int n, int* out) {
  int prev = 0;  // digit above the current one in significance
  for (int i = 0; i < n; ++i) {
    const int shift = 2 * (n - 1 - i);
    const int d = static_cast<int>((k >> shift) & 3);
    out[i] = (d - prev) & 3;
    prev = d;
  }
}

/// In-place application of a one-site 2x2 operator.
void apply_one_site(Eigen::VectorXcd& v, int site, int n, const Matrix2& m) {
  const std::int64_t mask = std::int64_t{1} << (n - 1 - site);
  const std::int64_t dim = v.size();
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & mask) continue;
    const std::int64_t b1 = b | mask;
    const Complex x0 = v(b), x1 = v(b1);
    v(b) = m(0, 0) * x0 + m(0, 1) * x1;
    v(b1) = m(1, 0) * x0 + m(1, 1) * x1;
  }
}

/// Sum of |<psi|P|psi>|^(2 alpha) over the Gray-code positions
/// [k_begin, k_end).
double chunk_sum(const StateVector& psi, double alpha, std::int64_t k_begin,
                 std::int64_t k_end) {
  const int n = psi.n_sites;
  int letters[32];
  gray_digits(k_begin, n, letters);

  Eigen::VectorXcd phi = psi.amplitudes;
  for (int i = 0; i < n; ++i) {
    if (letters[i] != 0) apply_one_site(phi, i, n, pauli::by_index(letters[i]));
  }

  const bool alpha_is_two = alpha == 2.0;
  int next[32];
  double sum = 0.0;
  for (std::int64_t k = k_begin; k < k_end; ++k) {
    if (k > k_begin) {
      gray_digits(k, n, next);
      for (int i = 0; i < n; ++i) {
        if (next[i] == letters[i]) continue;
        // One digit changes per Gray step; the update factor is the 2x2
        // product sigma_new * sigma_old (sigma_old is self-inverse).
        const Matrix2 factor =
            pauli::by_index(next[i]) * pauli::by_index(letters[i]);
        apply_one_site(phi, i, n, factor);
        letters[i] = next[i];
      }
    }
    const Complex expectation = psi.amplitudes.dot(phi);
    const double p = std::norm(expectation);
    sum += alpha_is_two ? p * p : std::pow(p, alpha);
  }
  return sum;
}

double pairwise_reduce(const std::vector<double>& parts, std::size_t lo,
                       std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_reduce(parts, lo, mid) + pairwise_reduce(parts, mid, hi);
}

}  // namespace

double full_sre(const StateVector& psi, double alpha, int n_threads) {
  const int n = psi.n_sites;
  if (n > 10) {
    throw CapacityError("full_sre: N = " + std::to_string(n) +
                        " exceeds the N <= 10 Pauli-enumeration guard");
  }
  if (alpha == 1.0) {
    throw std::invalid_argument("full_sre: alpha = 1 is not implemented");
  }
  if (psi.amplitudes.size() != (std::int64_t{1} << n)) {
    throw std::invalid_argument("full_sre: state dimension mismatch");
  }

  const std::int64_t total = std::int64_t{1} << (2 * n);
  const std::int64_t n_chunks = (total + kChunkStrings - 1) / kChunkStrings;
  std::vector<double> parts(static_cast<std::size_t>(n_chunks), 0.0);

  auto work_range = [&](std::int64_t chunk) {
    const std::int64_t k0 = chunk * kChunkStrings;
    const std::int64_t k1 = std::min(total, k0 + kChunkStrings);
    parts[static_cast<std::size_t>(chunk)] = chunk_sum(psi, alpha, k0, k1);
  };

  const int workers =
      std::max(1, std::min<int>(n_threads, static_cast<int>(n_chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) work_range(c);
  } else {
    std::atomic<std::int64_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::int64_t c = cursor.fetch_add(1);
          if (c >= n_chunks) return;
          work_range(c);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  const double sum = pairwise_reduce(parts, 0, parts.size());
  const double dim = static_cast<double>(std::int64_t{1} << n);
  return std::log(sum / dim) / (1.0 - alpha);
}

void apply_clifford(StateVector& psi, CliffordGate gate, int site,
                    int second_site) {
  const int n = psi.n_sites;
  auto check_site = [&](int s) {
    if (s < 0 || s >= n) {
      throw std::invalid_argument("apply_clifford: invalid site index " +
                                  std::to_string(s));
    }
  };
  check_site(site);
  const std::int64_t dim = psi.dim();

  switch (gate) {
    case CliffordGate::H: {
      const std::int64_t mask = site_mask(site, n);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (std::int64_t b = 0; b < dim; ++b) {
        if (b & mask) continue;
        const std::int64_t b1 = b | mask;
        const Complex x0 = psi.amplitudes(b), x1 = psi.amplitudes(b1);
        psi.amplitudes(b) = inv_sqrt2 * (x0 + x1);
        psi.amplitudes(b1) = inv_sqrt2 * (x0 - x1);
      }
      break;
    }
    case CliffordGate::S: {
      const std::int64_t mask = site_mask(site, n);
      const Complex phase(0.0, 1.0);
      for (std::int64_t b = 0; b < dim; ++b) {
        if (b & mask) psi.amplitudes(b) *= phase;
      }
      break;
    }
    case CliffordGate::Cnot: {
      check_site(second_site);
      if (second_site == site) {
        throw std::invalid_argument(
            "apply_clifford: CNOT control and target must differ");
      }
      const std::int64_t cmask = site_mask(site, n);
      const std::int64_t tmask = site_mask(second_site, n);
      for (std::int64_t b = 0; b < dim; ++b) {
        if ((b & cmask) && !(b & tmask)) {
          std::swap(psi.amplitudes(b), psi.amplitudes(b | tmask));
        }
      }
      break;
    }
  }
}

}  // namespace nures
