#include "nures/exact_engine.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "nures/errors.hpp"
#include "nures/krylov.hpp"

namespace nures {

namespace {

using RowMatrixXcd =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void apply_terms(const HamiltonianTerms& terms, int n,
                 const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
  const std::int64_t dim = std::int64_t{1} << n;
  if (y.size() != dim) y.resize(dim);
  y.setZero();

  for (int i = 0; i < n; ++i) {
    const Matrix2& h = terms.one_body[i];
    const std::int64_t mask = std::int64_t{1} << (n - 1 - i);
    for (std::int64_t b = 0; b < dim; ++b) {
      if (b & mask) continue;
      const std::int64_t b1 = b | mask;
      const Complex x0 = x(b), x1 = x(b1);
      y(b) += h(0, 0) * x0 + h(0, 1) * x1;
      y(b1) += h(1, 0) * x0 + h(1, 1) * x1;
    }
  }

  const double g = terms.pair_coupling;
  if (g == 0.0 || n < 2) return;

  // sigma_i . sigma_j = 2 SWAP_ij - I: diagonal part counts equal/unequal
  // bit pairs, off-diagonal part sums amplitudes with one up and one down
  // bit exchanged.
  const int n_pairs = n * (n - 1) / 2;
  std::int64_t ones[64], zeros[64];
  for (std::int64_t b = 0; b < dim; ++b) {
    int k = 0, q = 0;
    for (int i = 0; i < n; ++i) {
      const std::int64_t mask = std::int64_t{1} << (n - 1 - i);
      if (b & mask) ones[k++] = mask;
      else zeros[q++] = mask;
    }
    const int n_diff = k * q;
    const int n_eq = n_pairs - n_diff;
    Complex acc = static_cast<double>(n_eq - n_diff) * x(b);
    for (int p = 0; p < k; ++p) {
      const std::int64_t bp = b ^ ones[p];
      for (int r = 0; r < q; ++r) {
        acc += 2.0 * x(bp ^ zeros[r]);
      }
    }
    y(b) += g * acc;
  }
}

void check_finite(const Eigen::VectorXcd& v, double t) {
  if (v.allFinite()) return;
  std::ostringstream msg;
  msg << "evolve_exact: non-finite amplitudes at t = " << t;
  throw NumericalError(msg.str());
}

}  // namespace

std::vector<std::string> EvolutionParams::validation_errors() const {
  std::vector<std::string> errors;
  if (!(dt > 0.0)) errors.push_back("evolution.dt must be > 0");
  if (t_final < 0.0) errors.push_back("evolution.t_final must be >= 0");
  if (krylov_dim < 4) errors.push_back("evolution.krylov_dim must be >= 4");
  return errors;
}

void EvolutionParams::validate() const {
  auto errors = validation_errors();
  if (errors.empty()) return;
  std::ostringstream msg;
  msg << "invalid EvolutionParams:";
  for (const auto& e : errors) msg << "\n  - " << e;
  throw std::invalid_argument(msg.str());
}

void apply_hamiltonian(const SystemSpec& spec, Basis basis, double t,
                       const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
  const int n = spec.n_sites();
  const std::int64_t dim = std::int64_t{1} << n;
  if (x.size() != dim) {
    throw std::invalid_argument(
        "apply_hamiltonian: state dimension does not match spec");
  }
  if (y.size() != dim) y.resize(dim);
  apply_terms(hamiltonian_terms(spec, t, basis), n, x, y);
}

StateVector apply_hamiltonian(const StateVector& psi, const SystemSpec& spec,
                              double t, Basis basis) {
  StateVector out;
  out.n_sites = psi.n_sites;
  apply_hamiltonian(spec, basis, t, psi.amplitudes, out.amplitudes);
  return out;
}

StateVector evolve_exact(StateVector psi, const SystemSpec& spec,
                         const EvolutionParams& params, int snapshot_stride,
                         const SnapshotCallback& callback, Basis basis) {
  spec.validate();
  params.validate();
  const int n = spec.n_sites();
  if (n > 14) {
    throw CapacityError("evolve_exact: N = " + std::to_string(n) +
                        " exceeds the N <= 14 state-vector guard");
  }
  if (psi.amplitudes.size() != (std::int64_t{1} << n)) {
    throw std::invalid_argument("evolve_exact: state/spec dimension mismatch");
  }

  const std::int64_t n_steps =
      params.t_final > 0.0
          ? std::max<std::int64_t>(1, std::llround(params.t_final / params.dt))
          : 0;
  const double dt = n_steps > 0 ? params.t_final / n_steps : params.dt;

  if (callback) callback(0.0, psi);
  if (n_steps == 0) return psi;

  const HamiltonianTerms one_body_probe =
      hamiltonian_terms(spec, 0.0, basis);  // layout reused every step
  HamiltonianTerms terms = one_body_probe;

  KrylovPropagator krylov(params.krylov_dim, params.krylov_tol);
  Eigen::VectorXcd k1, k2, k3, k4, tmp;
  Eigen::MatrixXcd dense;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;

  if (params.method == StepMethod::MatrixExponential && n > 10) {
    throw CapacityError(
        "evolve_exact: matrix_exponential_step is guarded at N <= 10");
  }

  const bool mu_constant = spec.coupling.kind == CouplingKind::Constant;

  for (std::int64_t step = 1; step <= n_steps; ++step) {
    const double t_mid = (static_cast<double>(step) - 0.5) * dt;
    terms.pair_coupling = 0.5 * spec.coupling.at(std::abs(t_mid));

    switch (params.method) {
      case StepMethod::Krylov: {
        auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
          apply_terms(terms, n, in, out);
        };
        krylov.propagate(apply, dt, psi.amplitudes);
        break;
      }
      case StepMethod::MatrixExponential: {
        if (dense.size() == 0 || !mu_constant) {
          SystemSpec frozen = spec;
          frozen.coupling.kind = CouplingKind::Constant;
          frozen.coupling.mu0 = spec.coupling.at(std::abs(t_mid));
          dense = dense_hamiltonian(frozen, 0.0, basis);
          es.compute(dense);
          if (es.info() != Eigen::Success) {
            throw NumericalError("evolve_exact: dense eigensolve failed");
          }
        }
        tmp = es.eigenvectors().adjoint() * psi.amplitudes;
        for (Eigen::Index k = 0; k < tmp.size(); ++k) {
          tmp(k) *= std::exp(Complex(0.0, -dt * es.eigenvalues()(k)));
        }
        psi.amplitudes = es.eigenvectors() * tmp;
        break;
      }
      case StepMethod::Rk4: {
        const Complex mi(0.0, -1.0);
        apply_terms(terms, n, psi.amplitudes, k1);
        tmp = psi.amplitudes + (0.5 * dt) * (mi * k1);
        apply_terms(terms, n, tmp, k2);
        tmp = psi.amplitudes + (0.5 * dt) * (mi * k2);
        apply_terms(terms, n, tmp, k3);
        tmp = psi.amplitudes + dt * (mi * k3);
        apply_terms(terms, n, tmp, k4);
        psi.amplitudes +=
            (dt / 6.0) * (mi * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        break;
      }
    }

    const double t_now = static_cast<double>(step) * dt;
    check_finite(psi.amplitudes, t_now);
    if (callback &&
        ((snapshot_stride > 0 && step % snapshot_stride == 0) ||
         step == n_steps)) {
      callback(t_now, psi);
    }
  }
  return psi;
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& psi,
                                        const std::vector<int>& sites) {
  const int n = psi.n_sites;
  std::vector<int> part = sites;
  std::sort(part.begin(), part.end());
  if (part.empty() || static_cast<int>(part.size()) >= n) {
    throw std::invalid_argument(
        "reduced_density_matrix: partition must be a nonempty proper subset");
  }
  if (std::adjacent_find(part.begin(), part.end()) != part.end() ||
      part.front() < 0 || part.back() >= n) {
    throw std::invalid_argument("reduced_density_matrix: invalid site list");
  }

  const int na = static_cast<int>(part.size());
  const int nb = n - na;
  std::vector<char> in_part(n, 0);
  for (int s : part) in_part[s] = 1;
  std::vector<int> a_shift(n, 0), b_shift(n, 0);
  {
    int ai = 0, bi = 0;
    for (int i = 0; i < n; ++i) {
      if (in_part[i]) a_shift[i] = na - 1 - ai++;
      else b_shift[i] = nb - 1 - bi++;
    }
  }

  const std::int64_t dim = psi.dim();
  Eigen::MatrixXcd m(std::int64_t{1} << na, std::int64_t{1} << nb);
  for (std::int64_t b = 0; b < dim; ++b) {
    std::int64_t a_idx = 0, b_idx = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = site_bit(b, i, n);
      if (in_part[i]) a_idx |= std::int64_t{bit} << a_shift[i];
      else b_idx |= std::int64_t{bit} << b_shift[i];
    }
    m(a_idx, b_idx) = psi.amplitudes(b);
  }
  return m * m.adjoint();
}

Matrix2 single_site_rdm(const StateVector& psi, int site) {
  const int n = psi.n_sites;
  if (site < 0 || site >= n) {
    throw std::invalid_argument("single_site_rdm: invalid site index");
  }
  const std::int64_t mask = site_mask(site, n);
  const std::int64_t dim = psi.dim();
  double p0 = 0.0, p1 = 0.0;
  Complex off(0.0, 0.0);
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & mask) {
      p1 += std::norm(psi.amplitudes(b));
    } else {
      p0 += std::norm(psi.amplitudes(b));
      off += psi.amplitudes(b) * std::conj(psi.amplitudes(b | mask));
    }
  }
  Matrix2 rho;
  rho << p0, off, std::conj(off), p1;
  return rho;
}

std::vector<double> schmidt_spectrum_at_cut(const StateVector& psi, int cut) {
  const int n = psi.n_sites;
  if (cut < 1 || cut > n - 1) {
    throw std::invalid_argument("schmidt_spectrum_at_cut: invalid cut");
  }
  const std::int64_t rows = std::int64_t{1} << cut;
  const std::int64_t cols = std::int64_t{1} << (n - cut);
  Eigen::Map<const RowMatrixXcd> m(psi.amplitudes.data(), rows, cols);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  std::vector<double> out(svd.singularValues().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = svd.singularValues()(static_cast<Eigen::Index>(i));
    out[i] = s * s;
  }
  return out;
}

std::vector<double> single_site_spectrum(const StateVector& psi, int site) {
  const Matrix2 rho = single_site_rdm(psi, site);
  // Closed-form eigenvalues of a 2x2 Hermitian matrix with unit trace.
  const double half_tr = 0.5 * std::real(rho(0, 0) + rho(1, 1));
  const double half_diff = 0.5 * std::real(rho(0, 0) - rho(1, 1));
  const double w =
      std::sqrt(half_diff * half_diff + std::norm(rho(0, 1)));
  return {half_tr + w, std::max(0.0, half_tr - w)};
}

std::vector<int> schmidt_rank_profile(const StateVector& psi,
                                      double rel_tol) {
  const int n = psi.n_sites;
  std::vector<int> ranks(n - 1, 0);
  for (int cut = 1; cut <= n - 1; ++cut) {
    const auto lambda = schmidt_spectrum_at_cut(psi, cut);
    const double top = lambda.empty() ? 0.0 : lambda.front();
    int r = 0;
    for (double v : lambda) {
      if (v > rel_tol * rel_tol * top) ++r;
    }
    ranks[cut - 1] = std::max(r, 1);
  }
  return ranks;
}

}  // namespace nures
