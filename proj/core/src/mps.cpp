#include "nures/mps.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nures/errors.hpp"

namespace nures {

SiteTensor SiteTensor::zero(int chi_l, int chi_r) {
  SiteTensor t;
  t.chi_l = chi_l;
  t.chi_r = chi_r;
  t.data = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(chi_l) * 2 *
                                  chi_r);
  return t;
}

MpsState MpsState::product_state(const std::vector<int>& bits) {
  if (bits.empty()) {
    throw std::invalid_argument("MpsState: empty site list");
  }
  MpsState mps;
  mps.tensors_.reserve(bits.size());
  for (int b : bits) {
    SiteTensor t = SiteTensor::zero(1, 1);
    t.data(b ? 1 : 0) = 1.0;
    mps.tensors_.push_back(std::move(t));
  }
  mps.center_ = 0;
  return mps;
}

MpsState MpsState::from_spec(const SystemSpec& spec) {
  spec.validate();
  std::vector<int> bits;
  bits.reserve(spec.initial_config.size());
  for (Flavor f : spec.initial_config) {
    bits.push_back(f == Flavor::Muon ? 1 : 0);
  }
  return product_state(bits);
}

MpsState MpsState::from_state_vector(const StateVector& psi, int max_bond,
                                     double rank_tol) {
  const int n = psi.n_sites;
  if (n < 1 || psi.amplitudes.size() != (std::int64_t{1} << n)) {
    throw std::invalid_argument("MpsState: bad dense state");
  }
  MpsState mps;
  mps.tensors_.resize(n);
  mps.bond_cap_ = max_bond;

  // Sweep of thin SVDs, splitting one site off the left at a time.
  RowMatrixXcd rest = Eigen::Map<const RowMatrixXcd>(
      psi.amplitudes.data(), 2, psi.amplitudes.size() / 2);
  int chi = 1;
  for (int i = 0; i < n - 1; ++i) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(
        rest, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    int keep = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) > rank_tol * s(0)) ++keep;
    }
    keep = std::max(keep, 1);
    if (max_bond > 0) keep = std::min(keep, max_bond);

    SiteTensor t = SiteTensor::zero(chi, keep);
    t.left() = svd.matrixU().leftCols(keep);
    mps.tensors_[i] = std::move(t);

    RowMatrixXcd carry = s.head(keep).asDiagonal() *
                         svd.matrixV().leftCols(keep).adjoint();
    // carry: keep x (2^{n-1-i}); regroup rows as (keep * 2) for the next site.
    chi = keep;
    if (i < n - 2) {
      rest = Eigen::Map<const RowMatrixXcd>(carry.data(),
                                            static_cast<Eigen::Index>(chi) * 2,
                                            carry.cols() / 2);
    } else {
      SiteTensor last = SiteTensor::zero(chi, 1);
      last.right() = carry;
      mps.tensors_[n - 1] = std::move(last);
    }
  }
  if (n == 1) {
    SiteTensor only = SiteTensor::zero(1, 1);
    only.data(0) = psi.amplitudes(0);
    only.data(1) = psi.amplitudes(1);
    mps.tensors_[0] = std::move(only);
  }
  mps.center_ = n - 1;
  return mps;
}

std::vector<int> MpsState::bond_dimensions() const {
  std::vector<int> dims;
  dims.reserve(tensors_.size() - 1);
  for (std::size_t i = 0; i + 1 < tensors_.size(); ++i) {
    dims.push_back(tensors_[i].chi_r);
  }
  return dims;
}

int MpsState::max_bond_dimension() const {
  int m = 1;
  for (std::size_t i = 0; i + 1 < tensors_.size(); ++i) {
    m = std::max(m, tensors_[i].chi_r);
  }
  return m;
}

void MpsState::orthonormalize_left(int site) {
  SiteTensor& t = tensors_[site];
  const Eigen::Index rows = static_cast<Eigen::Index>(t.chi_l) * 2;
  const Eigen::Index k = std::min<Eigen::Index>(rows, t.chi_r);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(t.left());
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, k);
  Eigen::MatrixXcd r = qr.matrixQR()
                           .topRows(k)
                           .template triangularView<Eigen::Upper>();

  SiteTensor replacement = SiteTensor::zero(t.chi_l, static_cast<int>(k));
  replacement.left() = q;
  tensors_[site] = std::move(replacement);

  SiteTensor& next = tensors_[site + 1];
  SiteTensor absorbed = SiteTensor::zero(static_cast<int>(k), next.chi_r);
  absorbed.right() = r * next.right();
  tensors_[site + 1] = std::move(absorbed);
}

void MpsState::orthonormalize_right(int site) {
  SiteTensor& t = tensors_[site];
  const Eigen::Index cols = static_cast<Eigen::Index>(t.chi_r) * 2;
  const Eigen::Index k = std::min<Eigen::Index>(cols, t.chi_l);
  Eigen::MatrixXcd m_adj = t.right().adjoint();  // (2 chi_r) x chi_l
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m_adj);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols, k);
  Eigen::MatrixXcd r = qr.matrixQR()
                           .topRows(k)
                           .template triangularView<Eigen::Upper>();

  SiteTensor replacement = SiteTensor::zero(static_cast<int>(k), t.chi_r);
  replacement.right() = q.adjoint();
  tensors_[site] = std::move(replacement);

  SiteTensor& prev = tensors_[site - 1];
  SiteTensor absorbed = SiteTensor::zero(prev.chi_l, static_cast<int>(k));
  absorbed.left() = prev.left() * r.adjoint();
  tensors_[site - 1] = std::move(absorbed);
}

void MpsState::move_center(int site) {
  if (site < 0 || site >= n_sites()) {
    throw std::invalid_argument("move_center: invalid site " +
                                std::to_string(site));
  }
  while (center_ < site) orthonormalize_left(center_++);
  while (center_ > site) orthonormalize_right(center_--);
}

void MpsState::expand_bonds(int cap) {
  const int n = n_sites();
  move_center(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const int cut = i + 1;
    int target = 1 << std::min(cut, n - cut);
    if (cap > 0) target = std::min(target, cap);
    SiteTensor& t = tensors_[static_cast<std::size_t>(i)];
    if (t.chi_r >= target) continue;

    // Complete the left-orthonormal columns with an orthonormal complement;
    // the matching new rows of the next tensor are zero, so the state is
    // untouched.
    const Eigen::Index rows = static_cast<Eigen::Index>(t.chi_l) * 2;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(t.left());
    const Eigen::MatrixXcd q_full =
        qr.householderQ() * Eigen::MatrixXcd::Identity(rows, rows);
    SiteTensor wide = SiteTensor::zero(t.chi_l, target);
    wide.left().leftCols(t.chi_r) = t.left();
    wide.left().rightCols(target - t.chi_r) =
        q_full.middleCols(t.chi_r, target - t.chi_r);
    const int old_chi = t.chi_r;
    tensors_[static_cast<std::size_t>(i)] = std::move(wide);

    SiteTensor& next = tensors_[static_cast<std::size_t>(i + 1)];
    SiteTensor padded = SiteTensor::zero(target, next.chi_r);
    padded.right().topRows(old_chi) = next.right();
    tensors_[static_cast<std::size_t>(i + 1)] = std::move(padded);
  }
}

double MpsState::norm() const {
  return tensors_[center_].data.norm();
}

void MpsState::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0)) {
    throw NumericalError("MpsState::normalize: zero norm");
  }
  tensors_[center_].data /= nrm;
}

StateVector MpsState::to_state_vector() const {
  const int n = n_sites();
  if (n > 20) {
    throw CapacityError("MpsState::to_state_vector: N = " + std::to_string(n) +
                        " exceeds the N <= 20 contraction guard");
  }
  RowMatrixXcd acc = RowMatrixXcd::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const SiteTensor& t = tensors_[i];
    RowMatrixXcd next = acc * t.right();  // (p, (s, r)) row-major
    acc = Eigen::Map<const RowMatrixXcd>(next.data(), next.rows() * 2,
                                         next.cols() / 2);
  }
  StateVector psi;
  psi.n_sites = n;
  psi.amplitudes = acc.col(0);
  return psi;
}

Matrix2 MpsState::site_rdm(int site) const {
  if (site < 0 || site >= n_sites()) {
    throw std::invalid_argument("site_rdm: invalid site " +
                                std::to_string(site));
  }
  if (site == center_) {
    const SiteTensor& t = tensors_[site];
    Matrix2 rho = Matrix2::Zero();
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) {
        rho(s, sp) = (t.block(sp).conjugate().cwiseProduct(t.block(s))).sum();
      }
    }
    return rho;
  }
  MpsState copy = *this;
  copy.move_center(site);
  return copy.site_rdm(site);
}

std::vector<Matrix2> MpsState::all_site_rdms() const {
  MpsState copy = *this;
  copy.move_center(0);
  std::vector<Matrix2> out;
  out.reserve(static_cast<std::size_t>(n_sites()));
  for (int i = 0; i < n_sites(); ++i) {
    copy.move_center(i);
    out.push_back(copy.site_rdm(i));
  }
  return out;
}

std::vector<double> MpsState::entanglement_spectrum_at_cut(int cut) const {
  const int n = n_sites();
  if (cut < 1 || cut > n - 1) {
    throw std::invalid_argument("entanglement_spectrum_at_cut: invalid cut " +
                                std::to_string(cut));
  }
  MpsState copy = *this;
  copy.move_center(cut - 1);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(copy.tensors_[cut - 1].left());
  std::vector<double> out(
      static_cast<std::size_t>(svd.singularValues().size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = svd.singularValues()(static_cast<Eigen::Index>(i));
    out[i] = s * s;
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

std::vector<double> MpsState::single_site_spectrum(int site) const {
  const Matrix2 rho = site_rdm(site);
  const double half_tr = 0.5 * std::real(rho(0, 0) + rho(1, 1));
  const double half_diff = 0.5 * std::real(rho(0, 0) - rho(1, 1));
  const double w = std::sqrt(half_diff * half_diff + std::norm(rho(0, 1)));
  return {half_tr + w, std::max(0.0, half_tr - w)};
}

double MpsState::max_orthonormality_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n_sites(); ++i) {
    const SiteTensor& t = tensors_[i];
    if (i < center_) {
      const Eigen::MatrixXcd g =
          t.left().adjoint() * t.left() -
          Eigen::MatrixXcd::Identity(t.chi_r, t.chi_r);
      worst = std::max(worst, g.cwiseAbs().maxCoeff());
    } else if (i > center_) {
      const Eigen::MatrixXcd g =
          t.right() * t.right().adjoint() -
          Eigen::MatrixXcd::Identity(t.chi_l, t.chi_l);
      worst = std::max(worst, g.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace nures
