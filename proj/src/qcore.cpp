// Copyright 2026 The faprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faprop/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "faprop/errors.hpp"

namespace faprop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DensityMatrix::DensityMatrix(Mat m, bool allow_subnormalized) : m_(std::move(m)) {
  require_hermitian(m_, "density matrix");
  const RVec ev = clamped_spectrum(m_);
  trace_ = ev.sum();
  if (allow_subnormalized) {
    if (trace_ > 1.0 + kHermitianTol) throw ValidationError("operator trace exceeds 1");
  } else if (std::abs(trace_ - 1.0) > kHermitianTol) {
    throw ValidationError("density matrix must have unit trace");
  }
}

PureStateVector::PureStateVector(Vec v) : v_(std::move(v)) {
  if (v_.size() == 0 || std::abs(v_.norm() - 1.0) > 1e-12)
    throw ValidationError("pure state vector must have unit norm");
}

void require_hermitian(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError(std::string(what) + " must be square and nonempty");
  if (!m.allFinite()) throw ValidationError(std::string(what) + " has non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw ValidationError(std::string(what) + " is not Hermitian");
}

RVec clamped_spectrum(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues();
  const double total = ev.sum();
  bool clamped = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kClampTol) throw ValidationError("operator has a negative eigenvalue");
    if (ev[i] < 0.0) {
      ev[i] = 0.0;
      clamped = true;
    }
  }
  if (clamped && ev.sum() > 0.0) ev *= total / ev.sum();
  return ev;
}

Mat sqrtm_psd(const Mat& m) {
  return hermitian_apply(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

double entropy_of_spectrum(const RVec& p) {
  const double t = p.sum();
  if (!(t > 0.0)) return 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i] / t);
  return std::max(h, 0.0);
}

double von_neumann_entropy(const Mat& rho) {
  require_hermitian(rho, "state");
  return entropy_of_spectrum(clamped_spectrum(rho));
}

RelativeEntropy relative_entropy(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("relative entropy of operators of different size");
  require_hermitian(rho, "rho");
  require_hermitian(sigma, "sigma");
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma);
  const RVec& s = es.eigenvalues();
  // Diagonal of rho in the eigenbasis of sigma.
  const RVec w = (es.eigenvectors().adjoint() * rho * es.eigenvectors()).diagonal().real();

  RelativeEntropy out;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s[j] <= kSupportCutoff) {
      if (w[j] > kSupportCutoff) {
        out.infinite = true;
        out.value = kInf;
        return out;
      }
      continue;
    }
    if (s[j] <= kNearSingular && w[j] > kSupportCutoff) out.near_singular = true;
    cross += w[j] * std::log(s[j]);
  }
  const RVec r = clamped_spectrum(rho);
  double self = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r[i] > 0.0) self += r[i] * std::log(r[i]);
  out.value = std::max(0.0, self - cross);
  return out;
}

double trace_norm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("trace distance of operators of different size");
  return 0.5 * trace_norm(rho - sigma);
}

namespace {

/// Square m x m factor of m = A A^*; eigenpairs at rounding level give zero
/// columns, since their square roots would add O(sqrt(eps)) to the fidelity.
Mat psd_factor(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  const RVec& ev = es.eigenvalues();
  const double cut = 64.0 * std::numeric_limits<double>::epsilon() * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  RVec root(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) root[i] = ev[i] > cut ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * root.cast<cplx>().asDiagonal();
}

}  // namespace

double root_fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("fidelity of operators of different size");
  // F = ||A^* B||_1 for rho = A A^*, sigma = B B^*
  Eigen::JacobiSVD<Mat> svd(psd_factor(rho).adjoint() * psd_factor(sigma));
  return svd.singularValues().sum();
}

double bures_distance(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("Bures distance of operators of different size");
  // min over unitaries W of ||A - B W||_F, attained at the polar factor of
  // B^* A; avoids the cancellation in sqrt(2 - 2F) near b = 0.
  const Mat a = psd_factor(rho), fb = psd_factor(sigma);
  Eigen::JacobiSVD<Mat> svd(fb.adjoint() * a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double b = (a - fb * (svd.matrixU() * svd.matrixV().adjoint())).norm();
#ifndef NDEBUG
  const double t = trace_norm(rho - sigma);
  // b carries an O(sqrt(eps)) rounding error near b = 0
  if (0.5 * t > b + 1e-7 || b > std::sqrt(t) + 1e-7)
    throw std::logic_error("Bures distance outside the trace-norm sandwich");
#endif
  return b;
}

SandwichRecord bures_sandwich(const Mat& rho, const Mat& sigma, double slack) {
  SandwichRecord r;
  const double t = trace_norm(rho - sigma);
  r.half_trace_norm = 0.5 * t;
  r.bures = bures_distance(rho, sigma);
  r.upper = std::sqrt(t);
  r.holds = r.half_trace_norm <= r.bures + slack && r.bures <= r.upper + slack;
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Mat partial_trace(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b, Factor which) {
  if (m.rows() != m.cols() || m.rows() != dim_a * dim_b)
    throw DimensionMismatch("operator dimension does not factor as dim_a * dim_b");
  if (which == Factor::second) {
    Mat out = Mat::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  Mat out = Mat::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

Vec purify(const Mat& rho) {
  require_hermitian(rho, "state");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const Eigen::Index d = rho.rows();
  RVec ev = es.eigenvalues();
  Vec out = Vec::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = ev[i] > 0.0 ? std::sqrt(ev[i]) : 0.0;
    if (l == 0.0) continue;
    Vec e = Vec::Zero(d);
    e[i] = 1.0;
    out += l * kron(Vec(es.eigenvectors().col(i)), e);
  }
  return out;
}

MixingRecord mixing_inequality_check(const Mat& rho, const Mat& sigma, double p, double slack) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("mixing check of operators of different size");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("mixing weight must lie in (0,1)");
  MixingRecord r;
  const Mat mix = p * rho + (1.0 - p) * sigma;
  r.gap = von_neumann_entropy(mix) - p * von_neumann_entropy(rho) - (1.0 - p) * von_neumann_entropy(sigma);
  r.upper = h2(p);
  r.holds = r.gap >= -slack && r.gap <= r.upper + slack;
  return r;
}

WeylRecord mixture_weyl_check(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("mixture of operators of different size");
  auto desc = [](const Mat& m) {
    RVec ev = clamped_spectrum(m);
    std::vector<double> v(ev.data(), ev.data() + ev.size());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };
  const auto a = desc(rho), b = desc(sigma), w = desc(0.5 * (rho + sigma));
  const std::size_t d = a.size();
  auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  WeylRecord rec;
  rec.worst_margin = kInf;
  auto check = [&](double lhs, double rhs, std::size_t i) {
    ++rec.checked;
    rec.worst_margin = std::min(rec.worst_margin, rhs - lhs);
    if (rhs - lhs < -1e-12 && rec.holds) {
      rec.holds = false;
      rec.first_violation = i;
    }
  };
  for (std::size_t i = 1; 2 * i - 1 <= d; ++i) {
    check(2.0 * at(w, 2 * i - 2), at(a, i - 1) + at(b, i - 1), i);
    if (2 * i <= d) check(2.0 * at(w, 2 * i - 1), at(a, i) + at(b, i - 1), i);
  }
  return rec;
}

Mat haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (cols > rows || cols < 1) throw DomainError("isometry needs 1 <= cols <= rows");
  std::normal_distribution<double> n01(0.0, 1.0);
  Mat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(n01(rng), n01(rng));
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(rows, cols);
  const Mat& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

Mat haar_unitary(Eigen::Index d, Rng& rng) { return haar_isometry(d, d, rng); }

Vec random_pure_state(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(n01(rng), n01(rng));
  return v / v.norm();
}

Mat random_density(Eigen::Index d, Eigen::Index rank, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Mat g(d, rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = cplx(n01(rng), n01(rng));
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace faprop
