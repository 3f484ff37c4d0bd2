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

#include "faprop/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "faprop/errors.hpp"

namespace faprop {

Channel::Channel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Mat> kraus, bool trace_preserving)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), trace_preserving_(trace_preserving) {
  if (dim_in_ < 1 || dim_out_ < 1) throw ValidationError("channel dimensions must be positive");
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  Mat sum = Mat::Zero(dim_in_, dim_in_);
  for (const Mat& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw DimensionMismatch("Kraus operator has the wrong shape");
    sum.noalias() += k.adjoint() * k;
  }
  const Mat gap = Mat::Identity(dim_in_, dim_in_) - sum;
  if (trace_preserving_) {
    if (gap.cwiseAbs().maxCoeff() > kCompletenessTol)
      throw ValidationError("Kraus operators are not complete (sum K^*K != I)");
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gap + gap.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kCompletenessTol)
      throw ValidationError("operation is trace increasing (sum K^*K > I)");
  }
}

Eigen::Index Channel::choi_rank() const {
  // Choi rank = rank of the Gram matrix <K_i, K_j>.
  const Eigen::Index k = env_dim();
  Mat gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = (kraus_[i].adjoint() * kraus_[j]).trace();
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
  return static_cast<Eigen::Index>((es.eigenvalues().array() > 1e-10 * top).count());
}

POVM::POVM(std::vector<Mat> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("POVM needs at least one effect");
  const Eigen::Index d = effects_.front().rows();
  Mat sum = Mat::Zero(d, d);
  for (const Mat& e : effects_) {
    if (e.rows() != d || e.cols() != d) throw DimensionMismatch("POVM effects must share a dimension");
    require_hermitian(e, "POVM effect");
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kCompletenessTol) throw ValidationError("POVM effect is not PSD");
    sum += e;
  }
  if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kCompletenessTol)
    throw ValidationError("POVM effects do not sum to the identity");
}

POVM basis_povm(Eigen::Index d) {
  std::vector<Mat> e;
  for (Eigen::Index i = 0; i < d; ++i) {
    Mat m = Mat::Zero(d, d);
    m(i, i) = 1.0;
    e.push_back(m);
  }
  return POVM(std::move(e));
}

POVM trivial_povm(Eigen::Index d) { return POVM({Mat::Identity(d, d)}); }

POVM trine_povm() {
  std::vector<Mat> e;
  for (int j = 0; j < 3; ++j) {
    const double th = 2.0 * std::numbers::pi * j / 3.0;
    Vec v(2);
    v << std::cos(th / 2.0), std::sin(th / 2.0);
    e.push_back((2.0 / 3.0) * v * v.adjoint());
  }
  return POVM(std::move(e));
}

Mat apply_channel(const Channel& phi, const Mat& rho) {
  if (rho.rows() != phi.dim_in() || rho.cols() != phi.dim_in())
    throw DimensionMismatch("state dimension does not match the channel input");
  Mat out = Mat::Zero(phi.dim_out(), phi.dim_out());
  for (const Mat& k : phi.kraus()) out.noalias() += k * rho * k.adjoint();
  return 0.5 * (out + out.adjoint());
}

Mat apply_adjoint(const Channel& phi, const Mat& x) {
  if (x.rows() != phi.dim_out()) throw DimensionMismatch("operator does not match the channel output");
  Mat out = Mat::Zero(phi.dim_in(), phi.dim_in());
  for (const Mat& k : phi.kraus()) out.noalias() += k.adjoint() * x * k;
  return out;
}

Mat apply_complementary(const Channel& phi, const Mat& rho) {
  if (rho.rows() != phi.dim_in() || rho.cols() != phi.dim_in())
    throw DimensionMismatch("state dimension does not match the channel input");
  const Eigen::Index k = phi.env_dim();
  std::vector<Mat> krho(k);
  for (Eigen::Index i = 0; i < k; ++i) krho[i] = phi.kraus()[i] * rho;
  Mat out(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      // Tr K_i rho K_j^* = sum of entries of (K_i rho) .* conj(K_j)
      const cplx v = (krho[i].array() * phi.kraus()[j].array().conjugate()).sum();
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  return out;
}

Mat stinespring(const Channel& phi) {
  const Eigen::Index k = phi.env_dim();
  Mat v = Mat::Zero(phi.dim_out() * k, phi.dim_in());
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index b = 0; b < phi.dim_out(); ++b) v.row(b * k + i) = phi.kraus()[i].row(b);
  return v;
}

Channel complementary(const Channel& phi) {
  const Eigen::Index k = phi.env_dim();
  std::vector<Mat> out;
  for (Eigen::Index b = 0; b < phi.dim_out(); ++b) {
    Mat l(k, phi.dim_in());
    for (Eigen::Index i = 0; i < k; ++i) l.row(i) = phi.kraus()[i].row(b);
    out.push_back(std::move(l));
  }
  return Channel(phi.dim_in(), k, std::move(out), phi.trace_preserving());
}

Channel remix_kraus(const Channel& phi, const Mat& u) {
  const Eigen::Index k = phi.env_dim();
  if (u.rows() != k || u.cols() != k) throw DimensionMismatch("remix unitary must be env_dim x env_dim");
  std::vector<Mat> out(k, Mat::Zero(phi.dim_out(), phi.dim_in()));
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) out[j] += u(j, i) * phi.kraus()[i];
  return Channel(phi.dim_in(), phi.dim_out(), std::move(out), phi.trace_preserving());
}

Channel qc_channel(const POVM& povm) {
  const Eigen::Index d = povm.dim();
  const Eigen::Index m = static_cast<Eigen::Index>(povm.effects().size());
  std::vector<Mat> kraus;
  for (Eigen::Index i = 0; i < m; ++i) {
    // K_{i,a} = |i><a| sqrt(M_i): sum_a K^*K = M_i, output Tr(M_i rho) |i><i|.
    const Mat root = sqrtm_psd(povm.effects()[i]);
    for (Eigen::Index a = 0; a < d; ++a) {
      if (root.row(a).norm() < 1e-14) continue;
      Mat k = Mat::Zero(m, d);
      k.row(i) = root.row(a);
      kraus.push_back(std::move(k));
    }
  }
  return Channel(d, m, std::move(kraus));
}

Channel tensor_with_identity(const Channel& phi, Eigen::Index d_r) {
  const Mat id = Mat::Identity(d_r, d_r);
  std::vector<Mat> out;
  for (const Mat& k : phi.kraus()) out.push_back(kron(k, id));
  return Channel(phi.dim_in() * d_r, phi.dim_out() * d_r, std::move(out), phi.trace_preserving());
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim_in() != inner.dim_out()) throw DimensionMismatch("composition dimensions do not chain");
  std::vector<Mat> out;
  for (const Mat& a : outer.kraus())
    for (const Mat& b : inner.kraus()) out.push_back(a * b);
  return Channel(inner.dim_in(), outer.dim_out(), std::move(out),
                 outer.trace_preserving() && inner.trace_preserving());
}

Channel scale(const Channel& phi, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("scale factor must lie in [0,1]");
  std::vector<Mat> out;
  for (const Mat& k : phi.kraus()) out.push_back(std::sqrt(c) * k);
  return Channel(phi.dim_in(), phi.dim_out(), std::move(out), phi.trace_preserving() && c == 1.0);
}

Channel identity_channel(Eigen::Index d) { return Channel(d, d, {Mat::Identity(d, d)}); }

Channel unitary_channel(const Mat& u) { return Channel(u.cols(), u.rows(), {u}); }

Channel constant_channel(Eigen::Index dim_in, const Mat& sigma) {
  require_hermitian(sigma, "constant output");
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma);
  const Eigen::Index d = sigma.rows();
  std::vector<Mat> kraus;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double s = es.eigenvalues()[j];
    if (s <= 1e-15) continue;
    for (Eigen::Index a = 0; a < dim_in; ++a) {
      Mat k = Mat::Zero(d, dim_in);
      k.col(a) = std::sqrt(s) * es.eigenvectors().col(j);
      kraus.push_back(std::move(k));
    }
  }
  return Channel(dim_in, d, std::move(kraus));
}

Channel dephasing_channel(Eigen::Index d) {
  std::vector<Mat> kraus;
  for (Eigen::Index a = 0; a < d; ++a) {
    Mat k = Mat::Zero(d, d);
    k(a, a) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(d, d, std::move(kraus));
}

Channel partial_dephasing(Eigen::Index d, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("dephasing strength must lie in [0,1]");
  std::vector<Mat> kraus{std::sqrt(1.0 - eps) * Mat::Identity(d, d)};
  if (eps > 0.0)
    for (Eigen::Index a = 0; a < d; ++a) {
      Mat k = Mat::Zero(d, d);
      k(a, a) = std::sqrt(eps);
      kraus.push_back(std::move(k));
    }
  return Channel(d, d, std::move(kraus));
}

Channel depolarizing_channel(Eigen::Index d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing weight must lie in [0,1]");
  std::vector<Mat> kraus{std::sqrt(1.0 - p) * Mat::Identity(d, d)};
  if (p > 0.0)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        Mat k = Mat::Zero(d, d);
        k(a, b) = std::sqrt(p / static_cast<double>(d));
        kraus.push_back(std::move(k));
      }
  return Channel(d, d, std::move(kraus));
}

namespace {

std::vector<Mat> slice_isometry(const Mat& v, Eigen::Index dim_out, Eigen::Index k) {
  std::vector<Mat> kraus(k, Mat(dim_out, v.cols()));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index b = 0; b < dim_out; ++b) kraus[i].row(b) = v.row(b * k + i);
  return kraus;
}

}  // namespace

Channel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index k, std::uint64_t seed) {
  if (k < 1) throw DomainError("Choi rank must be at least 1");
  if (dim_out * k < dim_in) throw DomainError("dim_out * k must be at least dim_in for a channel");
  Rng rng(seed);
  const Mat v = haar_isometry(dim_out * k, dim_in, rng);
  return Channel(dim_in, dim_out, slice_isometry(v, dim_out, k));
}

Channel random_compressed_operation(Eigen::Index ambient, Eigen::Index dim_in, Eigen::Index dim_out,
                                    Eigen::Index k, std::uint64_t seed) {
  if (dim_in > ambient) throw DomainError("compressed subspace exceeds the ambient dimension");
  if (dim_out * k < dim_in) throw DomainError("dim_out * k must be at least dim_in");
  Rng rng(seed);
  const Mat v = haar_isometry(dim_out * k, dim_in, rng);
  const Mat w = haar_isometry(ambient, dim_in, rng);
  auto kraus = slice_isometry(v, dim_out, k);
  for (Mat& m : kraus) m = (m * w.adjoint()).eval();
  return Channel(ambient, dim_out, std::move(kraus), false);
}

Channel random_operation(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index k, std::uint64_t seed) {
  if (dim_out * k < dim_in) throw DomainError("dim_out * k must be at least dim_in");
  Rng rng(seed);
  const Mat v = haar_isometry(dim_out * k, dim_in, rng);
  const Mat u = haar_unitary(dim_in, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RVec s(dim_in);
  for (Eigen::Index i = 0; i < dim_in; ++i) s[i] = unit(rng);
  const Mat contraction = u * s.cast<cplx>().asDiagonal() * u.adjoint();
  auto kraus = slice_isometry(v, dim_out, k);
  for (Mat& m : kraus) m = (m * contraction).eval();
  return Channel(dim_in, dim_out, std::move(kraus), false);
}

HpMaxEstimate hp_max_estimate(const Channel& phi, int n_starts, std::uint64_t seed) {
  const Eigen::Index d = phi.dim_in();
  auto value = [&](const Vec& psi) { return von_neumann_entropy(apply_channel(phi, psi * psi.adjoint())); };
  auto gradient = [&](const Vec& psi) {
    const Mat tau = apply_channel(phi, psi * psi.adjoint());
    const double t = tau.trace().real();
    const Mat l = hermitian_apply(tau, [](double x) { return std::log(std::max(x, 1e-14)); });
    const Mat b = apply_adjoint(phi, -l + std::log(std::max(t, 1e-300)) * Mat::Identity(tau.rows(), tau.rows()));
    Vec g = b * psi;
    g -= psi.dot(g) * psi;
    return g;
  };

  std::vector<Vec> starts;
  for (Eigen::Index i = 0; i < d; ++i) starts.push_back(Vec::Unit(d, i));
  Rng rng(seed);
  for (int s = 0; s < n_starts; ++s) starts.push_back(random_pure_state(d, rng));

  HpMaxEstimate best;
  best.value = -1.0;
  for (Vec psi : starts) {
    double f = value(psi);
    for (int it = 0; it < 300; ++it) {
      const Vec g = gradient(psi);
      const double gn = g.squaredNorm();
      if (gn < 1e-20) break;
      double step = 1.0;
      bool moved = false;
      while (step > 1e-12) {
        Vec cand = psi + step * g;
        cand.normalize();
        const double fc = value(cand);
        if (fc >= f + 1e-4 * step * gn) {
          psi = cand;
          moved = fc - f > 1e-13;
          f = fc;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (f > best.value) {
      best.value = f;
      best.witness = psi;
    }
  }
  return best;
}

}  // namespace faprop
