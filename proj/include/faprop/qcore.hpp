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

#pragma once

// Density-operator arithmetic on Eigen dense complex matrices. Entropies are in
// nats. Free functions take plain Eigen matrices; DensityMatrix and
// PureStateVector are validated wrappers for API boundaries.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "faprop/scalar.hpp"
#include "faprop/spectra.hpp"

namespace faprop {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kClampTol = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr double kNearSingular = 1e-8;

/// Validated positive semidefinite operator. `trace` is 1 for states and at
/// most 1 for the outputs of trace-non-increasing operations.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat m, bool allow_subnormalized = false);

  const Mat& matrix() const noexcept { return m_; }
  operator const Mat&() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double trace() const noexcept { return trace_; }
  bool subnormalized() const noexcept { return trace_ < 1.0 - kHermitianTol; }

 private:
  Mat m_;
  double trace_ = 1.0;
};

class PureStateVector {
 public:
  explicit PureStateVector(Vec v);

  const Vec& vector() const noexcept { return v_; }
  Eigen::Index dim() const noexcept { return v_.size(); }
  Mat density() const { return v_ * v_.adjoint(); }

 private:
  Vec v_;
};

/// Throws ValidationError unless m is square and Hermitian to kHermitianTol.
void require_hermitian(const Mat& m, const char* what = "matrix");

/// Eigenvalues (ascending) with entries in [-kClampTol, 0) set to zero and
/// the rest rescaled so the sum still equals the trace. Throws ValidationError
/// on larger negative eigenvalues.
RVec clamped_spectrum(const Mat& m);

/// f(m) for Hermitian m via its eigendecomposition.
template <class F>
Mat hermitian_apply(const Mat& m, F f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  RVec ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = f(ev[i]);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Mat sqrtm_psd(const Mat& m);

/// -sum p ln(p / t), t = sum p: the [Tr tau] H(tau / Tr tau) convention.
double entropy_of_spectrum(const RVec& p);

/// H(rho) = Tr eta(rho), with the subnormalized convention above.
double von_neumann_entropy(const Mat& rho);

struct RelativeEntropy {
  double value = 0.0;  ///< +inf when supp rho is not inside supp sigma
  bool infinite = false;
  bool near_singular = false;  ///< sigma has eigenvalues in (cutoff, 1e-8] seen by rho
};

RelativeEntropy relative_entropy(const Mat& rho, const Mat& sigma);

double trace_norm(const Mat& m);
double trace_distance(const Mat& rho, const Mat& sigma);
/// ||sqrt(rho) sqrt(sigma)||_1.
double root_fidelity(const Mat& rho, const Mat& sigma);
/// sqrt(2 (1 - ||sqrt(rho) sqrt(sigma)||_1)); in debug builds every call checks
/// (1/2)||rho - sigma||_1 <= beta <= sqrt(||rho - sigma||_1).
double bures_distance(const Mat& rho, const Mat& sigma);

struct SandwichRecord {
  double half_trace_norm = 0.0;
  double bures = 0.0;
  double upper = 0.0;
  bool holds = false;
};
SandwichRecord bures_sandwich(const Mat& rho, const Mat& sigma, double slack = 1e-9);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

enum class Factor { first, second };

/// Traces out `which` of a (dim_a * dim_b)-dimensional operator, index a*dim_b + b.
Mat partial_trace(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b, Factor which);

/// sum_i sqrt(lambda_i) |phi_i> (x) |i>, system first, reference second.
Vec purify(const Mat& rho);

struct MixingRecord {
  double gap = 0.0;    ///< H(p rho + (1-p) sigma) - p H(rho) - (1-p) H(sigma)
  double upper = 0.0;  ///< h2(p)
  bool holds = false;
};

MixingRecord mixing_inequality_check(const Mat& rho, const Mat& sigma, double p, double slack = 1e-9);

/// Eigenvalue interlacing for the actual mixture (rho + sigma) / 2, where the
/// two operators need not commute.
WeylRecord mixture_weyl_check(const Mat& rho, const Mat& sigma);

// Seeded sampling. Gaussian draws come from std::normal_distribution, so a
// seed reproduces results for a given standard library.

/// rows x cols isometry (rows >= cols), Haar distributed via QR of a complex
/// Gaussian matrix with the R-diagonal phases removed.
Mat haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Mat haar_unitary(Eigen::Index d, Rng& rng);
Vec random_pure_state(Eigen::Index d, Rng& rng);
/// Tr_E of a Haar-random pure state on d * rank (induced measure).
Mat random_density(Eigen::Index d, Eigen::Index rank, Rng& rng);

}  // namespace faprop
