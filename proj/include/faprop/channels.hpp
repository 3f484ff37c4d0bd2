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

// Quantum operations in Kraus form. Output-environment ordering for dilations
// is B (x) E: row index b * env_dim + i.

#include <cstdint>
#include <vector>

#include "faprop/qcore.hpp"

namespace faprop {

inline constexpr double kCompletenessTol = 1e-10;

/// Completely positive map rho -> sum_i K_i rho K_i^*. Validated on
/// construction: sum K_i^* K_i equals I (trace preserving) or is <= I.
class Channel {
 public:
  Channel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Mat> kraus, bool trace_preserving = true);

  Eigen::Index dim_in() const noexcept { return dim_in_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  const std::vector<Mat>& kraus() const noexcept { return kraus_; }
  bool trace_preserving() const noexcept { return trace_preserving_; }
  /// Number of Kraus operators: the environment dimension of the canonical dilation.
  Eigen::Index env_dim() const noexcept { return static_cast<Eigen::Index>(kraus_.size()); }
  /// Rank of the Choi matrix (numerical, tolerance 1e-10).
  Eigen::Index choi_rank() const;

 private:
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<Mat> kraus_;
  bool trace_preserving_;
};

class POVM {
 public:
  explicit POVM(std::vector<Mat> effects);

  Eigen::Index dim() const noexcept { return effects_.front().rows(); }
  const std::vector<Mat>& effects() const noexcept { return effects_; }

 private:
  std::vector<Mat> effects_;
};

POVM basis_povm(Eigen::Index d);
POVM trivial_povm(Eigen::Index d);
/// Qubit trine: (2/3)|psi_j><psi_j| at Bloch angles 0, 2pi/3, 4pi/3.
POVM trine_povm();

Mat apply_channel(const Channel& phi, const Mat& rho);
/// Adjoint map X -> sum_i K_i^* X K_i.
Mat apply_adjoint(const Channel& phi, const Mat& x);
/// Complementary output [Tr K_i rho K_j^*]_{ij} of the canonical dilation.
Mat apply_complementary(const Channel& phi, const Mat& rho);

/// V = sum_i K_i (x) |i_E>, a (dim_out * env_dim) x dim_in matrix.
Mat stinespring(const Channel& phi);
/// rho -> Tr_B V rho V^*, as a channel into the environment.
Channel complementary(const Channel& phi);
/// Channel with Kraus operators K_j = sum_i u(j, i) K_i for a unitary u: the
/// same map with an isometrically rotated environment.
Channel remix_kraus(const Channel& phi, const Mat& u);

Channel qc_channel(const POVM& povm);
Channel tensor_with_identity(const Channel& phi, Eigen::Index d_r);
/// outer o inner.
Channel compose(const Channel& outer, const Channel& inner);
/// c * phi for 0 <= c <= 1.
Channel scale(const Channel& phi, double c);

Channel identity_channel(Eigen::Index d);
Channel unitary_channel(const Mat& u);
Channel constant_channel(Eigen::Index dim_in, const Mat& sigma);
/// Full dephasing in the computational basis.
Channel dephasing_channel(Eigen::Index d);
/// rho -> (1 - eps) rho + eps diag(rho).
Channel partial_dephasing(Eigen::Index d, double eps);
/// rho -> (1 - p) rho + p Tr(rho) I / d.
Channel depolarizing_channel(Eigen::Index d, double p);

/// Haar isometry dim_in -> dim_out * k sliced into k Kraus operators.
/// Requires dim_out * k >= dim_in.
Channel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index k, std::uint64_t seed);

/// random_channel(dim_in, dim_out, k) o W^*, where W is a Haar isometry from
/// C^dim_in into C^ambient: a trace-non-increasing operation on the ambient
/// space with k Kraus operators.
Channel random_compressed_operation(Eigen::Index ambient, Eigen::Index dim_in, Eigen::Index dim_out,
                                    Eigen::Index k, std::uint64_t seed);

/// Random channel preceded by a contraction with Haar eigenbasis and
/// singular values uniform in [0, 1]: a generic trace-non-increasing map.
Channel random_operation(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index k, std::uint64_t seed);

struct HpMaxEstimate {
  double value = 0.0;  ///< lower estimate of sup over pure inputs of H(Phi(psi))
  Vec witness;
};

/// Multi-start Riemannian ascent of the output entropy over pure inputs.
HpMaxEstimate hp_max_estimate(const Channel& phi, int n_starts, std::uint64_t seed);

}  // namespace faprop
