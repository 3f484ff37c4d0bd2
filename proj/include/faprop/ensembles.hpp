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

// Discrete ensembles {p_k, rho_k}, their Holevo quantities through channels,
// truncations and distances between ensembles.

#include <string>
#include <vector>

#include "faprop/channels.hpp"
#include "faprop/transport.hpp"

namespace faprop {

struct Member {
  double p = 0.0;
  Mat rho;
};

/// Probabilities sum to 1 (1e-10), members are states of a common dimension.
/// Zero-weight members are allowed so that index-aligned constructions keep
/// their positions.
class Ensemble {
 public:
  explicit Ensemble(std::vector<Member> members);

  const std::vector<Member>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  Eigen::Index dim() const noexcept { return average_.rows(); }
  const Mat& average() const noexcept { return average_; }

 private:
  std::vector<Member> members_;
  Mat average_;
};

/// Ensemble of pure states sqrt(rho) w_k for the columns w_k of a co-isometry
/// W (W W^* = I), here W = U^* for a Haar isometry U of size m x d.
Ensemble random_ensemble_with_average(const Mat& rho, Eigen::Index m, Rng& rng);
/// m random mixed states of rank up to `rank` with Dirichlet(1) weights.
Ensemble random_ensemble(Eigen::Index d, Eigen::Index m, Eigen::Index rank, Rng& rng);

/// chi = H(Phi(avg)) - sum_k p_k H(Phi(rho_k)).
double holevo_quantity(const Channel& phi, const Ensemble& mu);
/// chi = sum_k p_k H(Phi(rho_k) || Phi(avg)).
double holevo_quantity_relative(const Channel& phi, const Ensemble& mu);
/// chi through the complementary channel of the canonical dilation.
double holevo_quantity_complementary(const Channel& phi, const Ensemble& mu);
/// pi = chi_Phi - chi_Phi^.
double privacy(const Channel& phi, const Ensemble& mu);

/// {p_k / c_n, rho_k}_{k < n} with c_n = sum_{k<n} p_k.
Ensemble truncate_ensemble(const Ensemble& mu, std::size_t n);

/// (1/2) sum_k ||p_k rho_k - q_k sigma_k||_1 over aligned indices; members
/// past the end of the shorter list count as zero weight.
double d0_distance(const Ensemble& mu, const Ensemble& nu);

/// Optimal transport distance with ground cost (1/2)||rho_i - sigma_j||_1.
double kantorovich_distance(const Ensemble& mu, const Ensemble& nu);
/// The cost matrix used by kantorovich_distance.
Eigen::MatrixXd trace_distance_costs(const Ensemble& mu, const Ensemble& nu);

/// Projector onto the eigenvectors of the r largest eigenvalues of m.
Mat top_projector(const Mat& m, Eigen::Index r);

struct ProjectedEnsemble {
  Ensemble ensemble;         ///< index aligned with the input; dropped members carry p = 0
  double kept_trace = 0.0;   ///< Tr P_r avg
  std::size_t dropped = 0;
};

/// p^_k = p_k Tr P rho_k / Tr P avg, rho^_k = P rho_k P / Tr P rho_k, with P
/// the projector onto the top r eigenvectors of the average.
ProjectedEnsemble spectral_projection_ensemble(const Ensemble& mu, Eigen::Index r);

struct DonaldRecord {
  bool skipped = false;
  std::string notes;
  double c_r = 0.0;
  double chi_truncated = 0.0;   ///< chi({p_k, Phi(rho_k)}), ensemble averaging to rho_r
  double chi_augmented = 0.0;   ///< chi of the augmented ensemble averaging to rho
  double decomposition = 0.0;   ///< right-hand side of Donald's identity
  double identity_residual = 0.0;
  bool lower_holds = false;     ///< c_r chi_trunc <= chi_aug
  bool upper_holds = false;     ///< chi_aug <= c_r chi_trunc + h2(c_r)
};

/// Builds {1 - c_r, (rho - c_r rho_r)/(1 - c_r)} u {c_r p_k, rho_k} from a
/// state rho and an ensemble mu with average rho_r = P_r rho P_r / c_r, then
/// checks Donald's identity and the two-sided bound it implies.
DonaldRecord donald_decomposition_check(const Channel& phi, const Mat& rho, const Ensemble& mu,
                                        double slack = 1e-8);

enum class ContinuousFamily {
  circle,     ///< (|0> + e^{i theta}|1>)/sqrt2, theta uniform
  point,      ///< a single state
  two_point,  ///< two states with weights w, 1 - w
};

struct ContinuousEnsembleSpec {
  ContinuousFamily family = ContinuousFamily::circle;
  int resolution = 8;          ///< cells have trace-distance diameter < 1/resolution
  int samples = 4096;          ///< midpoint grid size for the circle family
  std::vector<Mat> states;     ///< point / two_point family states
  double weight = 0.5;         ///< two_point weight of the first state
};

/// Greedy covering of the sampled family by trace-distance balls of radius
/// 1/(2n); each cell becomes one member at its barycenter.
Ensemble discretize_continuous(const ContinuousEnsembleSpec& spec);

}  // namespace faprop
