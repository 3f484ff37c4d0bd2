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

// Explicit continuity bounds for truncations of infinite-rank states, the
// capacity envelopes that follow from them, and lower estimates of the
// energy-constrained Bures distance between channels.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "faprop/characteristics.hpp"
#include "faprop/gibbs.hpp"

namespace faprop {

struct TruncationBound {
  std::size_t r = 0;
  std::size_t r0 = 0;
  double delta_r = 0.0;  ///< tail weight outside the r largest eigenvalues (+ any residual)
  double energy = 0.0;   ///< E_rho = sum_i lambda_i g_i
  double C = 0.0, T = 0.0, D = 0.0;
  double fg = 0.0;       ///< F_G(E_rho / delta_r)
  double Y = 0.0;
};

/// min { r : g_r > energy } (1-based).
std::size_t first_level_above(const Grading& grading, double energy);

/// Y = sqrt(2 delta_r) [C F_G(E/delta_r) + T] + D g(sqrt(2 delta_r)), where
/// g(x) = (1+x) h2(x/(1+x)). `residual` is added to delta_r, e.g. the weight
/// lost by embedding an infinite spectrum in finite dimension.
TruncationBound theorem2_bound(const Spectrum& spectrum, const Grading& grading, std::size_t r, double C,
                               double T, double D, double residual = 0.0);

/// theorem2_bound over a grid; throws std::logic_error if Y increases along
/// an increasing grid.
std::vector<TruncationBound> theorem2_curve(const Spectrum& spectrum, const Grading& grading,
                                            const std::vector<std::size_t>& r_grid, double C, double T,
                                            double D, double residual = 0.0);

struct CapacityEnvelope {
  double holevo = 0.0;   ///< |C(Phi,rho) - C(Phi,rho_r)| <= max(B, (1-c) H(rho_r))
  double privacy = 0.0;  ///< |Cp(Phi,rho) - Cp(Phi,rho_r)| <= max(2B, (1-c) H(rho_r) + h2(c))
  double holevo_lower_gap = 0.0;   ///< (1-c) H(rho_r)
  double privacy_upper_gap = 0.0;  ///< (1-c) H(rho_r) + h2(c)
};

/// B is supplied by the caller (an empirical sup over sampled channels in the
/// experiments); c_r in (0, 1].
CapacityEnvelope prop2_capacity_bounds(double entropy_rho_r, double c_r, double B);

/// ||rho^ - rho^_r||_1 = 2 sqrt(1 - c_r) for the canonical purifications.
double purification_truncation_distance(double c_r);

struct BuresWitness {
  RVec schmidt;  ///< Schmidt coefficients
  Mat basis;     ///< input-side Schmidt vectors as columns
  double energy = 0.0;
};

struct EcBuresEstimate {
  double value = 0.0;  ///< lower bound on the energy-constrained Bures distance
  double energy = 0.0;
  int samples = 0;
  std::vector<double> running_max;
  BuresWitness best_witness;
};

/// Bures distance between (Phi (x) Id)(psi) and (Psi (x) Id)(psi) for the
/// purification psi = sum_i sqrt(l_i) |basis_i> (x) |i>.
double bures_on_witness(const Channel& phi, const Channel& psi, const BuresWitness& w);

/// Max over a seeded sample of pure inputs with Tr G rho_A <= E, plus the
/// purifications of Gibbs states at 16 energies up to E. G is the grading
/// restricted to the first dim_in levels, diagonal in the computational basis.
EcBuresEstimate ecbures_estimate(const Channel& phi, const Channel& psi, const Grading& grading, double energy,
                                 int n_samples, std::uint64_t seed);

struct RobustnessRow {
  double eps = 0.0;
  double bures_lower = 0.0;
  double gap = 0.0;
};

struct RobustnessProfile {
  std::vector<RobustnessRow> rows;  ///< sorted by decreasing eps
  bool pass = false;
  std::string verdict;
};

/// Rows (eps, ecbures(Phi, Psi_eps), |f(Phi) - f(Psi_eps)|). The verdict is
/// "pass" when both columns decrease strictly as eps decreases and vanish at
/// eps = 0 (1e-10). The same seed is used for every eps.
RobustnessProfile robustness_profile(const Channel& phi, const std::function<Channel(double)>& family,
                                     const std::function<double(const Channel&)>& characteristic,
                                     const Grading& grading, double energy, std::vector<double> eps_grid,
                                     int n_samples, std::uint64_t seed);

}  // namespace faprop
