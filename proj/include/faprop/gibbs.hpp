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

// Partition functions and Gibbs (maximum entropy) states of diagonal
// Hamiltonians G = sum_i g_i |i><i| given by a Grading.

#include <string>
#include <vector>

#include "faprop/spectra.hpp"

namespace faprop {

struct GibbsSolve {
  double beta = 0.0;
  double log_partition = 0.0;
  double mean_energy = 0.0;
  double entropy = 0.0;
  std::size_t truncation_n = 0;  ///< number of levels summed explicitly
  double tail_bound = 0.0;       ///< estimated absolute error of log_partition
};

/// Thermodynamic quantities at a fixed inverse temperature.
GibbsSolve gibbs_at(const Grading& grading, double beta);

/// ln sum_i exp(-beta g_i). Throws DivergenceError where the sum is infinite.
double log_partition(const Grading& grading, double beta);

/// First n Gibbs probabilities exp(-beta g_i) / Z.
std::vector<double> gibbs_probabilities(const Grading& grading, double beta, std::size_t n);

enum class HCondVerdict { consistent_with_1, fails, inconclusive };
const char* to_string(HCondVerdict v);

struct HCondPlusReport {
  std::vector<double> betas;
  std::vector<double> values;  ///< beta ln Z(beta); +inf where Z diverges
  double tail_slope = 0.0;     ///< min log-log slope over the last two intervals
  HCondVerdict verdict = HCondVerdict::inconclusive;
};

/// The decreasing grid 1e-1, ..., 1e-6.
std::vector<double> standard_beta_grid();

/// Samples beta ln Z(beta) as beta -> 0. [Z]^beta -> 1 iff these values tend to 0;
/// the verdict asks for strictly decreasing values with power-law decay
/// (log-log slope >= 0.2) and reports failure for stalled decay (slope < 0.05)
/// or divergence.
HCondPlusReport check_hcond_plus(const Grading& grading, const std::vector<double>& beta_grid);

/// F_G(E) = sup { H(rho) : Tr G rho <= E }, attained by the Gibbs state with
/// mean energy E, or by the uniform state when E exceeds its energy.
GibbsSolve f_g(const Grading& grading, double energy);

struct SublinearityProbe {
  std::vector<double> energies;
  std::vector<double> values;  ///< F_G(E)
  std::vector<double> ratios;  ///< F_G(E) / sqrt(E)
  bool decreasing_tail = false;
  std::string verdict;
};

SublinearityProbe f_g_sublinearity_probe(const Grading& grading, const std::vector<double>& energies);

}  // namespace faprop
