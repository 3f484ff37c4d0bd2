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

// Certification sweeps: truncation bounds against sampled channels, ensemble
// truncation convergence, and robustness profiles. Sweeps run in parallel
// over seeds; results are stored by index so output is independent of the
// worker count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "faprop/bounds.hpp"

namespace faprop {

/// Worker count: FAPROP_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by a worker is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

struct ChannelShape {
  Eigen::Index dim_in = 8;
  Eigen::Index dim_out = 4;
  Eigen::Index k = 2;
};

struct TruncationCertConfig {
  Spectrum spectrum = Spectrum::geometric(0.5);
  Grading grading = Grading::linear();
  Eigen::Index ambient = 64;  ///< the test state is the spectrum embedded in this dimension
  std::vector<ChannelShape> shapes = {{8, 4, 2}, {8, 8, 4}};
  std::vector<std::size_t> r_grid = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  int n_seeds = 200;
  std::uint64_t seed = 1;
  /// Any of output_entropy, entropy_exchange, mutual_information, coherent_information.
  std::vector<std::string> characteristics = {"output_entropy", "entropy_exchange", "mutual_information",
                                              "coherent_information"};
  unsigned threads = 0;  ///< 0: worker_count()
};

struct CertificateRow {
  std::uint64_t seed = 0;
  Eigen::Index k = 0;
  Eigen::Index dim = 0;
  Eigen::Index dim_out = 0;
  std::size_t r = 0;
  double delta_r = 0.0;
  double Y = 0.0;
  double observed_gap = 0.0;
  bool pass = false;
  std::string characteristic;
  std::string formula;
};

struct TruncationReport {
  std::vector<CertificateRow> rows;
  std::size_t violations = 0;
  double worst_margin = 0.0;  ///< min over rows of Y - observed_gap
  std::string counterexample;  ///< first violating row, empty when none
  double residual = 0.0;       ///< spectrum weight beyond the ambient dimension
};

/// For each shape and seed, output entropy and entropy exchange are tested on
/// a compressed operation (ambient -> dim_in -> dim_out, k Kraus operators),
/// against Y with (C,T,D) = (1, ln k, 1). Mutual and coherent information are
/// tested on a channel ambient -> dim_out with ceil(ambient/dim_out) Kraus
/// operators, against (2, 0, 2).
TruncationReport certify_truncation(const TruncationCertConfig& config);

struct EnsembleCertConfig {
  Spectrum spectrum = Spectrum::geometric(0.5);
  Eigen::Index dim = 8;  ///< the average state is the spectrum restricted here
  Eigen::Index dim_out = 4;
  Eigen::Index k = 3;
  int n_channels = 50;
  std::vector<std::size_t> n_grid = {1, 2, 3, 4, 5, 6, 7, 8};
  std::uint64_t seed = 1;
  double final_tolerance = 1e-3;
  unsigned threads = 0;
};

struct EnsembleRow {
  std::size_t n = 0;
  double c_n = 0.0;
  double d0 = 0.0;
  double dk = 0.0;
  double chi_gap = 0.0;  ///< sup over channels of |chi(mu_n) - chi(mu)|
  double pi_gap = 0.0;   ///< sup over channels of |pi(mu_n) - pi(mu)|
};

struct EnsembleReport {
  std::vector<EnsembleRow> rows;
  bool chi_monotone = false;
  bool pi_monotone = false;
  bool final_small = false;
  bool pass = false;
  std::string notes;
};

/// mu is the eigen-ensemble of the average state ordered by weight, mu_n its
/// first n members renormalized.
EnsembleReport certify_ensemble(const EnsembleCertConfig& config);

struct RobustnessConfig {
  std::string characteristic = "mutual_information";  ///< or "holevo"
  std::vector<double> eps_grid = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.0};
  double energy = 2.0;  ///< with the grading g_i = i on the qubit
  int n_samples = 256;
  std::uint64_t seed = 1;
};

/// Identity qubit channel against the partial dephasing family; the
/// characteristic is I at I/2 or chi of the ensemble {|+>, |->}.
RobustnessProfile dephasing_robustness(const RobustnessConfig& config);

}  // namespace faprop
