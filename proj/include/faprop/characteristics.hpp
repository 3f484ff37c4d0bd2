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

// Entropic characteristics of a channel at an input state, the constrained
// Holevo and privacy optimizers, and the L(C,T,D) class checks.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "faprop/ensembles.hpp"

namespace faprop {

double output_entropy(const Channel& phi, const Mat& rho);
/// H(Phi^(rho)) for the canonical complementary channel.
double entropy_exchange(const Channel& phi, const Mat& rho);
/// I(B:R) of (Phi (x) Id_R)(purification of rho).
double mutual_information(const Channel& phi, const Mat& rho);
/// H(rho) + H(Phi(rho)) - H(Phi^(rho)); agrees with mutual_information.
double mutual_information_identity(const Channel& phi, const Mat& rho);
/// I(B:R) - H(rho).
double coherent_information(const Channel& phi, const Mat& rho);
/// H(Phi(rho)) - H(Phi^(rho)).
double coherent_information_identity(const Channel& phi, const Mat& rho);
/// Mutual information of the q-c channel of the POVM.
double information_gain(const POVM& povm, const Mat& rho);

struct OptimizerBudget {
  int max_iterations = 2000;
  int stall_window = 25;       ///< stop when the gain over this many iterations
  double stall_tolerance = 1e-7;  ///< ... falls below this
  int max_members = 0;         ///< 0: dim^2
  int random_starts = 3;       ///< seeded Stiefel starts besides the eigen-ensemble
  std::uint64_t seed = 1;
};

struct CapacityEstimate {
  double value = 0.0;  ///< lower estimate: the objective at the returned ensemble
  Ensemble ensemble;
  std::vector<double> trace;  ///< objective after each accepted step
  int iterations = 0;
  bool converged = false;
  std::string label = "lower estimate";
};

/// sup chi({p_k, Phi(rho_k)}) over pure-state ensembles with average rho.
/// Riemannian ascent over co-isometries W (rho_k ~ sqrt(rho) w_k w_k^* sqrt(rho))
/// started from the eigen-ensemble, with deterministic member-splitting moves.
CapacityEstimate constrained_holevo(const Channel& phi, const Mat& rho, const OptimizerBudget& budget = {});

/// sup chi_Phi - chi_Phi^ over ensembles of mixed states (blocks of dim
/// columns of W) with average rho. Pure ensembles would make the objective the
/// constant H(Phi(rho)) - H(Phi^(rho)).
CapacityEstimate one_shot_privacy(const Channel& phi, const Mat& rho, const OptimizerBudget& budget = {});

struct ClassLCTD {
  double a = 0.0;  ///< a_f: concavity defect weight
  double b = 0.0;  ///< b_f: convexity defect weight
  double c_minus = 0.0;
  double c_plus = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;

  double C() const { return c_minus + c_plus; }
  double T() const { return t_minus + t_plus; }
  double D() const { return a + b; }
};

using StateFunction = std::function<double(const Mat&)>;

struct Characteristic {
  std::string name;
  Eigen::Index dim_in = 0;
  StateFunction f;
  ClassLCTD claim;
};

Characteristic entropy_characteristic(Eigen::Index d);
/// H(Phi(.)): class (1, ln k, 1) with k the Kraus count.
Characteristic output_entropy_characteristic(const Channel& phi);
Characteristic entropy_exchange_characteristic(const Channel& phi);
Characteristic mutual_information_characteristic(const Channel& phi);
Characteristic coherent_information_characteristic(const Channel& phi);
Characteristic information_gain_characteristic(const POVM& povm);

struct LctdRecord {
  int trials = 0;
  bool holds = true;
  double worst_lower_affinity = 0.0;  ///< min of defect + a h2(p)
  double worst_upper_affinity = 0.0;  ///< min of b h2(p) - defect
  double worst_lower_sandwich = 0.0;  ///< min of f + c- H + t-
  double worst_upper_sandwich = 0.0;  ///< min of c+ H + t+ - f
  std::string counterexample;
};

/// Random (rho, sigma, p) triples, ranks and weights drawn per trial.
LctdRecord verify_lctd(const Characteristic& ch, const ClassLCTD& claim, int trials, std::uint64_t seed,
                       double slack = 1e-8);

/// ||Phi(rho)||_1 f(Phi(rho) / ||Phi(rho)||_1), and 0 when Phi(rho) = 0.
double appendix_f_phi(const StateFunction& f, const Channel& phi, const Mat& rho);

}  // namespace faprop
