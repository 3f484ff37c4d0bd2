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

// Balanced transportation problem min <C, X> s.t. X 1 = a, X^T 1 = b, X >= 0,
// solved by the transportation simplex (northwest-corner start, MODI pricing).

#include <Eigen/Dense>

namespace faprop {

struct TransportSolution {
  double cost = 0.0;
  Eigen::MatrixXd plan;
  int pivots = 0;
};

/// supply and demand must be nonnegative with equal sums (to 1e-9 relative);
/// demand is rescaled to match the supply exactly.
TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost);

}  // namespace faprop
