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

// Scalar entropy functions. All logarithms are natural (nats).

#include <cmath>
#include <concepts>

#include "faprop/errors.hpp"

namespace faprop {

/// eta(x) = -x ln x, eta(0) = 0.
template <std::floating_point Real>
Real eta(Real x) {
  if (x < Real(0)) throw DomainError("eta: argument must be nonnegative");
  if (x == Real(0)) return Real(0);
  return -x * std::log(x);
}

/// Binary entropy h2(p) = eta(p) + eta(1-p).
template <std::floating_point Real>
Real h2(Real p) {
  if (!(p >= Real(0) && p <= Real(1))) throw DomainError("h2: argument must lie in [0,1]");
  return eta(p) + eta(Real(1) - p);
}

/// g(x) = (1+x) h2(x/(1+x)) = (1+x) ln(1+x) - x ln x, the entropy of a
/// geometric distribution with mean x. Appears in the truncation bound.
template <std::floating_point Real>
Real bosonic_entropy(Real x) {
  if (x < Real(0)) throw DomainError("g: argument must be nonnegative");
  if (x == Real(0)) return Real(0);
  return (Real(1) + x) * std::log1p(x) - x * std::log(x);
}

}  // namespace faprop
