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

#include <doctest.h>

#include <cmath>
#include <string>

#include "faprop/bounds.hpp"
#include "faprop/certificates.hpp"
#include "faprop/errors.hpp"

using namespace faprop;

namespace {

double g_oracle(double x) { return x == 0.0 ? 0.0 : (1 + x) * std::log(1 + x) - x * std::log(x); }

// F_G for g_i = i at mean energy e: beta = ln(e / (e - 1)), F = beta e - ln(e^beta - 1)
double fg_linear(double e) {
  const double beta = std::log(e / (e - 1.0));
  return beta * e - std::log(std::expm1(beta));
}

}  // namespace

TEST_CASE("first level above an energy") {
  CHECK(first_level_above(Grading::linear(), 2.0) == 3);
  CHECK(first_level_above(Grading::linear(), 2.5) == 3);
  CHECK(first_level_above(Grading::linear(), 0.0) == 1);
  const Grading ex = Grading::explicit_levels({0, 1, 1, 5});
  CHECK(first_level_above(ex, 1.0) == 4);
  CHECK(first_level_above(ex, -1.0) == 1);
  CHECK_THROWS_AS(first_level_above(ex, 5.0), DomainError);
  const Grading pl = Grading::polylog(3.0);
  for (double e : {0.5, 3.0, 40.0, 300.0}) {
    std::size_t r = 1;
    while (!(pl[r - 1] > e)) ++r;
    CHECK(first_level_above(pl, e) == r);
  }
}

TEST_CASE("truncation bound examples") {
  const Spectrum s = Spectrum::geometric(0.5);
  const TruncationBound b = theorem2_bound(s, Grading::linear(), 10, 1, 0, 1);
  CHECK(b.r0 == 3);
  CHECK(b.energy == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.delta_r == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-12));
  CHECK(b.fg == doctest::Approx(fg_linear(2048.0)).epsilon(1e-9));
  CHECK(b.fg == doctest::Approx(8.625).epsilon(1e-3));
  const double x = std::sqrt(2.0 * std::ldexp(1.0, -10));
  CHECK(b.Y == doctest::Approx(x * fg_linear(2048.0) + g_oracle(x)).epsilon(1e-9));
  CHECK(b.Y == doctest::Approx(0.56).epsilon(1e-2));

  const TruncationBound t = theorem2_bound(s, Grading::linear(), 7, 0, 0.3, 0);
  CHECK(t.Y == doctest::Approx(0.3 * std::sqrt(2.0 * std::ldexp(1.0, -7))).epsilon(1e-12));

  // the embedding residual enters delta
  const TruncationBound e = theorem2_bound(s, Grading::linear(), 10, 1, 0, 1, 1e-6);
  CHECK(e.delta_r == doctest::Approx(std::ldexp(1.0, -10) + 1e-6).epsilon(1e-12));
  CHECK(e.Y > b.Y);
}

TEST_CASE("truncation bound errors") {
  const Spectrum s = Spectrum::geometric(0.5);
  try {
    theorem2_bound(s, Grading::linear(), 2, 1, 0, 1);
    FAIL("expected a domain error");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()).find("r0 = 3") != std::string::npos);
  }
  CHECK_THROWS_AS(theorem2_bound(Spectrum::powerlog(2.0), Grading::linear(), 10, 1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(theorem2_bound(s, Grading::linear(), 10, -1, 0, 1), DomainError);
}

TEST_CASE("truncation bound curve decreases to zero") {
  std::vector<std::size_t> grid;
  for (std::size_t r = 3; r <= 60; ++r) grid.push_back(r);
  // the polylog grading has a much larger F_G, so its curve decays slower
  for (auto [g, last] : {std::pair{Grading::linear(), 1e-6}, std::pair{Grading::polylog(3.0), 1e-2}}) {
    const auto curve = theorem2_curve(Spectrum::geometric(0.5), g, grid, 2, 0, 2);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].Y <= curve[i - 1].Y);
    CHECK(curve.back().Y < last);
  }
}

TEST_CASE("capacity envelopes") {
  const CapacityEnvelope one = prop2_capacity_bounds(0.7, 1.0, 0.2);
  CHECK(one.holevo == 0.2);
  CHECK(one.privacy == 0.4);
  const CapacityEnvelope a = prop2_capacity_bounds(std::log(2.0), 0.99, 0.1);
  CHECK(a.holevo == doctest::Approx(0.1));
  CHECK(a.holevo_lower_gap == doctest::Approx(0.01 * std::log(2.0)).epsilon(1e-12));
  CHECK(a.privacy_upper_gap == doctest::Approx(0.01 * std::log(2.0) + h2(0.99)).epsilon(1e-12));
  CHECK(a.privacy == doctest::Approx(std::max(0.2, a.privacy_upper_gap)));
  CHECK(prop2_capacity_bounds(1.3, 0.8, 0.0).holevo == doctest::Approx(0.2 * 1.3).epsilon(1e-12));
  CHECK_THROWS_AS(prop2_capacity_bounds(1.0, 0.0, 0.1), DomainError);
  CHECK(purification_truncation_distance(1.0) == 0.0);
  CHECK(purification_truncation_distance(0.75) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("energy-constrained Bures estimate") {
  const Grading lin = Grading::linear();  // levels 1, 2 on a qubit
  const Channel id = identity_channel(2);
  CHECK(ecbures_estimate(id, id, lin, 2.0, 64, 1).value < 1e-7);
  Mat phase = Mat::Identity(2, 2) * std::polar(1.0, 0.7);
  CHECK(ecbures_estimate(id, unitary_channel(phase), lin, 2.0, 64, 1).value < 1e-7);
  CHECK_THROWS_AS(ecbures_estimate(id, id, lin, 1.0, 16, 1), InfeasibleError);

  for (double eps : {1.0, 0.5, 0.1}) {
    const EcBuresEstimate est = ecbures_estimate(id, partial_dephasing(2, eps), lin, 2.0, 128, 3);
    // Bell input: fidelity sqrt(1 - eps/2)
    const double bell = std::sqrt(2.0 - 2.0 * std::sqrt(1.0 - eps / 2.0));
    CHECK(est.value >= bell - 1e-10);
    CHECK(est.value <= std::sqrt(2.0));
    CHECK(bures_on_witness(id, partial_dephasing(2, eps), est.best_witness) ==
          doctest::Approx(est.value).epsilon(1e-10));
    CHECK(std::abs(bures_on_witness(id, partial_dephasing(2, eps), est.best_witness) - est.value) < 1e-10);
    CHECK(est.best_witness.energy <= 2.0 + 1e-12);
    CHECK(est.samples == static_cast<int>(est.running_max.size()));
    for (std::size_t i = 1; i < est.running_max.size(); ++i) CHECK(est.running_max[i] >= est.running_max[i - 1]);
  }

  // a tight constraint keeps every witness below the energy
  const Channel phi = random_channel(3, 3, 2, 4), psi = random_channel(3, 3, 2, 5);
  const EcBuresEstimate tight = ecbures_estimate(phi, psi, lin, 1.4, 128, 9);
  CHECK(tight.best_witness.energy <= 1.4 + 1e-12);
  CHECK(tight.best_witness.schmidt.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bures_on_witness(phi, psi, tight.best_witness) == doctest::Approx(tight.value).epsilon(1e-10));
  // nested samples: a larger budget with the same seed cannot lower the value
  CHECK(ecbures_estimate(phi, psi, lin, 1.4, 256, 9).value >= tight.value);
}

TEST_CASE("robustness profiles under partial dephasing") {
  for (const char* ch : {"mutual_information", "holevo"}) {
    RobustnessConfig cfg;
    cfg.characteristic = ch;
    cfg.n_samples = 64;
    const RobustnessProfile prof = dephasing_robustness(cfg);
    CHECK(prof.pass);
    CHECK(prof.verdict == "pass");
    REQUIRE(prof.rows.size() == cfg.eps_grid.size());
    for (const RobustnessRow& row : prof.rows) {
      CHECK(row.gap == doctest::Approx(h2(row.eps / 2.0)).epsilon(1e-9));
      CHECK(row.bures_lower >= std::sqrt(2.0 - 2.0 * std::sqrt(1.0 - row.eps / 2.0)) - 1e-10);
    }
    CHECK(prof.rows.back().eps == 0.0);
    CHECK(prof.rows.back().gap < 1e-10);
  }
}

TEST_CASE("robustness verdict fails on a flat characteristic gap") {
  const Channel id = identity_channel(2);
  const RobustnessProfile prof = robustness_profile(
      id, [](double eps) { return partial_dephasing(2, eps); }, [](const Channel&) { return 0.0; },
      Grading::linear(), 2.0, {0.5, 0.25, 0.0}, 16, 1);
  CHECK_FALSE(prof.pass);
  CHECK(prof.verdict.rfind("fail", 0) == 0);
}
