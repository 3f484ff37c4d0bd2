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

#include "faprop/characteristics.hpp"
#include "faprop/errors.hpp"

using namespace faprop;

namespace {

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("characteristics of standard channels") {
  Rng rng(12);
  const Mat rho = random_density(3, 3, rng);
  const double h = von_neumann_entropy(rho);
  const Channel id = identity_channel(3);
  CHECK(output_entropy(id, rho) == doctest::Approx(h).epsilon(1e-12));
  CHECK(std::abs(entropy_exchange(id, rho)) < 1e-10);
  CHECK(mutual_information(id, rho) == doctest::Approx(2 * h).epsilon(1e-9));
  CHECK(coherent_information(id, rho) == doctest::Approx(h).epsilon(1e-9));

  const Mat half = diag2(0.5, 0.5);
  const double ln2 = std::log(2.0);
  CHECK(mutual_information(dephasing_channel(2), half) == doctest::Approx(ln2).epsilon(1e-10));
  CHECK(std::abs(coherent_information(dephasing_channel(2), half)) < 1e-10);

  const Mat sigma = random_density(2, 2, rng);
  const Channel c = constant_channel(3, sigma);
  CHECK(std::abs(mutual_information(c, rho)) < 1e-9);
  CHECK(coherent_information(c, rho) == doctest::Approx(-h).epsilon(1e-9));
  CHECK(output_entropy(c, rho) == doctest::Approx(von_neumann_entropy(sigma)).epsilon(1e-12));

  // depolarizing qubit at I/2: I = 2 ln 2 - H(Choi state)
  for (double p : {0.1, 0.5, 0.9}) {
    const double choi = eta(1 - 0.75 * p) + 3 * eta(0.25 * p);
    CHECK(mutual_information(depolarizing_channel(2, p), half) == doctest::Approx(2 * ln2 - choi).epsilon(1e-9));
  }
}

TEST_CASE("mutual and coherent information identities") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const Channel phi = random_channel(3, 2 + t % 3, 2 + t % 3, 100 + t);
    const Mat rho = random_density(3, 1 + t % 3, rng);
    CHECK(mutual_information(phi, rho) == doctest::Approx(mutual_information_identity(phi, rho)).epsilon(1e-8));
    CHECK(coherent_information(phi, rho) == doctest::Approx(coherent_information_identity(phi, rho)).epsilon(1e-8));
    CHECK(coherent_information(phi, rho) <= von_neumann_entropy(rho) + 1e-10);
    CHECK(mutual_information(phi, rho) <= 2 * von_neumann_entropy(rho) + 1e-10);
  }
}

TEST_CASE("information gain") {
  Rng rng(14);
  const Mat rho = random_density(3, 3, rng);
  // rank-one POVMs leave pure posteriors, so IG = H(rho)
  CHECK(information_gain(basis_povm(3), rho) == doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
  CHECK(std::abs(information_gain(trivial_povm(3), rho)) < 1e-10);
  CHECK(information_gain(trine_povm(), diag2(0.5, 0.5)) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("trace-weighted characteristic of an operation") {
  Rng rng(15);
  const Mat rho = random_density(2, 2, rng);
  const Channel phi = random_channel(2, 2, 2, 3);
  const StateFunction h = [](const Mat& m) { return von_neumann_entropy(m); };
  const Mat out = apply_channel(phi, rho);
  CHECK(appendix_f_phi(h, scale(phi, 0.3), rho) == doctest::Approx(0.3 * von_neumann_entropy(out)).epsilon(1e-10));
  CHECK(appendix_f_phi(h, scale(phi, 0.0), rho) == 0.0);
}

TEST_CASE("constrained Holevo and privacy estimates") {
  Rng rng(16);
  for (Eigen::Index d : {2, 3}) {
    const Mat rho = random_density(d, d, rng);
    const double h = von_neumann_entropy(rho);
    const CapacityEstimate hol = constrained_holevo(identity_channel(d), rho);
    CHECK(hol.value == doctest::Approx(h).epsilon(1e-4));
    CHECK(hol.value <= h + 1e-9);
    CHECK(holevo_quantity(identity_channel(d), hol.ensemble) == doctest::Approx(hol.value).epsilon(1e-9));
    CHECK((hol.ensemble.average() - rho).norm() < 1e-8);
    const CapacityEstimate pri = one_shot_privacy(identity_channel(d), rho);
    CHECK(pri.value == doctest::Approx(h).epsilon(1e-4));
    CHECK(privacy(identity_channel(d), pri.ensemble) == doctest::Approx(pri.value).epsilon(1e-9));
  }
  const Mat half = diag2(0.5, 0.5);
  CHECK(constrained_holevo(dephasing_channel(2), half).value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  Rng r2(1);
  CHECK(std::abs(constrained_holevo(constant_channel(2, random_density(2, 2, r2)), half).value) < 1e-9);
  // dephasing and its complement are the same map, so pi vanishes
  CHECK(std::abs(one_shot_privacy(dephasing_channel(2), half).value) < 1e-6);

  const Channel phi = random_channel(3, 2, 2, 5);
  const Mat rho = random_density(3, 3, rng);
  const CapacityEstimate est = constrained_holevo(phi, rho);
  CHECK(est.value <= output_entropy(phi, rho) + 1e-9);
  CHECK(est.value >= holevo_quantity(phi, random_ensemble_with_average(rho, 9, rng)) - 1e-3);
  for (std::size_t i = 1; i < est.trace.size(); ++i) CHECK(est.trace[i] >= est.trace[i - 1] - 1e-12);
}

TEST_CASE("class membership checks") {
  const Channel phi = random_channel(3, 3, 2, 31);
  CHECK(verify_lctd(entropy_characteristic(3), {0, 1, 0, 1, 0, 0}, 200, 1).holds);
  for (const Characteristic& ch : {output_entropy_characteristic(phi), entropy_exchange_characteristic(phi),
                                   mutual_information_characteristic(phi), coherent_information_characteristic(phi),
                                   information_gain_characteristic(trine_povm())}) {
    const LctdRecord rec = verify_lctd(ch, ch.claim, 200, 2);
    CHECK_MESSAGE(rec.holds, ch.name << ": " << rec.counterexample);
    CHECK(rec.trials == 200);
  }
  const Characteristic oe = output_entropy_characteristic(phi);
  CHECK(oe.claim.C() == 1.0);
  CHECK(oe.claim.T() == doctest::Approx(std::log(2.0)));
  CHECK(oe.claim.D() == 1.0);
  CHECK(mutual_information_characteristic(phi).claim.C() == 2.0);
  CHECK(mutual_information_characteristic(phi).claim.D() == 2.0);
  // a wrong claim is caught: H is not in L(0, 0, 0)
  CHECK_FALSE(verify_lctd(entropy_characteristic(3), {}, 200, 3).holds);
}
