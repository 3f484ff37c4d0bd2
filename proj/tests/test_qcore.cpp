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

#include "faprop/errors.hpp"
#include "faprop/qcore.hpp"

using namespace faprop;

namespace {

Mat diag(std::initializer_list<double> p) {
  RVec v(static_cast<Eigen::Index>(p.size()));
  Eigen::Index i = 0;
  for (double x : p) v[i++] = x;
  return v.cast<cplx>().asDiagonal();
}

Vec ket(Eigen::Index d, Eigen::Index i) {
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("scalar functions") {
  CHECK(eta(0.0) == 0.0);
  CHECK(eta(1.0) == 0.0);
  CHECK(eta(std::exp(-1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(h2(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(h2(0.0) == 0.0);
  CHECK(bosonic_entropy(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(bosonic_entropy(0.0) == 0.0);
  CHECK_THROWS_AS(eta(-0.1), DomainError);
  CHECK_THROWS_AS(h2(1.5), DomainError);
  // g(x) = (1 + x) h2(x / (1 + x))
  for (double x : {0.01, 0.3, 2.0, 50.0}) CHECK(bosonic_entropy(x) == doctest::Approx((1 + x) * h2(x / (1 + x))).epsilon(1e-12));
}

TEST_CASE("entropy") {
  CHECK(von_neumann_entropy(diag({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(von_neumann_entropy(ket(3, 1) * ket(3, 1).adjoint())) < 1e-14);
  // subnormalized convention: Tr tau H(tau / Tr tau)
  CHECK(von_neumann_entropy(diag({0.25, 0.25})) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  Rng rng(3);
  const Mat u = haar_unitary(3, rng);
  const Mat rho = u * diag({0.5, 0.3, 0.2}) * u.adjoint();
  CHECK(von_neumann_entropy(rho) == doctest::Approx(eta(0.5) + eta(0.3) + eta(0.2)).epsilon(1e-12));
}

TEST_CASE("relative entropy") {
  const RelativeEntropy r = relative_entropy(diag({0.5, 0.5}), diag({0.9, 0.1}));
  CHECK_FALSE(r.infinite);
  CHECK(r.value == doctest::Approx(0.5 * std::log(0.5 / 0.9) + 0.5 * std::log(0.5 / 0.1)).epsilon(1e-12));
  CHECK(relative_entropy(diag({0.5, 0.5}), diag({1.0, 0.0})).infinite);
  CHECK(std::abs(relative_entropy(diag({0.3, 0.7}), diag({0.3, 0.7})).value) < 1e-12);
  CHECK(relative_entropy(diag({1.0, 0.0}), diag({1.0 - 1e-9, 1e-9})).near_singular == false);
}

TEST_CASE("trace distance, fidelity and Bures distance") {
  const Mat zero = ket(2, 0) * ket(2, 0).adjoint();
  const Mat mixed = diag({0.5, 0.5});
  CHECK(bures_distance(zero, mixed) == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(root_fidelity(zero, mixed) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(trace_distance(zero, mixed) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(bures_distance(mixed, mixed)) < 1e-12);

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Vec a = random_pure_state(4, rng), b = random_pure_state(4, rng);
    const double ov = std::abs(a.dot(b));
    const Mat pa = a * a.adjoint(), pb = b * b.adjoint();
    CHECK(root_fidelity(pa, pb) == doctest::Approx(ov).epsilon(1e-9));
    CHECK(bures_distance(pa, pb) == doctest::Approx(std::sqrt(2.0 - 2.0 * ov)).epsilon(1e-9));
    CHECK(trace_distance(pa, pb) == doctest::Approx(std::sqrt(1.0 - ov * ov)).epsilon(1e-9));
  }
  // commuting states: F = sum sqrt(p q)
  CHECK(root_fidelity(diag({0.2, 0.8}), diag({0.6, 0.4})) ==
        doctest::Approx(std::sqrt(0.12) + std::sqrt(0.32)).epsilon(1e-12));
}

TEST_CASE("Bures sandwich on random states") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 2 + t % 4;
    const Mat rho = random_density(d, 1 + t % 3, rng), sigma = random_density(d, 1 + (t / 3) % 3, rng);
    const SandwichRecord s = bures_sandwich(rho, sigma);
    CHECK(s.holds);
    CHECK(s.half_trace_norm <= s.bures + 1e-9);
    CHECK(s.bures <= s.upper + 1e-9);
  }
}

TEST_CASE("kron, partial trace and purification") {
  Rng rng(7);
  const Mat a = random_density(2, 2, rng), b = random_density(3, 2, rng);
  const Mat ab = kron(a, b);
  CHECK((partial_trace(ab, 2, 3, Factor::second) - a).norm() < 1e-12);
  CHECK((partial_trace(ab, 2, 3, Factor::first) - b).norm() < 1e-12);
  CHECK(ab(1 * 3 + 2, 0 * 3 + 1) == a(1, 0) * b(2, 1));

  const Mat rho = random_density(4, 3, rng);
  const Vec psi = purify(rho);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const Mat pp = psi * psi.adjoint();
  CHECK((partial_trace(pp, 4, 4, Factor::second) - rho).norm() < 1e-10);
  // both marginals share the spectrum
  CHECK(von_neumann_entropy(partial_trace(pp, 4, 4, Factor::first)) ==
        doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
}

TEST_CASE("mixing inequality and interlacing") {
  Rng rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 2 + t % 3;
    const Mat rho = random_density(d, d, rng), sigma = random_density(d, 1, rng);
    const double p = u(rng);
    const MixingRecord m = mixing_inequality_check(rho, sigma, p);
    CHECK(m.holds);
    CHECK(m.gap >= -1e-12);
    CHECK(m.upper == doctest::Approx(h2(p)));
    CHECK(mixture_weyl_check(rho, sigma).holds);
  }
}

TEST_CASE("validation") {
  Mat bad(2, 2);
  bad << 1.0, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(require_hermitian(bad), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(diag({1.2, -0.2})), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(diag({0.3, 0.3})), ValidationError);
  CHECK(DensityMatrix(diag({0.3, 0.3}), true).subnormalized());
  CHECK_THROWS_AS(clamped_spectrum(diag({1.1, -0.1})), ValidationError);
  const RVec c = clamped_spectrum(diag({1.0 + 1e-12, -1e-12}));
  CHECK(c.minCoeff() == 0.0);
  CHECK(c.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("seeded sampling") {
  Rng r1(42), r2(42);
  const Mat u1 = haar_unitary(5, r1), u2 = haar_unitary(5, r2);
  CHECK((u1 - u2).norm() == 0.0);
  CHECK((u1.adjoint() * u1 - Mat::Identity(5, 5)).norm() < 1e-12);
  const Mat v = haar_isometry(6, 3, r1);
  CHECK((v.adjoint() * v - Mat::Identity(3, 3)).norm() < 1e-12);
  const Mat rho = random_density(4, 2, r1);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  const RVec ev = clamped_spectrum(rho);
  CHECK(ev[0] < 1e-10);
  CHECK(ev[1] < 1e-10);
}
