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
#include <random>

#include "faprop/errors.hpp"
#include "faprop/spectra.hpp"

using namespace faprop;

namespace {

// Direct sum of a geometric pairing, far past double precision.
double geometric_pairing_direct(double s, double (*g)(double)) {
  double acc = 0.0;
  for (int i = 1; i <= 4000; ++i) acc += (1.0 - s) * std::pow(s, i - 1) * g(i);
  return acc;
}

Spectrum random_finite(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double t = 0.0;
  for (double& x : p) t += (x = e(rng));
  for (double& x : p) x /= t;
  return Spectrum::finite(p);
}

}  // namespace

TEST_CASE("truncate renormalizes the head") {
  const Spectrum g = Spectrum::geometric(0.5);
  const Spectrum t1 = truncate(g, 1);
  CHECK(t1.probabilities().size() == 1);
  CHECK(t1[0] == doctest::Approx(1.0).epsilon(1e-15));
  const Spectrum t2 = truncate(g, 2);
  CHECK(t2[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(t2[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const Spectrum f = truncate(Spectrum::finite({0.5, 0.3, 0.2}), 2);
  CHECK(f[0] == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(f.tail(2) == 0.0);
  CHECK_THROWS_AS(truncate(Spectrum::finite({0.5, 0.5}), 3), RankExceededError);
}

TEST_CASE("tail sums") {
  const Spectrum g = Spectrum::geometric(0.5);
  CHECK(g.tail(10) == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-13));
  CHECK(g.tail(0) == 1.0);
  CHECK(Spectrum::finite({0.5, 0.3, 0.2}).tail(2) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(Spectrum::powerlog(3.0).tail(0) == doctest::Approx(1.0).epsilon(1e-12));
  // nonincreasing, and matches partial sums of the entries
  const Spectrum p = Spectrum::powerlog(3.0);
  double acc = 0.0, prev = 1.0;
  for (std::size_t r = 0; r < 200; ++r) {
    CHECK(p.tail(r) <= prev + 1e-15);
    CHECK(p.tail(r) == doctest::Approx(1.0 - acc).epsilon(1e-9));
    prev = p.tail(r);
    acc += p[r];
  }
}

TEST_CASE("powerlog normalization against a brute-force sum") {
  // sum_{i<=N} 1/(i ln^3(i+1)) + integral tail 1/(2 ln^2 (N+1)) (upper) / 1/(2 ln^2(N+2)) (lower)
  const int n = 2000000;
  double s = 0.0;
  for (int i = n; i >= 1; --i) s += 1.0 / (i * std::pow(std::log(i + 1.0), 3));
  const double lo = s + 0.5 / std::pow(std::log(n + 2.0), 2);
  const double hi = s + 0.5 / std::pow(std::log(n + 1.0), 2);
  const double l1 = Spectrum::powerlog(3.0)[0];  // 1 / (Z ln^3 2)
  const double z = 1.0 / (l1 * std::pow(std::log(2.0), 3));
  CHECK(z >= lo - 1e-6);
  CHECK(z <= hi + 1e-6);
}

TEST_CASE("pairing energy") {
  CHECK(pairing_energy(Spectrum::geometric(0.5), Grading::linear()).value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pairing_energy(Spectrum::finite({1.0}), Grading::polylog(3.0)).value == 0.0);
  const PairingEnergy d = pairing_energy(Spectrum::powerlog(3.0), Grading::polylog(3.0));
  CHECK(d.verdict == SeriesVerdict::diverges);
  CHECK(std::isinf(d.value));
  // partial sums keep growing like ln N in the recorded evidence
  REQUIRE(d.evidence.size() >= 2);
  CHECK(d.evidence.back().value > d.evidence.front().value);

  const double direct = geometric_pairing_direct(0.5, [](double i) { return std::pow(std::log(i), 3); });
  const PairingEnergy pe = pairing_energy(Spectrum::geometric(0.5), Grading::polylog(3.0));
  CHECK(pe.finite());
  CHECK(pe.value == doctest::Approx(direct).epsilon(1e-12));
  CHECK(pairing_energy(Spectrum::powerlog(3.0), Grading::linear()).verdict == SeriesVerdict::diverges);
}

TEST_CASE("sufficient condition and power domination") {
  CHECK(check_spcond(Spectrum::geometric(0.5), 3.0).verdict == Verdict::holds);
  CHECK(check_spcond(Spectrum::finite({0.7, 0.3}), 2.5).verdict == Verdict::holds);
  CHECK(check_spcond(Spectrum::powerlog(3.0), 3.0).verdict == Verdict::fails);
  CHECK_THROWS_AS(check_spcond(Spectrum::geometric(0.5), 2.0), DomainError);

  const PowerDominatedReport g = check_power_dominated(Spectrum::geometric(0.5), 0.5);
  CHECK(g.verdict == Verdict::holds);
  double direct = 0.0;
  for (int i = 1; i <= 400; ++i) direct += std::pow(std::pow(0.5, i), 0.5);
  CHECK(g.trace_power == doctest::Approx(direct).epsilon(1e-12));
  CHECK(g.spcond_cross_check == Verdict::holds);
  CHECK(check_power_dominated(Spectrum::finite({0.6, 0.4}), 0.3).verdict == Verdict::holds);
  CHECK(check_power_dominated(Spectrum::powerlog(3.0), 0.9).verdict == Verdict::fails);
}

TEST_CASE("power domination implies the sufficient condition over a corpus") {
  std::mt19937_64 rng(7);
  std::vector<Spectrum> corpus = {Spectrum::geometric(0.1), Spectrum::geometric(0.5), Spectrum::geometric(0.9),
                                  Spectrum::powerlog(2.0), Spectrum::powerlog(5.0)};
  for (int k = 0; k < 10; ++k) corpus.push_back(random_finite(rng, 3 + k));
  for (const Spectrum& s : corpus)
    for (double q : {0.3, 0.6, 0.9})
      if (check_power_dominated(s, q).verdict == Verdict::holds) CHECK(check_spcond(s, 3.0).verdict == Verdict::holds);
}

TEST_CASE("majorization") {
  using O = Majorization::Outcome;
  CHECK(majorizes(Spectrum::finite({1.0, 0.0}), Spectrum::finite({0.5, 0.5}), 2).outcome == O::majorizes);
  CHECK(majorizes(Spectrum::geometric(0.5), Spectrum::geometric(0.5), 100).outcome == O::majorizes);
  const Majorization f = majorizes(Spectrum::finite({0.6, 0.4}), Spectrum::finite({0.7, 0.3}), 2);
  CHECK(f.outcome == O::fails_at);
  CHECK(f.n == 1);
  // antisymmetry on distinct spectra
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Spectrum a = random_finite(rng, 5), b = random_finite(rng, 5);
    const bool ab = majorizes(a, b, 5).outcome == O::majorizes;
    const bool ba = majorizes(b, a, 5).outcome == O::majorizes;
    if (!(a == b)) CHECK_FALSE((ab && ba));
  }
}

TEST_CASE("majorization orders pairing energies") {
  // a majorizes b and g nondecreasing => sum a_i g_i <= sum b_i g_i
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Spectrum a = random_finite(rng, 6), b = random_finite(rng, 6);
    if (majorizes(a, b, 6).outcome != Majorization::Outcome::majorizes) continue;
    for (const Grading& g : {Grading::linear(), Grading::polylog(3.0)}) {
      CHECK(pairing_energy(a, g).value <= pairing_energy(b, g).value + 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 0);
  CHECK(pairing_energy(Spectrum::geometric(0.3), Grading::linear()).value <=
        pairing_energy(Spectrum::geometric(0.5), Grading::linear()).value);
}

TEST_CASE("mixture spectrum interlacing") {
  const WeylRecord r = mixture_spectrum_bound(Spectrum::finite({0.5, 0.5}), Spectrum::finite({1.0, 0.0}), 1);
  CHECK(r.holds);
  CHECK(r.worst_margin >= -1e-15);
  const WeylRecord same = mixture_spectrum_bound(Spectrum::geometric(0.5), Spectrum::geometric(0.5), 20);
  CHECK(same.holds);
  CHECK(same.worst_margin == doctest::Approx(0.0).epsilon(1e-15));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Spectrum a = random_finite(rng, 64), b = random_finite(rng, 64);
    // brute-force oracle: merge and sort
    std::vector<double> w;
    for (std::size_t i = 0; i < 64; ++i) {
      w.push_back(0.5 * a[i]);
      w.push_back(0.5 * b[i]);
    }
    std::sort(w.rbegin(), w.rend());
    for (std::size_t i = 0; i + 1 < 64; ++i) {
      CHECK(2.0 * w[2 * i] <= a[i] + b[i] + 1e-15);
      CHECK(2.0 * w[2 * i + 1] <= a[i] + b[i] + 1e-15);
    }
    CHECK(mixture_spectrum_bound(a, b, 64).holds);
  }
}

TEST_CASE("mixture grading") {
  const MixtureGrading m = mixture_grading(Spectrum::geometric(0.5), Grading::linear(), Spectrum::geometric(0.5),
                                           Grading::linear(), 64);
  REQUIRE(m.levels.size() >= 6);
  const double expect[6] = {1, 1, 2, 2, 3, 3};
  for (int i = 0; i < 6; ++i) CHECK(m.levels[i] == expect[i]);
  CHECK(m.within_bound);
  CHECK(m.energy <= 8.0);
  CHECK(m.bound == doctest::Approx(8.0));

  const MixtureGrading z = mixture_grading(Spectrum::finite({1.0}), Grading::polylog(3.0), Spectrum::finite({1.0}),
                                           Grading::polylog(3.0), 1);
  REQUIRE(z.levels.size() == 2);
  CHECK(z.levels[0] == 0.0);
  CHECK(z.levels[1] == 0.0);
  CHECK(z.energy == 0.0);

  const MixtureGrading mixed = mixture_grading(Spectrum::geometric(0.5), Grading::linear(),
                                               Spectrum::geometric(1.0 / 3.0), Grading::linear());
  CHECK(mixed.within_bound);
  CHECK(mixed.energy <= mixed.bound);
  CHECK_THROWS_AS(mixture_grading(Spectrum::powerlog(3.0), Grading::linear(), Spectrum::geometric(0.5),
                                  Grading::linear()),
                  PreconditionError);
}

TEST_CASE("product grading") {
  const ProductGrading pg(Grading::linear(), Grading::linear());
  CHECK(pg(1, 2) == 5.0);  // g_2 + g_3 in 1-based terms
  const ProductGrading zero(Grading::linear(), Grading::explicit_levels({0.0, 0.0, 0.0}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(zero(i, 2) == Grading::linear()[i]);
  const Spectrum g = Spectrum::geometric(0.5);
  CHECK(pg.pairing_energy(g, g, 80, 80) == doctest::Approx(4.0).epsilon(1e-12));
  // marginal levels recover g1 when g2 carries no weight
  std::vector<std::vector<double>> pairs(3, std::vector<double>(2));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) pairs[i][j] = pg(i, j);
  const std::vector<double> lam2 = {1.0, 0.0};
  const std::vector<double> m = marginal_levels(pairs, lam2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(m[i] == doctest::Approx(pg(i, 0)));
}
