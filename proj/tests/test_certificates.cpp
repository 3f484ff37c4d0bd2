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

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "faprop/certificates.hpp"
#include "faprop/characteristics.hpp"

using namespace faprop;

namespace {

TruncationCertConfig small_sweep(unsigned threads) {
  TruncationCertConfig c;
  c.ambient = 16;
  c.shapes = {{4, 2, 2}, {4, 4, 3}};
  c.r_grid = {3, 5, 8};
  c.n_seeds = 6;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<std::atomic<int>> hits(200);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(50, 3,
                               [](std::size_t i) {
                                 if (i == 17) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("small truncation sweep") {
  const TruncationReport a = certify_truncation(small_sweep(1));
  const TruncationReport b = certify_truncation(small_sweep(3));
  CHECK(a.rows.size() == 2 * 6 * 3 * 4);
  CHECK(a.violations == 0);
  CHECK(a.counterexample.empty());
  CHECK(a.worst_margin > 0.0);
  CHECK(a.residual == doctest::Approx(std::ldexp(1.0, -16)).epsilon(1e-12));
  REQUIRE(b.rows.size() == a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].observed_gap == b.rows[i].observed_gap);
    CHECK(a.rows[i].Y == b.rows[i].Y);
  }
  for (const CertificateRow& r : a.rows) {
    CHECK(r.pass == (r.observed_gap <= r.Y));
    CHECK(r.delta_r == doctest::Approx(std::ldexp(1.0, -static_cast<int>(r.r)) + a.residual).epsilon(1e-12));
  }
}

TEST_CASE("truncation sweep row recomputation") {
  // one row recomputed from scratch: output entropy through the compressed operation
  TruncationCertConfig c = small_sweep(1);
  c.characteristics = {"output_entropy"};
  c.shapes = {{4, 2, 2}};
  c.n_seeds = 1;
  c.r_grid = {5};
  const TruncationReport rep = certify_truncation(c);
  REQUIRE(rep.rows.size() == 1);
  const CertificateRow& row = rep.rows[0];
  const Channel phi = random_compressed_operation(16, 4, 2, 2, row.seed);
  Mat rho = Mat::Zero(16, 16), rho_r = Mat::Zero(16, 16);
  for (int i = 0; i < 16; ++i) {
    rho(i, i) = std::ldexp(1.0, -(i + 1));
  }
  rho /= rho.trace();
  for (int i = 0; i < 5; ++i) rho_r(i, i) = rho(i, i) / rho.topLeftCorner(5, 5).trace();
  const double gap = std::abs(output_entropy(phi, rho_r) - output_entropy(phi, rho));
  CHECK(row.observed_gap == doctest::Approx(gap).epsilon(1e-9));
}

TEST_CASE("ensemble certificate rows and verdict") {
  EnsembleCertConfig c;
  c.dim = 4;
  c.dim_out = 2;
  c.k = 2;
  c.n_channels = 8;
  c.n_grid = {1, 2, 3, 4};
  c.threads = 2;
  const EnsembleReport rep = certify_ensemble(c);
  REQUIRE(rep.rows.size() == 4);
  for (const EnsembleRow& r : rep.rows) {
    CHECK(r.d0 == doctest::Approx(1.0 - r.c_n).epsilon(1e-12));
    CHECK(r.dk <= r.d0 + 1e-12);
  }
  CHECK(rep.rows.back().chi_gap < 1e-12);
  CHECK(rep.final_small);
  // monotonicity is not guaranteed at small sizes; the verdict must say which part failed
  CHECK(rep.pass == (rep.chi_monotone && rep.pi_monotone && rep.final_small));
  if (!rep.pi_monotone) CHECK(rep.notes.find("pi gap") != std::string::npos);
  c.n_grid = {1, 2};
  const EnsembleReport cut = certify_ensemble(c);
  CHECK_FALSE(cut.final_small);
  CHECK_FALSE(cut.pass);
}

TEST_CASE("ensemble certificate at the default size") {
  const EnsembleReport rep = certify_ensemble(EnsembleCertConfig{});
  CHECK(rep.chi_monotone);
  CHECK(rep.pi_monotone);
  CHECK(rep.final_small);
  CHECK(rep.pass);
}
