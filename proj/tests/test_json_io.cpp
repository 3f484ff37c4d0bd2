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

#include <string>

#include "faprop/errors.hpp"
#include "faprop/json_io.hpp"

using namespace faprop;

namespace {

std::string schema_path(const json& j) {
  try {
    spectrum_from_json(j, "cfg.spectrum");
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("spectrum and grading round trips") {
  for (const Spectrum& s : {Spectrum::geometric(0.3), Spectrum::finite({0.5, 0.3, 0.2}), Spectrum::powerlog(3.0)}) {
    const Spectrum back = spectrum_from_json(to_json(s));
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == s[i]);
  }
  for (const Grading& g : {Grading::linear(), Grading::polylog(2.5), Grading::explicit_levels({0, 1, 4})}) {
    const Grading back = grading_from_json(to_json(g));
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == g[i]);
  }
  const Grading shifted = grading_from_json(json{{"kind", "linear"}, {"offset", 0.5}});
  CHECK(shifted[0] == 1.5);
  CHECK_THROWS_AS(grading_from_json(json{{"kind", "linear"}, {"offset", -1.0}}), SchemaError);
}

TEST_CASE("matrices and ensembles") {
  Rng rng(1);
  const Mat m = random_density(3, 2, rng);
  CHECK((matrix_from_json(to_json(m), "m") - m).norm() == 0.0);
  const Ensemble mu = random_ensemble(2, 3, 1, rng);
  const Ensemble back = ensemble_from_json(to_json(mu));
  REQUIRE(back.size() == 3);
  CHECK((back.average() - mu.average()).norm() < 1e-15);
}

TEST_CASE("schema errors carry the field path") {
  CHECK(schema_path(json{{"kind", "geometric"}}) == "cfg.spectrum.s");
  CHECK(schema_path(json{{"kind", "mystery"}}) == "cfg.spectrum.kind");
  CHECK(schema_path(json{{"kind", "geometric"}, {"s", "half"}}) == "cfg.spectrum.s");
  CHECK(schema_path(json{{"kind", "geometric"}, {"s", 1.5}}) == "cfg.spectrum");
  CHECK(schema_path(json::array()) == "cfg.spectrum");
  CHECK_THROWS_AS(require_u64(json(-3), "n"), SchemaError);
  CHECK_THROWS_AS(require_u64(json(2.5), "n"), SchemaError);
  CHECK(require_u64(json(7), "n") == 7);
  CHECK_THROWS_AS(matrix_from_json(json{{1, 2}}, "m"), SchemaError);
  CHECK_THROWS_AS(ensemble_from_json(json{{"members", {{{"p", 1.0}}}}}), SchemaError);
}

TEST_CASE("result records") {
  const json g = to_json(f_g(Grading::linear(), 2.0));
  CHECK(g.contains("beta"));
  const json b = to_json(theorem2_bound(Spectrum::geometric(0.5), Grading::linear(), 10, 1, 0, 1));
  CHECK(b["r0"] == 3);
  CHECK(b["Y"].get<double>() == doctest::Approx(0.5641525806).epsilon(1e-9));
}
