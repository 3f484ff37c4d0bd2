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

// JSON forms of spectra, gradings, ensembles and result records.
//
//   spectrum  {"kind":"geometric","s":0.5} | {"kind":"finite","p":[...]}
//             | {"kind":"powerlog","q":3.0}
//   grading   {"kind":"linear","offset":0} | {"kind":"polylog","q":3.0,"offset":0}
//             | {"kind":"explicit","levels":[...],"offset":0}
//   ensemble  {"members":[{"p":0.5,"rho":[[[re,im],...],...]}, ...]}
//
// Parse failures throw SchemaError carrying the path of the offending field.

#include <string>

#include <json.hpp>

#include "faprop/bounds.hpp"

namespace faprop {

using json = nlohmann::json;

Spectrum spectrum_from_json(const json& j, const std::string& path = "spectrum");
json to_json(const Spectrum& s);

Grading grading_from_json(const json& j, const std::string& path = "grading");
json to_json(const Grading& g);

Mat matrix_from_json(const json& j, const std::string& path);
json to_json(const Mat& m);

Ensemble ensemble_from_json(const json& j, const std::string& path = "ensemble");
json to_json(const Ensemble& e);

json to_json(const GibbsSolve& g);
json to_json(const TruncationBound& b);

/// Field accessors used by the config readers.
const json& require_field(const json& j, const char* key, const std::string& path);
double require_number(const json& j, const std::string& path);
std::uint64_t require_u64(const json& j, const std::string& path);

}  // namespace faprop
