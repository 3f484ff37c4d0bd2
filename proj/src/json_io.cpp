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

#include "faprop/json_io.hpp"

#include <cmath>

#include "faprop/errors.hpp"

namespace faprop {

const json& require_field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::uint64_t require_u64(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw SchemaError(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

namespace {

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(require_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

double optional_number(const json& j, const char* key, const std::string& path, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : require_number(*it, path + "." + key);
}

std::string kind_of(const json& j, const std::string& path) {
  const json& k = require_field(j, "kind", path);
  if (!k.is_string()) throw SchemaError(path + ".kind", "expected a string");
  return k.get<std::string>();
}

/// Library validation errors become schema errors at the object's path.
template <class F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Spectrum spectrum_from_json(const json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "geometric") {
    const double s = require_number(require_field(j, "s", path), path + ".s");
    return at_path(path, [&] { return Spectrum::geometric(s); });
  }
  if (kind == "finite") {
    auto p = number_array(require_field(j, "p", path), path + ".p");
    return at_path(path, [&] { return Spectrum::finite(std::move(p)); });
  }
  if (kind == "powerlog") {
    const double q = require_number(require_field(j, "q", path), path + ".q");
    return at_path(path, [&] { return Spectrum::powerlog(q); });
  }
  throw SchemaError(path + ".kind", "unknown spectrum kind '" + kind + "'");
}

json to_json(const Spectrum& s) {
  switch (s.kind()) {
    case Spectrum::Kind::geometric:
      return {{"kind", "geometric"}, {"s", s.parameter()}};
    case Spectrum::Kind::powerlog:
      return {{"kind", "powerlog"}, {"q", s.parameter()}};
    case Spectrum::Kind::finite:
      break;
  }
  const auto p = s.probabilities();
  return {{"kind", "finite"}, {"p", std::vector<double>(p.begin(), p.end())}};
}

Grading grading_from_json(const json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  const double offset = optional_number(j, "offset", path, 0.0);
  if (kind == "linear") return at_path(path, [&] { return Grading::linear(offset); });
  if (kind == "polylog") {
    const double q = require_number(require_field(j, "q", path), path + ".q");
    return at_path(path, [&] { return Grading::polylog(q, offset); });
  }
  if (kind == "explicit") {
    auto levels = number_array(require_field(j, "levels", path), path + ".levels");
    return at_path(path, [&] { return Grading::explicit_levels(std::move(levels), offset); });
  }
  throw SchemaError(path + ".kind", "unknown grading kind '" + kind + "'");
}

json to_json(const Grading& g) {
  switch (g.kind()) {
    case Grading::Kind::linear:
      return {{"kind", "linear"}, {"offset", g.offset()}};
    case Grading::Kind::polylog:
      return {{"kind", "polylog"}, {"q", g.parameter()}, {"offset", g.offset()}};
    case Grading::Kind::explicit_levels:
      break;
  }
  const auto l = g.levels();
  return {{"kind", "explicit"}, {"levels", std::vector<double>(l.begin(), l.end())}, {"offset", g.offset()}};
}

Mat matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of rows");
  const std::size_t n = j.size();
  Mat m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != n) throw SchemaError(rp, "expected a row of " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      const std::string cp = rp + "[" + std::to_string(c) + "]";
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) throw SchemaError(cp, "expected [re, im]");
      m(r, c) = cplx(require_number(e[0], cp + "[0]"), require_number(e[1], cp + "[1]"));
    }
  }
  return m;
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Ensemble ensemble_from_json(const json& j, const std::string& path) {
  const json& members = require_field(j, "members", path);
  const std::string mp = path + ".members";
  if (!members.is_array() || members.empty()) throw SchemaError(mp, "expected a nonempty array");
  std::vector<Member> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string ip = mp + "[" + std::to_string(i) + "]";
    const double p = require_number(require_field(members[i], "p", ip), ip + ".p");
    Mat rho = matrix_from_json(require_field(members[i], "rho", ip), ip + ".rho");
    if (!out.empty() && rho.rows() != out.front().rho.rows()) throw SchemaError(ip + ".rho", "dimension differs from member 0");
    out.push_back({p, std::move(rho)});
  }
  return at_path(path, [&] { return Ensemble(std::move(out)); });
}

json to_json(const Ensemble& e) {
  json members = json::array();
  for (const Member& m : e.members()) members.push_back({{"p", m.p}, {"rho", to_json(m.rho)}});
  return {{"members", std::move(members)}};
}

json to_json(const GibbsSolve& g) {
  return {{"beta", g.beta},
          {"log_partition", g.log_partition},
          {"mean_energy", g.mean_energy},
          {"entropy", g.entropy},
          {"truncation_n", g.truncation_n},
          {"tail_bound", g.tail_bound}};
}

json to_json(const TruncationBound& b) {
  return {{"r", b.r},     {"r0", b.r0}, {"delta_r", b.delta_r}, {"E_rho", b.energy}, {"C", b.C},
          {"T", b.T},     {"D", b.D},   {"F_G", b.fg},          {"Y", b.Y}};
}

}  // namespace faprop
