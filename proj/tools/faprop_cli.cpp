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

// faprop: batch front-end for the certification suites.
//
// Exit status: 0 when every certificate passes, 2 on a violation (the first
// counterexample goes to stderr), 1 on a malformed config or argument.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faprop/certificates.hpp"
#include "faprop/errors.hpp"
#include "faprop/json_io.hpp"

using namespace faprop;

namespace {

constexpr int kPass = 0;
constexpr int kConfigError = 1;
constexpr int kViolation = 2;

struct Output {
  std::string path;  ///< empty: stdout
  std::string format = "json";
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  // written once, after all computation
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw SchemaError("output.path", "cannot open '" + out.path + "' for writing");
  f << text;
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError("config", "cannot read '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw SchemaError("config", std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
std::vector<T> sorted_grid(const json& cfg, const char* key, const std::string& path,
                           std::optional<std::vector<T>> fallback, bool ascending = true) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) {
    if (fallback) return *fallback;
    throw SchemaError(path + "." + key, "missing field");
  }
  const std::string p = path + "." + key;
  if (!it->is_array()) throw SchemaError(p, "expected an array");
  if (it->empty()) throw SchemaError(p, "grid must be nonempty");
  std::vector<T> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string ip = p + "[" + std::to_string(i) + "]";
    if constexpr (std::is_integral_v<T>)
      out.push_back(static_cast<T>(require_u64((*it)[i], ip)));
    else
      out.push_back(require_number((*it)[i], ip));
    if (i > 0 && (ascending ? out[i] < out[i - 1] : out[i] > out[i - 1]))
      throw SchemaError(ip, ascending ? "grid must be sorted ascending" : "grid must be sorted descending");
  }
  return out;
}

std::uint64_t seed_of(const json& cfg, std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  const auto it = cfg.find("seed");
  return it == cfg.end() ? 1 : require_u64(*it, "config.seed");
}

void read_output(const json& cfg, Output& out) {
  const auto it = cfg.find("output");
  if (it == cfg.end()) return;
  if (!it->is_object()) throw SchemaError("config.output", "expected an object");
  if (auto p = it->find("path"); p != it->end() && out.path.empty()) {
    if (!p->is_string()) throw SchemaError("config.output.path", "expected a string");
    out.path = p->get<std::string>();
  }
  if (auto f = it->find("format"); f != it->end()) {
    if (!f->is_string()) throw SchemaError("config.output.format", "expected a string");
    out.format = f->get<std::string>();
  }
}

void check_format(const Output& out) {
  if (out.format != "csv" && out.format != "json") throw SchemaError("format", "expected csv or json");
}

// ---------------------------------------------------------------------------

int run_fa_check(const json& cfg, const Output& out) {
  const Spectrum spectrum = spectrum_from_json(require_field(cfg, "spectrum", "config"), "config.spectrum");
  std::vector<Grading> candidates;
  if (auto g = cfg.find("grading"); g != cfg.end())
    candidates.push_back(grading_from_json(*g, "config.grading"));
  else
    candidates = {Grading::linear(), Grading::polylog(3.0), Grading::polylog(2.5)};

  json report{{"spectrum", to_json(spectrum)}, {"candidates", json::array()}};
  std::optional<std::size_t> witness;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const PairingEnergy pe = pairing_energy(spectrum, candidates[i]);
    const HCondPlusReport hc = check_hcond_plus(candidates[i], standard_beta_grid());
    json c{{"grading", to_json(candidates[i])},
           {"pairing", to_string(pe.verdict)},
           {"hcond_plus", to_string(hc.verdict)}};
    if (pe.finite()) c["E_rho"] = pe.value;
    report["candidates"].push_back(c);
    if (!witness && pe.finite() && hc.verdict == HCondVerdict::consistent_with_1) witness = i;
  }
  // Failing every candidate is not evidence that no grading exists.
  report["verdict"] = witness ? "holds" : "inconclusive";
  if (witness) report["witness_grading"] = to_json(candidates[*witness]);

  if (out.format == "csv") {
    std::string s = "grading,pairing,hcond_plus,E_rho,witness\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const json& c = report["candidates"][i];
      std::string g = c["grading"].dump();
      for (std::size_t pos = 0; (pos = g.find('"', pos)) != std::string::npos; pos += 2) g.insert(pos, 1, '"');
      s += "\"" + g + "\"," + c["pairing"].get<std::string>() + "," + c["hcond_plus"].get<std::string>() + "," +
           (c.contains("E_rho") ? fmt(c["E_rho"].get<double>()) : "") + "," +
           (witness && *witness == i ? "true" : "false") + "\n";
    }
    emit(out, s);
  } else {
    emit(out, report.dump(2) + "\n");
  }
  return kPass;
}

int run_fg(const json& cfg, const Output& out) {
  const Grading grading = grading_from_json(require_field(cfg, "grading", "config"), "config.grading");
  std::vector<double> energies;
  if (cfg.contains("energy"))
    energies.push_back(require_number(cfg["energy"], "config.energy"));
  else
    energies = sorted_grid<double>(cfg, "e_grid", "config", std::nullopt);
  std::vector<GibbsSolve> sols;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    try {
      sols.push_back(f_g(grading, energies[i]));
    } catch (const DomainError& e) {
      throw SchemaError(cfg.contains("energy") ? "config.energy" : "config.e_grid[" + std::to_string(i) + "]",
                        e.what());
    }
  }
  if (out.format == "csv") {
    std::string s = "energy,beta,log_partition,mean_energy,entropy\n";
    for (std::size_t i = 0; i < sols.size(); ++i)
      s += fmt(energies[i]) + "," + fmt(sols[i].beta) + "," + fmt(sols[i].log_partition) + "," +
           fmt(sols[i].mean_energy) + "," + fmt(sols[i].entropy) + "\n";
    emit(out, s);
  } else if (sols.size() == 1 && cfg.contains("energy")) {
    emit(out, to_json(sols[0]).dump(2) + "\n");
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) {
      json r = to_json(sols[i]);
      r["energy"] = energies[i];
      rows.push_back(r);
    }
    emit(out, json{{"grading", to_json(grading)}, {"rows", rows}}.dump(2) + "\n");
  }
  return kPass;
}

int run_truncate_bound(const json& cfg, const Output& out) {
  const Spectrum spectrum = spectrum_from_json(require_field(cfg, "spectrum", "config"), "config.spectrum");
  const Grading grading = grading_from_json(require_field(cfg, "grading", "config"), "config.grading");
  const auto r_grid = sorted_grid<std::size_t>(cfg, "r_grid", "config", std::nullopt);
  double ctd[3];
  const char* names[3] = {"C", "T", "D"};
  for (int i = 0; i < 3; ++i) {
    ctd[i] = require_number(require_field(cfg, names[i], "config"), std::string("config.") + names[i]);
    if (ctd[i] < 0.0) throw SchemaError(std::string("config.") + names[i], "must be nonnegative");
  }
  std::vector<TruncationBound> curve;
  try {
    curve = theorem2_curve(spectrum, grading, r_grid, ctd[0], ctd[1], ctd[2]);
  } catch (const DomainError& e) {
    throw SchemaError("config.r_grid", e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError("config.spectrum", e.what());
  }
  if (out.format == "csv") {
    std::string s = "r,r0,delta_r,E_rho,C,T,D,F_G,Y,formula\n";
    for (const TruncationBound& b : curve)
      s += std::to_string(b.r) + "," + std::to_string(b.r0) + "," + fmt(b.delta_r) + "," + fmt(b.energy) + "," +
           fmt(b.C) + "," + fmt(b.T) + "," + fmt(b.D) + "," + fmt(b.fg) + "," + fmt(b.Y) +
           ",Y=sqrt(2d)[C*F_G(E/d)+T]+D*g(sqrt(2d))\n";
    emit(out, s);
  } else {
    json rows = json::array();
    for (const TruncationBound& b : curve) rows.push_back(to_json(b));
    emit(out, json{{"rows", rows}}.dump(2) + "\n");
  }
  return kPass;
}

int run_certify_truncation(const json& cfg, const Output& out, std::uint64_t seed) {
  TruncationCertConfig c;
  c.seed = seed;
  if (cfg.contains("spectrum")) c.spectrum = spectrum_from_json(cfg["spectrum"], "config.spectrum");
  if (cfg.contains("grading")) c.grading = grading_from_json(cfg["grading"], "config.grading");
  c.r_grid = sorted_grid<std::size_t>(cfg, "r_grid", "config", c.r_grid);
  if (auto it = cfg.find("channel_params"); it != cfg.end()) {
    const std::string p = "config.channel_params";
    if (!it->is_object()) throw SchemaError(p, "expected an object");
    if (it->contains("ambient")) c.ambient = static_cast<Eigen::Index>(require_u64((*it)["ambient"], p + ".ambient"));
    if (it->contains("n_seeds")) c.n_seeds = static_cast<int>(require_u64((*it)["n_seeds"], p + ".n_seeds"));
    if (it->contains("dims") || it->contains("k")) {
      const json& dims = require_field(*it, "dims", p);
      const json& ks = require_field(*it, "k", p);
      if (!dims.is_array() || dims.empty()) throw SchemaError(p + ".dims", "expected a nonempty array of [dim_in, dim_out]");
      if (!ks.is_array() || ks.size() != dims.size()) throw SchemaError(p + ".k", "expected one k per dims entry");
      c.shapes.clear();
      for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::string dp = p + ".dims[" + std::to_string(i) + "]";
        if (!dims[i].is_array() || dims[i].size() != 2) throw SchemaError(dp, "expected [dim_in, dim_out]");
        ChannelShape s;
        s.dim_in = static_cast<Eigen::Index>(require_u64(dims[i][0], dp + "[0]"));
        s.dim_out = static_cast<Eigen::Index>(require_u64(dims[i][1], dp + "[1]"));
        s.k = static_cast<Eigen::Index>(require_u64(ks[i], p + ".k[" + std::to_string(i) + "]"));
        if (s.dim_in < 1 || s.dim_out < 1 || s.k < 1 || s.dim_out * s.k < s.dim_in || s.dim_in > c.ambient)
          throw SchemaError(dp, "need 1 <= dim_in <= ambient, dim_out * k >= dim_in");
        c.shapes.push_back(s);
      }
    }
  }
  if (auto it = cfg.find("characteristics"); it != cfg.end()) {
    if (!it->is_array() || it->empty()) throw SchemaError("config.characteristics", "expected a nonempty array");
    c.characteristics.clear();
    for (const json& x : *it) {
      if (!x.is_string()) throw SchemaError("config.characteristics", "expected strings");
      c.characteristics.push_back(x.get<std::string>());
    }
  }
  if (c.r_grid.front() < 1 || c.r_grid.back() >= static_cast<std::size_t>(c.ambient))
    throw SchemaError("config.r_grid", "entries must lie in [1, ambient)");

  TruncationReport rep;
  try {
    rep = certify_truncation(c);
  } catch (const DomainError& e) {
    throw SchemaError("config.r_grid", e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError("config.spectrum", e.what());
  }

  if (out.format == "csv") {
    std::string s = "seed,k,dim,r,delta_r,Y,observed_gap,pass,dim_out,characteristic,formula\n";
    for (const CertificateRow& r : rep.rows)
      s += std::to_string(r.seed) + "," + std::to_string(r.k) + "," + std::to_string(r.dim) + "," +
           std::to_string(r.r) + "," + fmt(r.delta_r) + "," + fmt(r.Y) + "," + fmt(r.observed_gap) + "," +
           (r.pass ? "true" : "false") + "," + std::to_string(r.dim_out) + "," + r.characteristic + "," +
           r.formula + "\n";
    emit(out, s);
  } else {
    emit(out, json{{"rows", rep.rows.size()},
                   {"violations", rep.violations},
                   {"worst_margin", rep.worst_margin},
                   {"residual", rep.residual},
                   {"counterexample", rep.counterexample},
                   {"pass", rep.violations == 0}}
                      .dump(2) +
                  "\n");
  }
  if (rep.violations > 0) {
    std::cerr << "violation: " << rep.counterexample << "\n";
    return kViolation;
  }
  return kPass;
}

int run_certify_ensemble(const json& cfg, const Output& out, std::uint64_t seed) {
  EnsembleCertConfig c;
  c.seed = seed;
  if (cfg.contains("spectrum")) c.spectrum = spectrum_from_json(cfg["spectrum"], "config.spectrum");
  if (auto it = cfg.find("channel_params"); it != cfg.end()) {
    const std::string p = "config.channel_params";
    if (!it->is_object()) throw SchemaError(p, "expected an object");
    if (it->contains("dim")) c.dim = static_cast<Eigen::Index>(require_u64((*it)["dim"], p + ".dim"));
    if (it->contains("dim_out")) c.dim_out = static_cast<Eigen::Index>(require_u64((*it)["dim_out"], p + ".dim_out"));
    if (it->contains("k")) c.k = static_cast<Eigen::Index>(require_u64((*it)["k"], p + ".k"));
    if (it->contains("n_channels"))
      c.n_channels = static_cast<int>(require_u64((*it)["n_channels"], p + ".n_channels"));
    if (c.dim < 1 || c.dim_out < 1 || c.k < 1 || c.dim_out * c.k < c.dim)
      throw SchemaError(p, "need dim_out * k >= dim >= 1");
  }
  std::vector<std::size_t> fallback;
  for (Eigen::Index n = 1; n <= c.dim; ++n) fallback.push_back(static_cast<std::size_t>(n));
  c.n_grid = sorted_grid<std::size_t>(cfg, "n_grid", "config", fallback);
  if (c.n_grid.front() < 1 || c.n_grid.back() > static_cast<std::size_t>(c.dim))
    throw SchemaError("config.n_grid", "entries must lie in [1, dim]");

  const EnsembleReport rep = certify_ensemble(c);
  if (out.format == "csv") {
    std::string s = "n,c_n,d0,dk,chi_gap,pi_gap\n";
    for (const EnsembleRow& r : rep.rows)
      s += std::to_string(r.n) + "," + fmt(r.c_n) + "," + fmt(r.d0) + "," + fmt(r.dk) + "," + fmt(r.chi_gap) + "," +
           fmt(r.pi_gap) + "\n";
    emit(out, s);
  } else {
    json rows = json::array();
    for (const EnsembleRow& r : rep.rows)
      rows.push_back({{"n", r.n}, {"c_n", r.c_n}, {"d0", r.d0}, {"dk", r.dk}, {"chi_gap", r.chi_gap},
                      {"pi_gap", r.pi_gap}});
    emit(out, json{{"rows", rows},
                   {"chi_monotone", rep.chi_monotone},
                   {"pi_monotone", rep.pi_monotone},
                   {"final_small", rep.final_small},
                   {"pass", rep.pass},
                   {"notes", rep.notes}}
                      .dump(2) +
                  "\n");
  }
  if (!rep.pass) {
    std::cerr << "violation: " << rep.notes << "\n";
    return kViolation;
  }
  return kPass;
}

int run_robustness(const json& cfg, const Output& out, std::uint64_t seed) {
  RobustnessConfig c;
  c.seed = seed;
  if (auto it = cfg.find("characteristic"); it != cfg.end()) {
    if (!it->is_string()) throw SchemaError("config.characteristic", "expected a string");
    c.characteristic = it->get<std::string>();
    if (c.characteristic != "mutual_information" && c.characteristic != "holevo")
      throw SchemaError("config.characteristic", "expected mutual_information or holevo");
  }
  c.eps_grid = sorted_grid<double>(cfg, "eps_grid", "config", c.eps_grid, false);
  for (std::size_t i = 0; i < c.eps_grid.size(); ++i)
    if (c.eps_grid[i] < 0.0 || c.eps_grid[i] > 1.0)
      throw SchemaError("config.eps_grid[" + std::to_string(i) + "]", "must lie in [0, 1]");
  if (cfg.contains("energy")) c.energy = require_number(cfg["energy"], "config.energy");
  if (!(c.energy > 1.0)) throw SchemaError("config.energy", "must exceed the ground level 1");
  if (cfg.contains("n_samples")) c.n_samples = static_cast<int>(require_u64(cfg["n_samples"], "config.n_samples"));

  const RobustnessProfile prof = dephasing_robustness(c);
  if (out.format == "csv") {
    std::string s = "eps,bures_lower,gap\n";
    for (const RobustnessRow& r : prof.rows) s += fmt(r.eps) + "," + fmt(r.bures_lower) + "," + fmt(r.gap) + "\n";
    emit(out, s);
  } else {
    json rows = json::array();
    for (const RobustnessRow& r : prof.rows)
      rows.push_back({{"eps", r.eps}, {"bures_lower", r.bures_lower}, {"gap", r.gap}});
    emit(out, json{{"characteristic", c.characteristic}, {"rows", rows}, {"verdict", prof.verdict}}.dump(2) + "\n");
  }
  if (!prof.pass) {
    std::cerr << "violation: " << prof.verdict << "\n";
    return kViolation;
  }
  return kPass;
}

int dispatch(const std::string& experiment, const json& cfg, Output out, std::optional<std::uint64_t> seed_flag) {
  read_output(cfg, out);
  check_format(out);
  const std::uint64_t seed = seed_of(cfg, seed_flag);
  if (experiment == "fa-check") return run_fa_check(cfg, out);
  if (experiment == "fg-curve" || experiment == "fg") return run_fg(cfg, out);
  if (experiment == "truncate-bound") return run_truncate_bound(cfg, out);
  if (experiment == "truncation-certificate") return run_certify_truncation(cfg, out, seed);
  if (experiment == "ensemble-certificate") return run_certify_ensemble(cfg, out, seed);
  if (experiment == "robustness-profile") return run_robustness(cfg, out, seed);
  throw SchemaError("config.experiment", "unknown experiment '" + experiment + "'");
}

json parse_inline(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"faprop: finite-approximation certificates for entropic channel characteristics"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  Output out;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)");
    sub->add_option("--seed", seed, "64-bit seed; overrides the config");
    sub->add_option("--out", out.path, "output file (default: stdout)");
    sub->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  std::string spectrum_text, grading_text;
  double energy = 0.0;
  std::vector<std::size_t> r_list;
  double C = 1.0, T = 0.0, D = 1.0;

  auto* fa = app.add_subcommand("fa-check", "look for a grading witnessing the FA-property");
  add_common(fa);
  fa->add_option("--spectrum", spectrum_text, "spectrum JSON");
  fa->add_option("--grading", grading_text, "grading JSON to test instead of the defaults");

  auto* fg = app.add_subcommand("fg", "max entropy F_G(E) and its Gibbs state");
  add_common(fg);
  fg->add_option("--grading", grading_text, "grading JSON");
  fg->add_option("--energy", energy, "energy bound E");

  auto* tb = app.add_subcommand("truncate-bound", "truncation bound Y(r) over a grid");
  add_common(tb);
  tb->add_option("--spectrum", spectrum_text, "spectrum JSON");
  tb->add_option("--grading", grading_text, "grading JSON");
  tb->add_option("--r", r_list, "truncation ranks");
  tb->add_option("--C", C);
  tb->add_option("--T", T);
  tb->add_option("--D", D);

  auto* ct = app.add_subcommand("certify-truncation", "truncation certificate over sampled channels");
  add_common(ct);
  auto* ce = app.add_subcommand("certify-ensemble", "ensemble truncation certificate");
  add_common(ce);
  auto* rb = app.add_subcommand("robustness", "robustness profile for a dephasing family");
  add_common(rb);
  auto* run = app.add_subcommand("run", "run the experiment named in --config");
  add_common(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!cfg.is_object()) throw SchemaError("config", "expected an object");

    if (run->parsed()) {
      if (config_path.empty()) throw SchemaError("config", "run needs --config");
      const json& e = require_field(cfg, "experiment", "config");
      if (!e.is_string()) throw SchemaError("config.experiment", "expected a string");
      return dispatch(e.get<std::string>(), cfg, out, seed);
    }
    if (!spectrum_text.empty()) cfg["spectrum"] = parse_inline(spectrum_text, "--spectrum");
    if (!grading_text.empty()) cfg["grading"] = parse_inline(grading_text, "--grading");
    if (fa->parsed()) return dispatch("fa-check", cfg, out, seed);
    if (fg->parsed()) {
      if (fg->count("--energy")) cfg["energy"] = energy;
      return dispatch("fg-curve", cfg, out, seed);
    }
    if (tb->parsed()) {
      if (!r_list.empty()) cfg["r_grid"] = r_list;
      if (tb->count("--C") || !cfg.contains("C")) cfg["C"] = C;
      if (tb->count("--T") || !cfg.contains("T")) cfg["T"] = T;
      if (tb->count("--D") || !cfg.contains("D")) cfg["D"] = D;
      return dispatch("truncate-bound", cfg, out, seed);
    }
    if (ct->parsed()) return dispatch("truncation-certificate", cfg, out, seed);
    if (ce->parsed()) return dispatch("ensemble-certificate", cfg, out, seed);
    if (rb->parsed()) return dispatch("robustness-profile", cfg, out, seed);
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
