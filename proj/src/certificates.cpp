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

#include "faprop/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "faprop/errors.hpp"

namespace faprop {

unsigned worker_count() {
  if (const char* env = std::getenv("FAPROP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr err;
  auto run = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (err || next >= n) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

namespace {

constexpr const char* kTruncationFormula = "Y=sqrt(2d)[C*F_G(E/d)+T]+D*g(sqrt(2d))";

Mat embedded_state(const Spectrum& spectrum, Eigen::Index dim, double& residual) {
  const std::vector<double> head = spectrum.head(static_cast<std::size_t>(dim));
  RVec p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p[i] = head[i];
  residual = spectrum.tail(static_cast<std::size_t>(dim));
  p /= p.sum();
  return p.cast<cplx>().asDiagonal();
}

Mat truncated_state(const Mat& rho, std::size_t r) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  const Eigen::Index n = std::min<Eigen::Index>(static_cast<Eigen::Index>(r), rho.rows());
  out.topLeftCorner(n, n) = rho.topLeftCorner(n, n);
  return out / out.trace().real();
}

std::string describe(const CertificateRow& row) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s seed=%llu dim=%lld dim_out=%lld k=%lld r=%zu delta_r=%.17g Y=%.17g gap=%.17g",
                row.characteristic.c_str(), static_cast<unsigned long long>(row.seed),
                static_cast<long long>(row.dim), static_cast<long long>(row.dim_out),
                static_cast<long long>(row.k), row.r, row.delta_r, row.Y, row.observed_gap);
  return buf;
}

}  // namespace

TruncationReport certify_truncation(const TruncationCertConfig& config) {
  if (config.r_grid.empty()) throw ValidationError("r_grid must be nonempty");
  if (!std::is_sorted(config.r_grid.begin(), config.r_grid.end())) throw ValidationError("r_grid must be sorted");
  if (config.n_seeds < 1) throw ValidationError("n_seeds must be positive");
  if (config.shapes.empty()) throw ValidationError("no channel shapes given");
  bool want[4] = {false, false, false, false};
  static const char* kNames[4] = {"output_entropy", "entropy_exchange", "mutual_information", "coherent_information"};
  for (const std::string& c : config.characteristics) {
    const auto* it = std::find_if(std::begin(kNames), std::end(kNames), [&](const char* n) { return c == n; });
    if (it == std::end(kNames)) throw ValidationError("unknown characteristic '" + c + "'");
    want[it - std::begin(kNames)] = true;
  }

  TruncationReport report;
  const Mat rho = embedded_state(config.spectrum, config.ambient, report.residual);
  if (config.r_grid.back() >= static_cast<std::size_t>(config.ambient))
    throw ValidationError("r_grid must stay below the ambient dimension");

  const double h_rho = von_neumann_entropy(rho);
  std::vector<Mat> truncations;
  std::vector<double> h_trunc;
  for (std::size_t r : config.r_grid) {
    truncations.push_back(truncated_state(rho, r));
    h_trunc.push_back(von_neumann_entropy(truncations.back()));
  }

  // Bounds per shape: class (1, ln k, 1) and (2, 0, 2).
  const std::size_t nr = config.r_grid.size();
  std::vector<std::vector<TruncationBound>> bound_ok(config.shapes.size());
  const std::vector<TruncationBound> bound_info =
      theorem2_curve(config.spectrum, config.grading, config.r_grid, 2.0, 0.0, 2.0, report.residual);
  for (std::size_t s = 0; s < config.shapes.size(); ++s) {
    const double lnk = std::log(static_cast<double>(config.shapes[s].k));
    bound_ok[s] = theorem2_curve(config.spectrum, config.grading, config.r_grid, 1.0, lnk, 1.0, report.residual);
  }

  const std::size_t n_jobs = config.shapes.size() * static_cast<std::size_t>(config.n_seeds);
  std::vector<std::vector<CertificateRow>> per_job(n_jobs);
  parallel_for(n_jobs, config.threads ? config.threads : worker_count(), [&](std::size_t job) {
    const std::size_t s = job / static_cast<std::size_t>(config.n_seeds);
    const ChannelShape& shape = config.shapes[s];
    const std::uint64_t seed = config.seed + job % static_cast<std::size_t>(config.n_seeds);
    std::vector<CertificateRow>& rows = per_job[job];
    auto push = [&](const char* name, Eigen::Index k, Eigen::Index dim, const TruncationBound& b, double gap) {
      CertificateRow row;
      row.seed = seed;
      row.k = k;
      row.dim = dim;
      row.dim_out = shape.dim_out;
      row.r = b.r;
      row.delta_r = b.delta_r;
      row.Y = b.Y;
      row.observed_gap = gap;
      row.pass = gap <= b.Y;
      row.characteristic = name;
      row.formula = kTruncationFormula;
      rows.push_back(std::move(row));
    };

    if (want[0] || want[1]) {
      const Channel phi = random_compressed_operation(config.ambient, shape.dim_in, shape.dim_out, shape.k, seed);
      const double h_out = output_entropy(phi, rho);
      const double h_ex = entropy_exchange(phi, rho);
      for (std::size_t i = 0; i < nr; ++i) {
        if (want[0])
          push(kNames[0], shape.k, shape.dim_in, bound_ok[s][i], std::abs(output_entropy(phi, truncations[i]) - h_out));
        if (want[1])
          push(kNames[1], shape.k, shape.dim_in, bound_ok[s][i],
               std::abs(entropy_exchange(phi, truncations[i]) - h_ex));
      }
    }
    if (want[2] || want[3]) {
      const Eigen::Index k = (config.ambient + shape.dim_out - 1) / shape.dim_out;
      const Channel psi = random_channel(config.ambient, shape.dim_out, k, seed);
      const double ic = output_entropy(psi, rho) - entropy_exchange(psi, rho);
      for (std::size_t i = 0; i < nr; ++i) {
        const double ic_r = output_entropy(psi, truncations[i]) - entropy_exchange(psi, truncations[i]);
        if (want[2])
          push(kNames[2], k, config.ambient, bound_info[i], std::abs(h_trunc[i] + ic_r - h_rho - ic));
        if (want[3]) push(kNames[3], k, config.ambient, bound_info[i], std::abs(ic_r - ic));
      }
    }
  });

  report.worst_margin = std::numeric_limits<double>::infinity();
  for (auto& rows : per_job)
    for (CertificateRow& row : rows) {
      report.worst_margin = std::min(report.worst_margin, row.Y - row.observed_gap);
      if (!row.pass) {
        if (report.violations == 0) report.counterexample = describe(row);
        ++report.violations;
      }
      report.rows.push_back(std::move(row));
    }
  return report;
}

EnsembleReport certify_ensemble(const EnsembleCertConfig& config) {
  if (config.n_grid.empty()) throw ValidationError("n_grid must be nonempty");
  if (!std::is_sorted(config.n_grid.begin(), config.n_grid.end())) throw ValidationError("n_grid must be sorted");
  if (config.n_grid.back() > static_cast<std::size_t>(config.dim) || config.n_grid.front() < 1)
    throw ValidationError("n_grid entries must lie in [1, dim]");
  if (config.n_channels < 1) throw ValidationError("n_channels must be positive");

  double residual = 0.0;
  const Mat rho = embedded_state(config.spectrum, config.dim, residual);
  std::vector<Member> members;
  for (Eigen::Index i = 0; i < config.dim; ++i) {
    Mat e = Mat::Zero(config.dim, config.dim);
    e(i, i) = 1.0;
    members.push_back({rho(i, i).real(), e});
  }
  const Ensemble mu(members);
  std::vector<Ensemble> truncs;
  for (std::size_t n : config.n_grid) truncs.push_back(truncate_ensemble(mu, n));

  const std::size_t nn = config.n_grid.size();
  std::vector<std::vector<double>> chi_gap(config.n_channels, std::vector<double>(nn));
  std::vector<std::vector<double>> pi_gap(config.n_channels, std::vector<double>(nn));
  parallel_for(static_cast<std::size_t>(config.n_channels), config.threads ? config.threads : worker_count(),
               [&](std::size_t c) {
                 const Channel phi = random_channel(config.dim, config.dim_out, config.k, config.seed + c);
                 const double chi = holevo_quantity(phi, mu);
                 const double pi = privacy(phi, mu);
                 for (std::size_t j = 0; j < nn; ++j) {
                   chi_gap[c][j] = std::abs(holevo_quantity(phi, truncs[j]) - chi);
                   pi_gap[c][j] = std::abs(privacy(phi, truncs[j]) - pi);
                 }
               });

  EnsembleReport report;
  for (std::size_t j = 0; j < nn; ++j) {
    EnsembleRow row;
    row.n = config.n_grid[j];
    for (std::size_t i = 0; i < row.n; ++i) row.c_n += mu.members()[i].p;
    row.d0 = d0_distance(mu, truncs[j]);
    row.dk = kantorovich_distance(mu, truncs[j]);
    for (int c = 0; c < config.n_channels; ++c) {
      row.chi_gap = std::max(row.chi_gap, chi_gap[c][j]);
      row.pi_gap = std::max(row.pi_gap, pi_gap[c][j]);
    }
    report.rows.push_back(row);
  }
  report.chi_monotone = report.pi_monotone = true;
  for (std::size_t j = 1; j < nn; ++j) {
    if (report.rows[j].chi_gap > report.rows[j - 1].chi_gap) report.chi_monotone = false;
    if (report.rows[j].pi_gap > report.rows[j - 1].pi_gap) report.pi_monotone = false;
  }
  report.final_small = report.rows.back().chi_gap < config.final_tolerance &&
                       report.rows.back().pi_gap < config.final_tolerance;
  report.pass = report.chi_monotone && report.pi_monotone && report.final_small;
  if (!report.chi_monotone) report.notes += "chi gap increases somewhere along n; ";
  if (!report.pi_monotone) report.notes += "pi gap increases somewhere along n; ";
  if (!report.final_small) report.notes += "gap at the largest n exceeds the tolerance; ";
  return report;
}

RobustnessProfile dephasing_robustness(const RobustnessConfig& config) {
  const Channel id = identity_channel(2);
  std::function<double(const Channel&)> f;
  if (config.characteristic == "mutual_information") {
    const Mat half = 0.5 * Mat::Identity(2, 2);
    f = [half](const Channel& ch) { return mutual_information(ch, half); };
  } else if (config.characteristic == "holevo") {
    Vec plus(2), minus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const Ensemble mu({{0.5, plus * plus.adjoint()}, {0.5, minus * minus.adjoint()}});
    f = [mu](const Channel& ch) { return holevo_quantity(ch, mu); };
  } else {
    throw ValidationError("unknown robustness characteristic '" + config.characteristic + "'");
  }
  return robustness_profile(id, [](double eps) { return partial_dephasing(2, eps); }, f, Grading::linear(),
                            config.energy, config.eps_grid, config.n_samples, config.seed);
}

}  // namespace faprop
