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

#include "faprop/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "faprop/errors.hpp"

namespace faprop {

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("ensemble must have at least one member");
  const Eigen::Index d = members_.front().rho.rows();
  double total = 0.0;
  average_ = Mat::Zero(d, d);
  for (const Member& m : members_) {
    if (!(m.p >= 0.0) || !std::isfinite(m.p)) throw ValidationError("ensemble weights must be nonnegative");
    if (m.rho.rows() != d || m.rho.cols() != d) throw DimensionMismatch("ensemble members differ in dimension");
    require_hermitian(m.rho, "ensemble member");
    if (std::abs(m.rho.trace().real() - 1.0) > 1e-10) throw ValidationError("ensemble member must have unit trace");
    clamped_spectrum(m.rho);
    total += m.p;
    average_ += m.p * m.rho;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("ensemble weights must sum to 1");
}

Ensemble random_ensemble_with_average(const Mat& rho, Eigen::Index m, Rng& rng) {
  const Eigen::Index d = rho.rows();
  if (m < d) throw DomainError("need at least dim members to reproduce a full-rank average");
  const Mat w = haar_isometry(m, d, rng).adjoint();  // d x m, W W^* = I
  const Mat a = sqrtm_psd(rho);
  std::vector<Member> out;
  double total = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vec v = a * w.col(k);
    const double p = v.squaredNorm();
    if (p <= 0.0) continue;
    out.push_back({p, v * v.adjoint() / p});
    total += p;
  }
  for (Member& mm : out) mm.p /= total;
  return Ensemble(std::move(out));
}

Ensemble random_ensemble(Eigen::Index d, Eigen::Index m, Eigen::Index rank, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  std::vector<Member> out;
  for (Eigen::Index k = 0; k < m; ++k) out.push_back({w[k] / total, random_density(d, rank, rng)});
  return Ensemble(std::move(out));
}

double holevo_quantity(const Channel& phi, const Ensemble& mu) {
  double acc = von_neumann_entropy(apply_channel(phi, mu.average()));
  for (const Member& m : mu.members())
    if (m.p > 0.0) acc -= m.p * von_neumann_entropy(apply_channel(phi, m.rho));
  return acc;
}

double holevo_quantity_relative(const Channel& phi, const Ensemble& mu) {
  const Mat avg = apply_channel(phi, mu.average());
  double acc = 0.0;
  for (const Member& m : mu.members())
    if (m.p > 0.0) acc += m.p * relative_entropy(apply_channel(phi, m.rho), avg).value;
  return acc;
}

double holevo_quantity_complementary(const Channel& phi, const Ensemble& mu) {
  double acc = von_neumann_entropy(apply_complementary(phi, mu.average()));
  for (const Member& m : mu.members())
    if (m.p > 0.0) acc -= m.p * von_neumann_entropy(apply_complementary(phi, m.rho));
  return acc;
}

double privacy(const Channel& phi, const Ensemble& mu) {
  return holevo_quantity(phi, mu) - holevo_quantity_complementary(phi, mu);
}

Ensemble truncate_ensemble(const Ensemble& mu, std::size_t n) {
  if (n < 1 || n > mu.size()) throw DomainError("truncation length must lie in [1, size]");
  double c = 0.0;
  for (std::size_t k = 0; k < n; ++k) c += mu.members()[k].p;
  if (!(c > 0.0)) throw DomainError("truncated ensemble has zero weight");
  std::vector<Member> out(mu.members().begin(), mu.members().begin() + static_cast<std::ptrdiff_t>(n));
  for (Member& m : out) m.p /= c;
  return Ensemble(std::move(out));
}

double d0_distance(const Ensemble& mu, const Ensemble& nu) {
  if (mu.dim() != nu.dim()) throw DimensionMismatch("ensembles act on different spaces");
  const std::size_t n = std::max(mu.size(), nu.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= mu.size()) {
      acc += nu.members()[k].p;
    } else if (k >= nu.size()) {
      acc += mu.members()[k].p;
    } else {
      const Member& a = mu.members()[k];
      const Member& b = nu.members()[k];
      acc += trace_norm(a.p * a.rho - b.p * b.rho);
    }
  }
  return 0.5 * acc;
}

Eigen::MatrixXd trace_distance_costs(const Ensemble& mu, const Ensemble& nu) {
  if (mu.dim() != nu.dim()) throw DimensionMismatch("ensembles act on different spaces");
  Eigen::MatrixXd c(mu.size(), nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      c(i, j) = trace_distance(mu.members()[i].rho, nu.members()[j].rho);
  return c;
}

double kantorovich_distance(const Ensemble& mu, const Ensemble& nu) {
  Eigen::VectorXd a(mu.size()), b(nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) a[i] = mu.members()[i].p;
  for (std::size_t j = 0; j < nu.size(); ++j) b[j] = nu.members()[j].p;
  return solve_transport(a, b, trace_distance_costs(mu, nu)).cost;
}

Mat top_projector(const Mat& m, Eigen::Index r) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const Eigen::Index d = m.rows();
  if (r < 0 || r > d) throw DomainError("projector rank out of range");
  // eigenvalues ascend: the top r sit in the last r columns
  const Mat v = es.eigenvectors().rightCols(r);
  return v * v.adjoint();
}

ProjectedEnsemble spectral_projection_ensemble(const Ensemble& mu, Eigen::Index r) {
  const Mat p = top_projector(mu.average(), r);
  const double kept = (p * mu.average()).trace().real();
  if (!(kept > 0.0)) throw DomainError("projector captures none of the average state");
  std::vector<Member> out;
  std::size_t dropped = 0;
  for (const Member& m : mu.members()) {
    const Mat proj = p * m.rho * p;
    const double t = proj.trace().real();
    if (t <= 1e-14 || m.p == 0.0) {
      out.push_back({0.0, m.rho});
      ++dropped;
      continue;
    }
    out.push_back({m.p * t / kept, proj / t});
  }
  double total = 0.0;
  for (const Member& m : out) total += m.p;
  for (Member& m : out) m.p /= total;
  return {Ensemble(std::move(out)), kept, dropped};
}

DonaldRecord donald_decomposition_check(const Channel& phi, const Mat& rho, const Ensemble& mu, double slack) {
  DonaldRecord rec;
  if (rho.rows() != mu.dim()) throw DimensionMismatch("state and ensemble dimensions differ");
  Eigen::SelfAdjointEigenSolver<Mat> es(mu.average());
  const Eigen::Index r = (es.eigenvalues().array() > 1e-12).count();
  const Mat p = es.eigenvectors().rightCols(r) * es.eigenvectors().rightCols(r).adjoint();
  rec.c_r = (p * rho).trace().real();
  if (rec.c_r >= 1.0 - 1e-12) {
    rec.skipped = true;
    rec.notes = "c_r = 1: rho equals its truncation, nothing to decompose";
    return rec;
  }
  const double c = rec.c_r;
  const Mat rho_r = p * rho * p / c;
  if ((rho_r - mu.average()).cwiseAbs().maxCoeff() > 1e-9)
    throw PreconditionError("ensemble average is not the truncation P_r rho P_r / c_r");
  const Mat rest = (rho - c * rho_r) / (1.0 - c);

  const Mat out_rho = apply_channel(phi, rho);
  const Mat out_rho_r = apply_channel(phi, rho_r);
  const Mat out_rest = apply_channel(phi, rest);
  auto rel = [](const Mat& a, const Mat& b) { return relative_entropy(a, b).value; };

  double sum_to_rho = 0.0, sum_to_rho_r = 0.0;
  for (const Member& m : mu.members()) {
    if (m.p == 0.0) continue;
    const Mat out = apply_channel(phi, m.rho);
    sum_to_rho += m.p * rel(out, out_rho);
    sum_to_rho_r += m.p * rel(out, out_rho_r);
  }
  rec.chi_truncated = sum_to_rho_r;
  rec.chi_augmented = (1.0 - c) * rel(out_rest, out_rho) + c * sum_to_rho;
  rec.decomposition = (1.0 - c) * rel(out_rest, out_rho) + c * rel(out_rho_r, out_rho) + c * sum_to_rho_r;
  rec.identity_residual = std::abs(rec.chi_augmented - rec.decomposition);
  rec.lower_holds = c * rec.chi_truncated <= rec.chi_augmented + slack;
  rec.upper_holds = rec.chi_augmented <= c * rec.chi_truncated + h2(c) + slack;
  return rec;
}

namespace {

double pure_trace_distance(const Vec& a, const Vec& b) {
  return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b))));
}

}  // namespace

Ensemble discretize_continuous(const ContinuousEnsembleSpec& spec) {
  if (spec.resolution < 1) throw DomainError("resolution must be positive");
  const double radius = 0.5 / spec.resolution;

  struct Cell {
    double weight = 0.0;
    Mat sum;
    Mat center;
  };
  std::vector<Cell> cells;
  auto add = [&](const Mat& state, double w) {
    for (Cell& c : cells)
      if (trace_distance(c.center, state) < radius) {
        c.weight += w;
        c.sum += w * state;
        return;
      }
    cells.push_back({w, w * state, state});
  };

  switch (spec.family) {
    case ContinuousFamily::circle: {
      if (spec.samples < 1) throw DomainError("sample count must be positive");
      std::vector<Vec> centers;
      std::vector<std::size_t> owner;
      const double w = 1.0 / spec.samples;
      for (int j = 0; j < spec.samples; ++j) {
        const double th = 2.0 * std::numbers::pi * (j + 0.5) / spec.samples;
        Vec v(2);
        v << 1.0 / std::numbers::sqrt2, std::polar(1.0 / std::numbers::sqrt2, th);
        std::size_t c = 0;
        while (c < centers.size() && pure_trace_distance(centers[c], v) >= radius) ++c;
        const Mat s = v * v.adjoint();
        if (c == centers.size()) {
          centers.push_back(v);
          cells.push_back({w, w * s, s});
        } else {
          cells[c].weight += w;
          cells[c].sum += w * s;
        }
      }
      break;
    }
    case ContinuousFamily::point:
      if (spec.states.size() != 1) throw ValidationError("point family needs exactly one state");
      add(spec.states[0], 1.0);
      break;
    case ContinuousFamily::two_point:
      if (spec.states.size() != 2) throw ValidationError("two-point family needs exactly two states");
      if (!(spec.weight > 0.0 && spec.weight < 1.0)) throw DomainError("two-point weight must lie in (0,1)");
      add(spec.states[0], spec.weight);
      add(spec.states[1], 1.0 - spec.weight);
      break;
  }

  std::vector<Member> out;
  for (const Cell& c : cells) {
    Mat bary = c.sum / c.weight;
    bary = 0.5 * (bary + bary.adjoint()).eval();
    bary /= bary.trace().real();
    out.push_back({c.weight, bary});
  }
  double total = 0.0;
  for (const Member& m : out) total += m.p;
  for (Member& m : out) m.p /= total;
  return Ensemble(std::move(out));
}

}  // namespace faprop
