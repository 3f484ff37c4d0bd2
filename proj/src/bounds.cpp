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

#include "faprop/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "faprop/errors.hpp"
#include "faprop/scalar.hpp"

namespace faprop {

std::size_t first_level_above(const Grading& grading, double energy) {
  const std::size_t limit = grading.size().value_or(std::size_t{1} << 40);
  if (grading.kind() == Grading::Kind::linear) {
    // g_r = r + offset > E
    const double need = std::floor(energy - grading.offset()) + 1.0;
    return static_cast<std::size_t>(std::max(1.0, need));
  }
  // nondecreasing levels: exponential then binary search on the 1-based index
  std::size_t hi = 1;
  while (hi <= limit && !(grading[hi - 1] > energy)) {
    if (hi > limit / 2) {
      hi = limit + 1;
      break;
    }
    hi *= 2;
  }
  if (hi > limit) {
    if (limit == 0 || !(grading[limit - 1] > energy))
      throw DomainError("no grading level exceeds the energy " + std::to_string(energy));
    hi = limit;
  }
  std::size_t lo = hi / 2;  // g_lo <= E (or lo = 0)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (grading[mid - 1] > energy)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

TruncationBound theorem2_bound(const Spectrum& spectrum, const Grading& grading, std::size_t r, double C,
                               double T, double D, double residual) {
  if (C < 0.0 || T < 0.0 || D < 0.0) throw DomainError("C, T, D must be nonnegative");
  if (residual < 0.0) throw DomainError("residual must be nonnegative");
  const PairingEnergy pe = pairing_energy(spectrum, grading);
  if (!pe.finite()) throw PreconditionError("E_rho is not finite for this spectrum and grading: " + pe.notes);

  TruncationBound b;
  b.r = r;
  b.energy = pe.value;
  b.r0 = first_level_above(grading, b.energy);
  if (r < b.r0)
    throw DomainError("r = " + std::to_string(r) + " is below r0 = " + std::to_string(b.r0));
  b.C = C;
  b.T = T;
  b.D = D;
  b.delta_r = spectrum.tail(r) + residual;
  if (b.delta_r <= 0.0) return b;  // rho_r = rho

  const double x = std::sqrt(2.0 * b.delta_r);
  if (C > 0.0) {
    const double e = b.energy / b.delta_r;
    // E / delta >= E >= g_1, with equality only for a ground-state-only rho
    b.fg = e > grading.minimum() ? f_g(grading, e).entropy : 0.0;
  }
  b.Y = x * (C * b.fg + T) + D * bosonic_entropy(x);
  return b;
}

std::vector<TruncationBound> theorem2_curve(const Spectrum& spectrum, const Grading& grading,
                                            const std::vector<std::size_t>& r_grid, double C, double T,
                                            double D, double residual) {
  std::vector<TruncationBound> out;
  out.reserve(r_grid.size());
  for (std::size_t r : r_grid) {
    out.push_back(theorem2_bound(spectrum, grading, r, C, T, D, residual));
    if (out.size() > 1) {
      const TruncationBound& a = out[out.size() - 2];
      const TruncationBound& b = out.back();
      if (b.r > a.r && b.Y > a.Y * (1.0 + 1e-12) + 1e-15)
        throw std::logic_error("bound increased from r=" + std::to_string(a.r) + " to r=" + std::to_string(b.r));
    }
  }
  return out;
}

CapacityEnvelope prop2_capacity_bounds(double entropy_rho_r, double c_r, double B) {
  if (!(c_r > 0.0 && c_r <= 1.0)) throw DomainError("c_r must lie in (0, 1]");
  if (entropy_rho_r < 0.0 || B < 0.0) throw DomainError("entropy and B must be nonnegative");
  CapacityEnvelope e;
  e.holevo_lower_gap = (1.0 - c_r) * entropy_rho_r;
  e.privacy_upper_gap = e.holevo_lower_gap + h2(c_r);
  e.holevo = std::max(B, e.holevo_lower_gap);
  e.privacy = std::max(2.0 * B, e.privacy_upper_gap);
  return e;
}

double purification_truncation_distance(double c_r) {
  if (!(c_r > 0.0 && c_r <= 1.0)) throw DomainError("c_r must lie in (0, 1]");
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - c_r));
}

namespace {

/// (Phi (x) Id)(|psi><psi|) with psi given as a d x d coefficient matrix
/// (system rows, reference columns).
Mat output_on(const Channel& phi, const Mat& coeff) {
  const Eigen::Index d = coeff.cols();
  const Eigen::Index dout = phi.dim_out();
  Mat omega = Mat::Zero(dout * d, dout * d);
  for (const Mat& k : phi.kraus()) {
    const Mat kp = k * coeff;
    Vec v(dout * d);
    for (Eigen::Index b = 0; b < dout; ++b) v.segment(b * d, d) = kp.row(b).transpose();
    omega.noalias() += v * v.adjoint();
  }
  return 0.5 * (omega + omega.adjoint());
}

Mat coefficients(const BuresWitness& w) {
  return w.basis * w.schmidt.cwiseSqrt().cast<cplx>().asDiagonal();
}

double witness_energy(const RVec& levels, const RVec& schmidt, const Mat& basis) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < schmidt.size(); ++i) {
    double hi = 0.0;
    for (Eigen::Index a = 0; a < levels.size(); ++a) hi += levels[a] * std::norm(basis(a, i));
    e += schmidt[i] * hi;
  }
  return e;
}

}  // namespace

double bures_on_witness(const Channel& phi, const Channel& psi, const BuresWitness& w) {
  const Mat c = coefficients(w);
  return bures_distance(output_on(phi, c), output_on(psi, c));
}

EcBuresEstimate ecbures_estimate(const Channel& phi, const Channel& psi, const Grading& grading, double energy,
                                 int n_samples, std::uint64_t seed) {
  const Eigen::Index d = phi.dim_in();
  if (psi.dim_in() != d || psi.dim_out() != phi.dim_out())
    throw DimensionMismatch("channels must share input and output dimensions");
  if (grading.size() && *grading.size() < static_cast<std::size_t>(d))
    throw DomainError("grading has fewer levels than the input dimension");
  RVec levels(d);
  for (Eigen::Index i = 0; i < d; ++i) levels[i] = grading[static_cast<std::size_t>(i)];
  const double gmin = levels.minCoeff();
  if (!(energy > gmin)) throw InfeasibleError("no input meets the energy constraint: E <= minimal level");

  EcBuresEstimate est;
  est.energy = energy;
  est.value = -1.0;
  auto consider = [&](BuresWitness w) {
    const double v = bures_on_witness(phi, psi, w);
    ++est.samples;
    if (v > est.value) {
      est.value = v;
      est.best_witness = std::move(w);
    }
    est.running_max.push_back(est.value);
  };

  // Purifications of Gibbs states of the restricted grading at energies up to E.
  {
    std::vector<double> lv(levels.data(), levels.data() + d);
    std::sort(lv.begin(), lv.end());
    const Grading restricted = Grading::explicit_levels(lv);
    double uniform_mean = 0.0;
    for (double g : lv) uniform_mean += g / static_cast<double>(d);
    // the basis order of `restricted` is sorted; map back through a permutation matrix
    std::vector<Eigen::Index> order(d);
    for (Eigen::Index i = 0; i < d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return levels[a] < levels[b]; });
    Mat perm = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) perm(order[i], i) = 1.0;
    for (int j = 1; j <= 16; ++j) {
      const double e = gmin + (energy - gmin) * j / 16.0;
      RVec p(d);
      if (e >= uniform_mean) {
        p.setConstant(1.0 / static_cast<double>(d));
      } else {
        const GibbsSolve gs = f_g(restricted, e);
        const std::vector<double> probs = gibbs_probabilities(restricted, gs.beta, static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i) p[i] = probs[i];
        p /= p.sum();
      }
      BuresWitness w{p, perm, 0.0};
      w.energy = witness_energy(levels, w.schmidt, w.basis);
      consider(std::move(w));
    }
  }

  // Random pure inputs: Dirichlet Schmidt coefficients, Haar Schmidt basis on
  // the input side. The reference-side unitary does not change the Bures
  // distance and is omitted. Infeasible draws are pulled toward the Schmidt
  // vector of least energy until the constraint is tight, or rejected.
  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int s = 0; s < n_samples; ++s) {
    RVec lam(d);
    for (Eigen::Index i = 0; i < d; ++i) lam[i] = expo(rng);
    lam /= lam.sum();
    const Mat u = haar_unitary(d, rng);
    RVec h(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      double acc = 0.0;
      for (Eigen::Index a = 0; a < d; ++a) acc += levels[a] * std::norm(u(a, i));
      h[i] = acc;
    }
    double e = lam.dot(h);
    if (e > energy) {
      Eigen::Index imin = 0;
      const double hmin = h.minCoeff(&imin);
      if (!(hmin < energy)) continue;
      const double t = (e - energy) / (e - hmin);
      lam *= (1.0 - t);
      lam[imin] += t;
      e = lam.dot(h);
    }
    consider(BuresWitness{lam, u, e});
  }
  if (est.samples == 0) throw InfeasibleError("no feasible input was sampled");
  return est;
}

RobustnessProfile robustness_profile(const Channel& phi, const std::function<Channel(double)>& family,
                                     const std::function<double(const Channel&)>& characteristic,
                                     const Grading& grading, double energy, std::vector<double> eps_grid,
                                     int n_samples, std::uint64_t seed) {
  if (eps_grid.empty()) throw DomainError("empty eps grid");
  std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());
  RobustnessProfile prof;
  const double f0 = characteristic(phi);
  for (double eps : eps_grid) {
    const Channel psi = family(eps);
    RobustnessRow row;
    row.eps = eps;
    row.bures_lower = ecbures_estimate(phi, psi, grading, energy, n_samples, seed).value;
    row.gap = std::abs(f0 - characteristic(psi));
    prof.rows.push_back(row);
  }

  constexpr double kZero = 1e-10;
  bool ok = true;
  std::string why;
  for (std::size_t i = 1; i < prof.rows.size(); ++i) {
    const RobustnessRow& a = prof.rows[i - 1];
    const RobustnessRow& b = prof.rows[i];
    if (b.eps == 0.0) continue;
    if (!(b.gap < a.gap) || !(b.bures_lower < a.bures_lower)) {
      ok = false;
      why = "not strictly decreasing at eps=" + std::to_string(b.eps);
      break;
    }
  }
  const RobustnessRow& last = prof.rows.back();
  if (ok && last.eps == 0.0 && (last.gap > kZero || last.bures_lower > kZero)) {
    ok = false;
    why = "nonzero row at eps=0";
  }
  if (ok && last.eps != 0.0 && last.gap >= prof.rows.front().gap) {
    ok = false;
    why = "no decrease along the grid";
  }
  prof.pass = ok;
  prof.verdict = ok ? "pass" : "fail: " + why;
  return prof;
}

}  // namespace faprop
