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

#include "faprop/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "faprop/errors.hpp"
#include "faprop/scalar.hpp"

namespace faprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kDirectTerms = 4096;

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

struct LogIntegral {
  double value = -kInf;  // log of the integral
  double rel_error = 0.0;
};

// log int_{u0}^inf exp(u - beta u^q + m q ln u) du, the x = e^u form of
// int_{e^u0}^inf ln^(m q)(x) exp(-beta ln^q x) dx. The exponent is concave for
// q >= 1, so the mass sits in one window around the maximizer.
LogIntegral log_tail_integral(double beta, double q, int m, double u0) {
  auto phi = [&](double u) { return u - beta * std::pow(u, q) + m * q * std::log(u); };
  auto dphi = [&](double u) { return 1.0 - beta * q * std::pow(u, q - 1.0) + m * q / u; };

  double ustar = u0;
  if (dphi(u0) > 0.0) {
    double lo = u0, hi = 2.0 * u0;
    while (dphi(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw DivergenceError("tail integral has no maximizer");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dphi(mid) > 0.0 ? lo : hi) = mid;
    }
    ustar = 0.5 * (lo + hi);
  }
  const double pmax = phi(ustar);
  constexpr double kDrop = 60.0;

  double d = 1e-6;
  while (phi(ustar + d) > pmax - kDrop) d *= 2.0;
  const double right = ustar + d;
  double left = u0;
  if (ustar > u0) {
    d = 1e-6;
    while (ustar - d > u0 && phi(ustar - d) > pmax - kDrop) d *= 2.0;
    left = std::max(u0, ustar - d);
  }

  auto simpson = [&](int panels) {
    const double h = (right - left) / panels;
    double acc = std::exp(phi(left) - pmax) + std::exp(phi(right) - pmax);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * std::exp(phi(left + k * h) - pmax);
    return acc * h / 3.0;
  };
  const double fine = simpson(4096);
  const double coarse = simpson(2048);
  LogIntegral out;
  out.value = pmax + std::log(fine);
  out.rel_error = std::abs(fine - coarse) / (15.0 * fine);
  return out;
}

struct Sums {
  double log_z = 0.0;
  double mean = 0.0;
  double entropy = 0.0;
  std::size_t n = 0;
  double error = 0.0;
};

Sums explicit_sums(const Grading& g, double beta) {
  const auto levels = g.levels();
  const double off = g.offset();
  double m = -kInf;
  for (double x : levels) m = std::max(m, -beta * (x + off));
  double z = 0.0;
  for (double x : levels) z += std::exp(-beta * (x + off) - m);
  Sums s;
  s.log_z = m + std::log(z);
  s.n = levels.size();
  for (double x : levels) {
    const double p = std::exp(-beta * (x + off) - s.log_z);
    s.mean += p * (x + off);
    s.entropy += eta(p);
  }
  return s;
}

Sums linear_sums(const Grading& g, double beta) {
  Sums s;
  s.log_z = -beta * (1.0 + g.offset()) - std::log(-std::expm1(-beta));
  const double occupation = 1.0 / std::expm1(beta);
  s.mean = 1.0 + g.offset() + occupation;
  s.entropy = bosonic_entropy(occupation);
  return s;
}

Sums polylog_sums(const Grading& g, double beta) {
  const double q = g.parameter();
  if (q < 1.0)
    throw DivergenceError("sum_i exp(-beta ln^q i) diverges for q < 1 at every beta");
  if (q == 1.0 && beta <= 1.0)
    throw DivergenceError("sum_i i^-beta diverges for beta <= 1");

  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 1; i < kDirectTerms; ++i) {
    const double lq = std::pow(std::log(static_cast<double>(i)), q);
    const double f = std::exp(-beta * lq);
    s0 += f;
    s1 += lq * f;
  }
  // Euler-Maclaurin correction at x = M for f and for ln^q(x) f.
  const double mx = static_cast<double>(kDirectTerms);
  const double lnm = std::log(mx);
  const double lq = std::pow(lnm, q);
  const double dlq = q * std::pow(lnm, q - 1.0) / mx;
  const double f = std::exp(-beta * lq);
  const double df = -beta * dlq * f;
  const double h = lq * f;
  const double dh = dlq * f + lq * df;
  s0 += f / 2.0 - df / 12.0;
  s1 += h / 2.0 - dh / 12.0;

  const auto i0 = log_tail_integral(beta, q, 0, lnm);
  const auto i1 = log_tail_integral(beta, q, 1, lnm);
  const double log_z0 = log_add_exp(std::log(s0), i0.value);
  const double log_num = log_add_exp(s1 > 0.0 ? std::log(s1) : -kInf, i1.value);

  Sums s;
  s.n = kDirectTerms;
  s.log_z = log_z0 - beta * g.offset();
  s.mean = std::exp(log_num - log_z0) + g.offset();
  s.entropy = beta * s.mean + s.log_z;
  // The next Euler-Maclaurin term is far below the quadrature error here.
  s.error = i0.rel_error * std::exp(i0.value - log_z0) + 1e-15 * std::abs(s.log_z);
  return s;
}

Sums sums(const Grading& g, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and nonnegative");
  if (beta == 0.0 && g.kind() != Grading::Kind::explicit_levels)
    throw DivergenceError("partition function of an unbounded grading diverges at beta = 0");
  switch (g.kind()) {
    case Grading::Kind::explicit_levels: return explicit_sums(g, beta);
    case Grading::Kind::linear: return linear_sums(g, beta);
    case Grading::Kind::polylog: return polylog_sums(g, beta);
  }
  return {};
}

GibbsSolve to_solve(double beta, const Sums& s) {
  GibbsSolve out;
  out.beta = beta;
  out.log_partition = s.log_z;
  out.mean_energy = s.mean;
  out.entropy = s.entropy;
  out.truncation_n = s.n;
  out.tail_bound = s.error;
  return out;
}

}  // namespace

GibbsSolve gibbs_at(const Grading& grading, double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  return to_solve(beta, sums(grading, beta));
}

double log_partition(const Grading& grading, double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  return sums(grading, beta).log_z;
}

std::vector<double> gibbs_probabilities(const Grading& grading, double beta, std::size_t n) {
  const double lz = sums(grading, beta).log_z;
  std::vector<double> p(n, 0.0);
  const std::size_t limit = grading.size() ? std::min(n, *grading.size()) : n;
  for (std::size_t i = 0; i < limit; ++i) p[i] = std::exp(-beta * grading[i] - lz);
  return p;
}

const char* to_string(HCondVerdict v) {
  switch (v) {
    case HCondVerdict::consistent_with_1: return "consistent-with-1";
    case HCondVerdict::fails: return "fails";
    case HCondVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<double> standard_beta_grid() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

HCondPlusReport check_hcond_plus(const Grading& grading, const std::vector<double>& beta_grid) {
  if (beta_grid.size() < 3) throw DomainError("beta grid needs at least 3 points");
  for (std::size_t k = 0; k < beta_grid.size(); ++k) {
    if (!(beta_grid[k] > 0.0)) throw DomainError("beta grid must be positive");
    if (k > 0 && !(beta_grid[k] < beta_grid[k - 1])) throw DomainError("beta grid must be decreasing");
  }
  HCondPlusReport r;
  r.betas = beta_grid;
  bool diverged = false;
  for (double b : beta_grid) {
    try {
      r.values.push_back(b * log_partition(grading, b));
    } catch (const DivergenceError&) {
      r.values.push_back(kInf);
      diverged = true;
    }
  }
  if (diverged) {
    r.tail_slope = 0.0;
    r.verdict = HCondVerdict::fails;
    return r;
  }
  const std::size_t n = r.values.size();
  if (std::all_of(r.values.end() - 3, r.values.end(), [](double v) { return v == 0.0; })) {
    r.tail_slope = kInf;
    r.verdict = HCondVerdict::consistent_with_1;
    return r;
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < n; ++k) decreasing = decreasing && r.values[k] < r.values[k - 1];
  bool positive = std::all_of(r.values.end() - 3, r.values.end(), [](double v) { return v > 0.0; });
  if (!positive) {
    r.verdict = HCondVerdict::inconclusive;
    return r;
  }
  double slope = kInf;
  for (std::size_t k = n - 2; k < n; ++k)
    slope = std::min(slope, std::log(r.values[k - 1] / r.values[k]) /
                                std::log(r.betas[k - 1] / r.betas[k]));
  r.tail_slope = slope;
  if (decreasing && slope >= 0.2)
    r.verdict = HCondVerdict::consistent_with_1;
  else if (slope < 0.05)
    r.verdict = HCondVerdict::fails;
  else
    r.verdict = HCondVerdict::inconclusive;
  return r;
}

GibbsSolve f_g(const Grading& grading, double energy) {
  if (!std::isfinite(energy)) throw DomainError("energy must be finite");
  if (!(energy > grading.minimum()))
    throw DomainError("F_G(E) requires E above the lowest level");

  if (grading.kind() == Grading::Kind::explicit_levels) {
    const auto uniform = explicit_sums(grading, 0.0);
    if (energy >= uniform.mean) return to_solve(0.0, uniform);
  }

  double hi = std::ldexp(1.0, 40);
  // Propagates DivergenceError for gradings that fail at every beta.
  (void)log_partition(grading, hi);
  auto mean = [&](double b) {
    try {
      return sums(grading, b).mean;
    } catch (const DivergenceError&) {
      return kInf;
    }
  };
  while (mean(hi) >= energy) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw InfeasibleError("could not bracket the Gibbs temperature");
  }
  double lo = std::ldexp(1.0, -40);
  while (mean(lo) <= energy) {
    lo /= 2.0;
    if (lo < 1e-300) throw InfeasibleError("could not bracket the Gibbs temperature");
  }
  for (int it = 0; it < 4000 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    (mean(mid) > energy ? lo : hi) = mid;
  }
  return to_solve(hi, sums(grading, hi));
}

SublinearityProbe f_g_sublinearity_probe(const Grading& grading,
                                         const std::vector<double>& energies) {
  SublinearityProbe p;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (k > 0 && !(energies[k] > energies[k - 1])) throw DomainError("energy grid must be increasing");
    const double f = f_g(grading, energies[k]).entropy;
    p.energies.push_back(energies[k]);
    p.values.push_back(f);
    p.ratios.push_back(f / std::sqrt(energies[k]));
  }
  const std::size_t n = p.ratios.size();
  p.decreasing_tail = n >= 3 && p.ratios[n - 1] < p.ratios[n - 2] && p.ratios[n - 2] < p.ratios[n - 3];
  p.verdict = p.decreasing_tail ? "decreasing-tail" : "not-decreasing";
  return p;
}

}  // namespace faprop
