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

#include "faprop/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "faprop/errors.hpp"

namespace faprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kPartialSumTerms = 1'000'000;
constexpr std::size_t kPowerLogTable = std::size_t{1} << 16;

// Unnormalized powerlog weight of the i1-th entry (1-based).
double powerlog_weight(double q, double i1) { return 1.0 / (i1 * std::pow(std::log1p(i1), q)); }

// sum_{i1 > n} 1/(i1 ln^q(i1+1)) by Euler-Maclaurin around an integral that is
// exact up to a rapidly converging remainder:
//   int_n^inf dx / (x ln^q(x+1)) = U^(1-q)/(q-1) + int_U^inf u^-q / (e^u - 1) du,
// with U = ln(n+1).
double powerlog_tail_after(double q, double n) {
  const double u0 = std::log1p(n);
  double integral = std::pow(u0, 1.0 - q) / (q - 1.0);
  {
    const int panels = 2000;
    const double h = 60.0 / panels;
    auto f = [q](double u) { return std::pow(u, -q) / std::expm1(u); };
    double acc = f(u0) + f(u0 + 60.0);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(u0 + k * h);
    integral += acc * h / 3.0;
  }
  const double fn = powerlog_weight(q, n);
  const double dlog = -1.0 / n - q / ((n + 1.0) * std::log1p(n));
  const double dfn = fn * dlog;
  return integral - fn / 2.0 - dfn / 12.0;
}

bool is_decade(std::size_t n) {
  while (n >= 10 && n % 10 == 0) n /= 10;
  return n == 1;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::converges: return "converges";
    case SeriesVerdict::diverges: return "diverges";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Spectrum

struct Spectrum::PowerLogTable {
  double normalization = 0.0;
  std::vector<double> suffix;  // suffix[j] = sum_{k >= j} weight(k+1), all k
};

Spectrum Spectrum::finite(std::vector<double> p, double precision) {
  if (p.empty()) throw ValidationError("finite spectrum must not be empty");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw ValidationError("spectrum entries must be finite and nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > std::max(precision, 1e-9))
    throw ValidationError("spectrum entries must sum to 1");
  std::sort(p.begin(), p.end(), std::greater<>());
  Spectrum s;
  s.kind_ = Kind::finite;
  s.precision_ = precision;
  s.p_ = std::move(p);
  return s;
}

Spectrum Spectrum::geometric(double ratio, double precision) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("geometric ratio must lie in (0,1)");
  Spectrum s;
  s.kind_ = Kind::geometric;
  s.param_ = ratio;
  s.precision_ = precision;
  return s;
}

Spectrum Spectrum::powerlog(double exponent, double precision) {
  if (!(exponent > 1.0) || !std::isfinite(exponent))
    throw DomainError("powerlog exponent must exceed 1 for a normalizable spectrum");
  auto table = std::make_shared<PowerLogTable>();
  table->suffix.resize(kPowerLogTable);
  double acc = powerlog_tail_after(exponent, static_cast<double>(kPowerLogTable));
  for (std::size_t j = kPowerLogTable; j-- > 0;) {
    acc += powerlog_weight(exponent, static_cast<double>(j + 1));
    table->suffix[j] = acc;
  }
  table->normalization = acc;
  Spectrum s;
  s.kind_ = Kind::powerlog;
  s.param_ = exponent;
  s.precision_ = precision;
  s.table_ = std::move(table);
  return s;
}

std::optional<std::size_t> Spectrum::rank() const noexcept {
  if (kind_ != Kind::finite) return std::nullopt;
  return static_cast<std::size_t>(std::count_if(p_.begin(), p_.end(), [](double x) { return x > 0.0; }));
}

double Spectrum::operator[](std::size_t i) const {
  switch (kind_) {
    case Kind::finite: return i < p_.size() ? p_[i] : 0.0;
    case Kind::geometric: return (1.0 - param_) * std::pow(param_, static_cast<double>(i));
    case Kind::powerlog:
      return powerlog_weight(param_, static_cast<double>(i + 1)) / table_->normalization;
  }
  return 0.0;
}

std::vector<double> Spectrum::head(std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (*this)[i];
  return out;
}

double Spectrum::tail(std::size_t r) const {
  if (r == 0) return 1.0;
  switch (kind_) {
    case Kind::finite: {
      double acc = 0.0;
      for (std::size_t i = r; i < p_.size(); ++i) acc += p_[i];
      return acc;
    }
    case Kind::geometric: return std::pow(param_, static_cast<double>(r));
    case Kind::powerlog:
      if (r < table_->suffix.size()) return table_->suffix[r] / table_->normalization;
      return powerlog_tail_after(param_, static_cast<double>(r)) / table_->normalization;
  }
  return 0.0;
}

bool Spectrum::operator==(const Spectrum& other) const {
  return kind_ == other.kind_ && param_ == other.param_ && p_ == other.p_;
}

Spectrum truncate(const Spectrum& spectrum, std::size_t r) {
  if (r == 0) throw DomainError("truncation rank must be positive");
  if (auto rank = spectrum.rank(); rank && r > *rank)
    throw RankExceededError("truncation rank " + std::to_string(r) + " exceeds spectrum rank " +
                            std::to_string(*rank));
  auto head = spectrum.head(r);
  const double kept = spectrum.kind() == Spectrum::Kind::finite
                          ? std::accumulate(head.begin(), head.end(), 0.0)
                          : 1.0 - spectrum.tail(r);
  for (double& x : head) x /= kept;
  return Spectrum::finite(std::move(head), spectrum.precision());
}

// ---------------------------------------------------------------------------
// Grading

Grading Grading::linear(double offset) {
  if (!(offset >= 0.0)) throw DomainError("grading offset must be nonnegative");
  Grading g;
  g.kind_ = Kind::linear;
  g.offset_ = offset;
  return g;
}

Grading Grading::polylog(double exponent, double offset) {
  if (!(exponent > 0.0)) throw DomainError("polylog grading exponent must be positive");
  if (!(offset >= 0.0)) throw DomainError("grading offset must be nonnegative");
  Grading g;
  g.kind_ = Kind::polylog;
  g.param_ = exponent;
  g.offset_ = offset;
  return g;
}

Grading Grading::explicit_levels(std::vector<double> levels, double offset) {
  if (levels.empty()) throw ValidationError("explicit grading must have at least one level");
  if (!(offset >= 0.0)) throw DomainError("grading offset must be nonnegative");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0) || !std::isfinite(levels[i]))
      throw ValidationError("grading levels must be finite and nonnegative");
    if (i > 0 && levels[i] < levels[i - 1])
      throw ValidationError("grading levels must be nondecreasing");
  }
  Grading g;
  g.kind_ = Kind::explicit_levels;
  g.offset_ = offset;
  g.levels_ = std::move(levels);
  return g;
}

std::optional<std::size_t> Grading::size() const noexcept {
  if (kind_ == Kind::explicit_levels) return levels_.size();
  return std::nullopt;
}

double Grading::operator[](std::size_t i) const {
  switch (kind_) {
    case Kind::linear: return static_cast<double>(i + 1) + offset_;
    case Kind::polylog:
      return i == 0 ? offset_ : std::pow(std::log(static_cast<double>(i + 1)), param_) + offset_;
    case Kind::explicit_levels:
      if (i >= levels_.size()) throw DomainError("grading level index out of range");
      return levels_[i] + offset_;
  }
  return 0.0;
}

double Grading::continuous(double x) const {
  switch (kind_) {
    case Kind::linear: return x + offset_;
    case Kind::polylog: return std::pow(std::log(x), param_) + offset_;
    case Kind::explicit_levels: break;
  }
  throw DomainError("explicit gradings have no continuous extension");
}

// ---------------------------------------------------------------------------
// Pairing energy

namespace {

PairingEnergy direct_partial_sums(const Spectrum& s, const Grading& g, std::size_t n,
                                  double& total) {
  PairingEnergy out;
  total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += s[i] * g[i];
    if (is_decade(i + 1)) out.evidence.push_back({i + 1, total});
  }
  return out;
}

}  // namespace

PairingEnergy pairing_energy(const Spectrum& spectrum, const Grading& grading) {
  using K = Spectrum::Kind;
  using GK = Grading::Kind;

  if (spectrum.kind() == K::finite) {
    const std::size_t n = spectrum.probabilities().size();
    std::size_t support = n;
    while (support > 0 && spectrum[support - 1] == 0.0) --support;
    if (auto size = grading.size(); size && *size < support) {
      PairingEnergy out;
      out.value = kNaN;
      out.notes = "grading has fewer levels than the spectrum support";
      return out;
    }
    double total = 0.0;
    PairingEnergy out = direct_partial_sums(spectrum, grading, support, total);
    out.evidence.push_back({support, total});
    out.value = total;
    out.verdict = SeriesVerdict::converges;
    out.notes = "finite sum";
    return out;
  }

  if (grading.kind() == GK::explicit_levels) {
    PairingEnergy out;
    out.value = kNaN;
    out.notes = "finite grading paired with an infinite-rank spectrum: levels beyond the list are undefined";
    return out;
  }

  const double off = grading.offset();

  if (spectrum.kind() == K::geometric) {
    const double s = spectrum.parameter();
    PairingEnergy out;
    if (grading.kind() == GK::linear) {
      out.value = 1.0 / (1.0 - s) + off;
      out.verdict = SeriesVerdict::converges;
      out.notes = "closed form sum_i i (1-s) s^(i-1) = 1/(1-s)";
      return out;
    }
    // polylog grading: terms decay at least geometrically once the ratio
    // s (ln(i+2)/ln(i+1))^q drops below one.
    const double q = grading.parameter();
    double total = 0.0;
    for (std::size_t i = 0; i < kPartialSumTerms; ++i) {
      total += spectrum[i] * grading[i];
      if (is_decade(i + 1)) out.evidence.push_back({i + 1, total});
      if (i < 2) continue;
      const double ratio = s * std::pow(std::log(i + 3.0) / std::log(i + 2.0), q);
      if (ratio >= 1.0) continue;
      const double bound = spectrum[i + 1] * grading[i + 1] / (1.0 - ratio);
      if (bound <= 1e-17 * total) {
        out.evidence.push_back({i + 1, total});
        out.value = total + bound / 2.0;
        out.tail_bound = bound / 2.0;
        out.verdict = SeriesVerdict::converges;
        out.notes = "ratio test: tail bounded by a geometric series";
        return out;
      }
    }
    out.value = kNaN;
    out.notes = "ratio test did not certify the tail within the term budget";
    return out;
  }

  // powerlog spectrum: lambda_i ~ 1/(Z i ln^q(i+1)).
  const double q = spectrum.parameter();
  double total = 0.0;
  PairingEnergy out = direct_partial_sums(spectrum, grading, kPartialSumTerms, total);
  const double n = static_cast<double>(kPartialSumTerms);
  const double norm = powerlog_weight(q, 1.0) / spectrum[0];
  if (grading.kind() == GK::linear) {
    out.value = kInf;
    out.verdict = SeriesVerdict::diverges;
    out.notes = "terms lambda_i * i ~ 1/ln^q(i) are not summable";
    return out;
  }
  const double qg = grading.parameter();
  const double p = q - qg;
  if (p > 1.0) {
    const double ln_n = std::log(n);
    const double upper =
        (std::pow(ln_n, 1.0 - p) / (p - 1.0) + off * std::pow(ln_n, 1.0 - q) / (q - 1.0)) / norm;
    out.value = total + upper / 2.0;
    out.tail_bound = upper / 2.0;
    out.verdict = SeriesVerdict::converges;
    out.notes = "integral comparison: tail <= ln^(1-p) N / ((p-1) Z) with p = q_spectrum - q_grading > 1";
    return out;
  }
  out.value = kInf;
  out.verdict = SeriesVerdict::diverges;
  out.notes = "integral comparison: terms >= c / (i ln^p(i+1)) with p = q_spectrum - q_grading <= 1";
  return out;
}

FAReport check_spcond(const Spectrum& spectrum, double q) {
  if (!(q > 2.0)) throw DomainError("spectral condition requires q > 2 (ln^q i gradings satisfy the Gibbs-tail condition iff q > 2)");
  FAReport report;
  report.exponent = q;
  report.grading_used = Grading::polylog(q);
  report.pairing = pairing_energy(spectrum, report.grading_used);
  switch (report.pairing.verdict) {
    case SeriesVerdict::converges:
      report.verdict = Verdict::holds;
      report.notes = "sum_i lambda_i ln^q i is finite; the FA-property holds with this grading";
      break;
    case SeriesVerdict::diverges:
      report.verdict = Verdict::fails;
      report.notes = "sum_i lambda_i ln^q i diverges for this q; this is evidence against the "
                     "sufficient condition only, not a verdict on the FA-property";
      break;
    case SeriesVerdict::inconclusive:
      report.verdict = Verdict::inconclusive;
      report.notes = report.pairing.notes;
      break;
  }
  return report;
}

PowerDominatedReport check_power_dominated(const Spectrum& spectrum, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("power domination exponent must lie in (0,1)");
  PowerDominatedReport report;
  switch (spectrum.kind()) {
    case Spectrum::Kind::finite: {
      double acc = 0.0;
      for (double x : spectrum.probabilities())
        if (x > 0.0) acc += std::pow(x, q);
      report.trace_power = acc;
      report.verdict = Verdict::holds;
      break;
    }
    case Spectrum::Kind::geometric: {
      const double s = spectrum.parameter();
      report.trace_power = std::pow(1.0 - s, q) / (1.0 - std::pow(s, q));
      report.verdict = Verdict::holds;
      break;
    }
    case Spectrum::Kind::powerlog: {
      // lambda_i^q >= c i^-q ln^-(q q_s)(i+1) with q < 1: divergent.
      double acc = 0.0;
      for (std::size_t i = 0; i < kPartialSumTerms; ++i) {
        acc += std::pow(spectrum[i], q);
        if (is_decade(i + 1)) report.evidence.push_back({i + 1, acc});
      }
      report.trace_power = kInf;
      report.verdict = Verdict::fails;
      break;
    }
  }
  if (report.verdict == Verdict::holds) {
    report.spcond_cross_check = check_spcond(spectrum, 3.0).verdict;
    if (report.spcond_cross_check != Verdict::holds)
      throw std::logic_error("power dominated spectrum failed the ln^3 spectral condition");
  }
  return report;
}

Majorization majorizes(const Spectrum& a, const Spectrum& b, std::size_t n_max, double tolerance) {
  Majorization out;
  if (a == b) {
    out.outcome = Majorization::Outcome::majorizes;
    out.n = n_max;
    return out;
  }
  double ca = 0.0, cb = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    ca += a[n];
    cb += b[n];
    if (ca < cb - tolerance) {
      out.outcome = Majorization::Outcome::fails_at;
      out.n = n + 1;
      return out;
    }
  }
  out.n = n_max;
  if (auto rank = a.rank(); rank && *rank <= n_max) {
    out.outcome = Majorization::Outcome::majorizes;
  } else if (a.kind() == Spectrum::Kind::geometric && b.kind() == Spectrum::Kind::geometric) {
    out.outcome = a.parameter() <= b.parameter() ? Majorization::Outcome::majorizes
                                                 : Majorization::Outcome::fails_at;
  } else {
    out.outcome = Majorization::Outcome::inconclusive;
  }
  return out;
}

WeylRecord mixture_spectrum_bound(const Spectrum& rho, const Spectrum& sigma, std::size_t i_max) {
  const std::size_t n = 2 * i_max + 1;
  const auto a = rho.head(n);
  const auto b = sigma.head(n);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = 0.5 * (a[j] + b[j]);
  std::sort(w.begin(), w.end(), std::greater<>());

  WeylRecord rec;
  rec.worst_margin = kInf;
  auto check = [&](double lhs, double rhs, std::size_t i) {
    ++rec.checked;
    const double margin = rhs - lhs;
    rec.worst_margin = std::min(rec.worst_margin, margin);
    if (margin < -1e-15 * std::max(1.0, std::abs(rhs)) && rec.holds) {
      rec.holds = false;
      rec.first_violation = i;
    }
  };
  for (std::size_t i = 1; i <= i_max; ++i) {
    const double ai = a[i - 1], bi = b[i - 1], ai1 = a[i], bi1 = b[i];
    check(2.0 * w[2 * i - 2], ai + bi, i);
    check(2.0 * w[2 * i - 1], std::min(ai1 + bi, ai + bi1), i);
  }
  return rec;
}

MixtureGrading mixture_grading(const Spectrum& rho, const Grading& g_rho, const Spectrum& sigma,
                               const Grading& g_sigma, std::size_t n_terms) {
  const auto e_rho = pairing_energy(rho, g_rho);
  const auto e_sigma = pairing_energy(sigma, g_sigma);
  if (!e_rho.finite() || !e_sigma.finite())
    throw PreconditionError("mixture_grading requires finite pairing energies");

  std::size_t n = n_terms;
  if (rho.rank() && sigma.rank()) n = std::max(rho.probabilities().size(), sigma.probabilities().size());
  if (auto s = g_rho.size()) n = std::min(n, *s);
  if (auto s = g_sigma.size()) n = std::min(n, *s);

  const auto a = rho.head(n);
  const auto b = sigma.head(n);
  std::vector<double> levels(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = a[i] >= b[i] ? g_rho[i] : g_sigma[i];
    levels[2 * i] = gi;
    levels[2 * i + 1] = gi;
  }
  std::vector<double> w(2 * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) w[j] = 0.5 * (a[j] + b[j]);
  std::sort(w.begin(), w.end(), std::greater<>());

  MixtureGrading out;
  for (std::size_t j = 0; j < 2 * n; ++j) out.energy += levels[j] * w[j];
  out.bound = 2.0 * (e_rho.value + e_sigma.value);
  out.within_bound = out.energy <= out.bound * (1.0 + 1e-12) + 1e-300;
  out.levels = levels;
  std::sort(levels.begin(), levels.end());
  out.grading = Grading::explicit_levels(std::move(levels));
  return out;
}

std::vector<double> ProductGrading::sorted_levels(std::size_t n1, std::size_t n2) const {
  std::vector<double> out;
  out.reserve(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out.push_back((*this)(i, j));
  std::sort(out.begin(), out.end());
  return out;
}

double ProductGrading::pairing_energy(const Spectrum& a, const Spectrum& b, std::size_t n1,
                                      std::size_t n2) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < n2; ++j) acc += ai * b[j] * (*this)(i, j);
  }
  return acc;
}

std::vector<double> marginal_levels(const std::vector<std::vector<double>>& pair_levels,
                                    std::span<const double> lambda2) {
  std::vector<double> out(pair_levels.size(), 0.0);
  for (std::size_t i = 0; i < pair_levels.size(); ++i) {
    if (pair_levels[i].size() < lambda2.size())
      throw DimensionMismatch("pair grading row shorter than the second spectrum");
    for (std::size_t j = 0; j < lambda2.size(); ++j) out[i] += lambda2[j] * pair_levels[i][j];
  }
  return out;
}

}  // namespace faprop
