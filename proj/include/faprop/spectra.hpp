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

// Eigenvalue sequences of states, gradings ("diagonal Hamiltonians") and the
// finite-approximation diagnostics built on them.
//
// Indexing convention: operator[](i) is the (i+1)-th largest eigenvalue, so
// tail(r) is the total weight outside the r largest eigenvalues.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace faprop {

enum class Verdict { holds, fails, inconclusive };
enum class SeriesVerdict { converges, diverges, inconclusive };

const char* to_string(Verdict v);
const char* to_string(SeriesVerdict v);

/// Nonincreasing probability sequence. Analytic kinds carry closed-form or
/// integral-bounded tails so that "infinite" spectra are exact at desk scale.
///
///   finite    explicit list, sorted on construction
///   geometric lambda_i = (1-s) s^(i-1)
///   powerlog  lambda_i = 1 / (Z i ln^q(i+1)), q > 1
class Spectrum {
 public:
  enum class Kind { finite, geometric, powerlog };

  static Spectrum finite(std::vector<double> p, double precision = 1e-12);
  static Spectrum geometric(double ratio, double precision = 1e-12);
  static Spectrum powerlog(double exponent, double precision = 1e-10);

  Kind kind() const noexcept { return kind_; }
  /// Ratio for geometric, exponent for powerlog, 0 for finite.
  double parameter() const noexcept { return param_; }
  double precision() const noexcept { return precision_; }
  /// Entries of a finite spectrum (including trailing zeros).
  std::span<const double> probabilities() const noexcept { return p_; }
  /// Number of nonzero entries; empty for infinite-rank kinds.
  std::optional<std::size_t> rank() const noexcept;

  double operator[](std::size_t i) const;
  /// First n entries, zero padded past the end of a finite spectrum.
  std::vector<double> head(std::size_t n) const;
  /// sum_{i >= r} (*this)[i]; tail(0) == 1.
  double tail(std::size_t r) const;

  bool operator==(const Spectrum& other) const;

 private:
  struct PowerLogTable;

  Spectrum() = default;

  Kind kind_ = Kind::finite;
  double param_ = 0.0;
  double precision_ = 1e-12;
  std::vector<double> p_;
  std::shared_ptr<const PowerLogTable> table_;
};

/// Nondecreasing nonnegative level sequence g_1 <= g_2 <= ...
///
///   linear          g_i = i + offset
///   polylog(q)      g_i = ln^q(i) + offset   (g_1 = offset)
///   explicit_levels a finite list (+ offset)
class Grading {
 public:
  enum class Kind { linear, polylog, explicit_levels };

  static Grading linear(double offset = 0.0);
  static Grading polylog(double exponent, double offset = 0.0);
  static Grading explicit_levels(std::vector<double> levels, double offset = 0.0);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  double offset() const noexcept { return offset_; }
  std::span<const double> levels() const noexcept { return levels_; }
  /// Number of levels; empty for unbounded kinds.
  std::optional<std::size_t> size() const noexcept;

  double operator[](std::size_t i) const;
  /// Continuous extension g(x), x >= 1, of an analytic grading.
  double continuous(double x) const;
  double minimum() const { return (*this)[0]; }

  bool operator==(const Grading& other) const = default;

 private:
  Grading() = default;

  Kind kind_ = Kind::linear;
  double param_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> levels_;
};

struct PartialSum {
  std::size_t n;
  double value;
};

/// Result of summing sum_i lambda_i g_i.
struct PairingEnergy {
  double value = 0.0;         ///< +inf on divergence, NaN when inconclusive
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  double tail_bound = 0.0;    ///< upper bound on the absolute error of value
  std::vector<PartialSum> evidence;
  std::string notes;

  bool finite() const noexcept { return verdict == SeriesVerdict::converges; }
};

/// Two-sided convergence test: explicit partial sums (up to 1e6 terms for
/// slowly decaying kinds) plus an integral or ratio comparison for the rest.
PairingEnergy pairing_energy(const Spectrum& spectrum, const Grading& grading);

struct FAReport {
  Verdict verdict = Verdict::inconclusive;
  PairingEnergy pairing;
  Grading grading_used = Grading::linear();
  double exponent = 0.0;
  std::string notes;
};

/// Sufficient condition sum_i lambda_i ln^q i < inf for some q > 2.
FAReport check_spcond(const Spectrum& spectrum, double q);

struct PowerDominatedReport {
  Verdict verdict = Verdict::inconclusive;
  double trace_power = 0.0;  ///< sum_i lambda_i^q, +inf on divergence
  std::vector<PartialSum> evidence;
  Verdict spcond_cross_check = Verdict::inconclusive;
};

/// Tr rho^q < inf for q in (0,1). A "holds" verdict is cross-checked against
/// check_spcond(spectrum, 3) and a disagreement throws std::logic_error.
PowerDominatedReport check_power_dominated(const Spectrum& spectrum, double q);

struct Majorization {
  enum class Outcome { majorizes, fails_at, inconclusive };
  Outcome outcome = Outcome::inconclusive;
  std::size_t n = 0;  ///< first failing partial sum length (1-based) for fails_at
};

/// Partial-sum dominance sum_{i<=n} a_i >= sum_{i<=n} b_i for n = 1..n_max.
Majorization majorizes(const Spectrum& a, const Spectrum& b, std::size_t n_max,
                       double tolerance = 1e-12);

struct WeylRecord {
  bool holds = true;
  std::size_t checked = 0;
  double worst_margin = 0.0;  ///< min over checks of rhs - lhs
  std::size_t first_violation = 0;
};

/// Interlacing bounds 2 w_{2i-1} <= a_i + b_i, 2 w_{2i} <= a_{i+1} + b_i for the
/// spectrum w of the commuting diagonal mixture (a + b) / 2.
WeylRecord mixture_spectrum_bound(const Spectrum& rho, const Spectrum& sigma,
                                  std::size_t i_max);

struct MixtureGrading {
  /// The interleaved levels in construction order. They need not be monotone.
  std::vector<double> levels;
  /// The same levels sorted ascending; pairing these with w can only lower the energy.
  Grading grading = Grading::linear();
  double energy = 0.0;  ///< sum_j g~_j w_j over the constructed levels
  double bound = 0.0;   ///< 2 (E_rho + E_sigma)
  bool within_bound = false;
};

/// Interleaved grading g~_{2i-1} = g~_{2i} = g^rho_i if rho_i >= sigma_i, else
/// g^sigma_i. Infinite spectra are represented by their first n_terms entries.
MixtureGrading mixture_grading(const Spectrum& rho, const Grading& g_rho,
                               const Spectrum& sigma, const Grading& g_sigma,
                               std::size_t n_terms = 2048);

/// Additive grading g_ij = g1_i + g2_j on a tensor product.
class ProductGrading {
 public:
  ProductGrading(Grading first, Grading second)
      : first_(std::move(first)), second_(std::move(second)) {}

  double operator()(std::size_t i, std::size_t j) const { return first_[i] + second_[j]; }
  /// Levels with i < n1, j < n2 flattened and sorted ascending.
  std::vector<double> sorted_levels(std::size_t n1, std::size_t n2) const;
  /// sum_ij a_i b_j g_ij over the first n1 x n2 entries.
  double pairing_energy(const Spectrum& a, const Spectrum& b, std::size_t n1,
                        std::size_t n2) const;

 private:
  Grading first_;
  Grading second_;
};

/// Marginal levels g1_i = sum_j lambda2_j g_ij of an arbitrary pair grading.
std::vector<double> marginal_levels(const std::vector<std::vector<double>>& pair_levels,
                                    std::span<const double> lambda2);

/// Finite spectrum lambda_i / (1 - tail(r)), i < r.
Spectrum truncate(const Spectrum& spectrum, std::size_t r);

inline double tail_sum(const Spectrum& spectrum, std::size_t r) { return spectrum.tail(r); }

}  // namespace faprop
