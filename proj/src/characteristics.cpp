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

#include "faprop/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include "faprop/errors.hpp"

namespace faprop {

double output_entropy(const Channel& phi, const Mat& rho) { return von_neumann_entropy(apply_channel(phi, rho)); }

double entropy_exchange(const Channel& phi, const Mat& rho) {
  return von_neumann_entropy(apply_complementary(phi, rho));
}

double mutual_information(const Channel& phi, const Mat& rho) {
  const Eigen::Index d = phi.dim_in();
  if (rho.rows() != d) throw DimensionMismatch("state dimension does not match the channel input");
  const Eigen::Index dout = phi.dim_out();
  const Vec psi = purify(rho);
  // psi as a d x d matrix (system rows, reference columns); (K (x) I) psi = K Psi.
  const Mat big = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      psi.data(), d, d);
  Mat omega = Mat::Zero(dout * d, dout * d);
  for (const Mat& k : phi.kraus()) {
    const Mat kp = k * big;  // dout x d
    Vec v(dout * d);
    for (Eigen::Index b = 0; b < dout; ++b) v.segment(b * d, d) = kp.row(b).transpose();
    omega.noalias() += v * v.adjoint();
  }
  omega = 0.5 * (omega + omega.adjoint()).eval();
  const double hb = von_neumann_entropy(partial_trace(omega, dout, d, Factor::second));
  const double hr = von_neumann_entropy(partial_trace(omega, dout, d, Factor::first));
  return hb + hr - von_neumann_entropy(omega);
}

double mutual_information_identity(const Channel& phi, const Mat& rho) {
  return von_neumann_entropy(rho) + output_entropy(phi, rho) - entropy_exchange(phi, rho);
}

double coherent_information(const Channel& phi, const Mat& rho) {
  return mutual_information(phi, rho) - von_neumann_entropy(rho);
}

double coherent_information_identity(const Channel& phi, const Mat& rho) {
  return output_entropy(phi, rho) - entropy_exchange(phi, rho);
}

double information_gain(const POVM& povm, const Mat& rho) { return mutual_information(qc_channel(povm), rho); }

// ---------------------------------------------------------------------------
// Ensemble optimizers

namespace {

/// t H(tau / t) with its gradient operator ln tau - ln t (log floored at 1e-14).
struct Subentropy {
  double value = 0.0;
  Mat log_ratio;
};

Subentropy subentropy(const Mat& tau, bool want_gradient) {
  Eigen::SelfAdjointEigenSolver<Mat> es(tau, want_gradient ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues().cwiseMax(0.0);
  Subentropy s;
  s.value = entropy_of_spectrum(ev);
  if (want_gradient) {
    const double t = std::max(ev.sum(), 1e-300);
    RVec l(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) l[i] = std::log(std::max(ev[i], 1e-14)) - std::log(t);
    s.log_ratio = es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
  }
  return s;
}

Mat qf(const Mat& y) {
  Eigen::HouseholderQR<Mat> qr(y);
  Mat q = qr.householderQ() * Mat::Identity(y.rows(), y.cols());
  const Mat& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

class EnsembleProblem {
 public:
  EnsembleProblem(const Channel& phi, const Mat& rho, Eigen::Index block, bool privacy)
      : phi_(phi), block_(block), privacy_(privacy) {
    a_ = sqrtm_psd(rho);
    base_ = von_neumann_entropy(apply_channel(phi, rho));
    if (privacy_) {
      base_ -= von_neumann_entropy(apply_complementary(phi, rho));
      comp_.emplace(complementary(phi));
    }
  }

  Eigen::Index block() const { return block_; }

  /// Unnormalized member sigma_b = A W_b W_b^* A, W = X^*.
  Mat member(const Mat& x, Eigen::Index b) const {
    const Mat wb = x.middleRows(b * block_, block_).adjoint();
    const Mat aw = a_ * wb;
    return aw * aw.adjoint();
  }

  double value(const Mat& x) const {
    double j = base_;
    const Eigen::Index nb = x.rows() / block_;
    for (Eigen::Index b = 0; b < nb; ++b) {
      const Mat s = member(x, b);
      if (s.trace().real() <= 1e-300) continue;
      j -= subentropy(apply_channel(phi_, s), false).value;
      if (privacy_) j += subentropy(apply_complementary(phi_, s), false).value;
    }
    return j;
  }

  /// Riemannian gradient on {X : X^* X = I}.
  Mat gradient(const Mat& x) const {
    const Eigen::Index nb = x.rows() / block_;
    Mat g = Mat::Zero(x.rows(), x.cols());
    for (Eigen::Index b = 0; b < nb; ++b) {
      const Mat s = member(x, b);
      if (s.trace().real() <= 1e-300) continue;
      Mat m = apply_adjoint(phi_, subentropy(apply_channel(phi_, s), true).log_ratio);
      if (privacy_) {
        m -= apply_adjoint(*comp_, subentropy(apply_complementary(phi_, s), true).log_ratio);
      }
      g.middleRows(b * block_, block_) = x.middleRows(b * block_, block_) * (a_ * m * a_);
    }
    const Mat sym = 0.5 * (x.adjoint() * g + g.adjoint() * x);
    return g - x * sym;
  }

  Ensemble ensemble(const Mat& x) const {
    std::vector<Member> out;
    double total = 0.0;
    const Eigen::Index nb = x.rows() / block_;
    for (Eigen::Index b = 0; b < nb; ++b) {
      Mat s = member(x, b);
      const double p = s.trace().real();
      if (p <= 1e-15) continue;
      s /= p;
      out.push_back({p, 0.5 * (s + s.adjoint())});
      total += p;
    }
    for (Member& m : out) m.p /= total;
    return Ensemble(std::move(out));
  }

 private:
  const Channel& phi_;
  Eigen::Index block_;
  bool privacy_;
  Mat a_;
  double base_ = 0.0;
  std::optional<Channel> comp_;
};

struct AscentResult {
  Mat x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentResult ascend(const EnsembleProblem& prob, Mat x, const OptimizerBudget& budget,
                    std::vector<double>& trace, int& iterations) {
  double j = prob.value(x);
  std::vector<double> local{j};
  double step = 1.0;
  AscentResult r;
  while (iterations < budget.max_iterations) {
    const Mat g = prob.gradient(x);
    const double gn = g.squaredNorm();
    if (gn < 1e-20) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    step = std::min(1.0, 4.0 * step);
    while (step > 1e-14) {
      const Mat cand = qf(x + step * g);
      const double jc = prob.value(cand);
      if (jc >= j + 1e-4 * step * gn) {
        x = cand;
        j = jc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++iterations;
    if (!accepted) {
      r.converged = true;
      break;
    }
    local.push_back(j);
    trace.push_back(j);
    const int w = budget.stall_window;
    if (static_cast<int>(local.size()) > w && j - local[local.size() - 1 - w] < budget.stall_tolerance) {
      r.converged = true;
      break;
    }
  }
  r.x = std::move(x);
  r.value = j;
  return r;
}

CapacityEstimate optimize(const Channel& phi, const Mat& rho, const OptimizerBudget& budget, bool privacy) {
  const Eigen::Index d = phi.dim_in();
  if (rho.rows() != d) throw DimensionMismatch("state dimension does not match the channel input");
  require_hermitian(rho, "state");
  const Eigen::Index block = privacy ? d : 1;
  const Eigen::Index cap = budget.max_members > 0 ? budget.max_members : d * d;
  const EnsembleProblem prob(phi, rho, block, privacy);

  // Eigen-ensemble start: member k carries eigenvector e_k in its first column.
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Mat x0 = Mat::Zero(cap * block, d);
  for (Eigen::Index k = 0; k < d; ++k) x0.row(k * block) = es.eigenvectors().col(d - 1 - k).adjoint();

  CapacityEstimate est{0.0, prob.ensemble(x0), {}, 0, false, "lower estimate"};
  int total_iterations = 0;

  auto run_from = [&](const Mat& x, Eigen::Index active, std::vector<double>& trace) {
    int iterations = 0;
    AscentResult best = ascend(prob, x, budget, trace, iterations);
    // Splitting: mix the heaviest member, the next one and an empty slot by a
    // 3x3 Fourier unitary, then re-ascend; keep the result only if it improves.
    while (active < cap && iterations < budget.max_iterations) {
      std::vector<std::pair<double, Eigen::Index>> weights;
      for (Eigen::Index b = 0; b < active; ++b) weights.push_back({prob.member(best.x, b).trace().real(), b});
      std::stable_sort(weights.begin(), weights.end(), [](auto& l, auto& r) { return l.first > r.first; });
      if (weights.size() < 2) break;
      const Eigen::Index idx[3] = {weights[0].second, weights[1].second, active};
      Mat xs = best.x;
      const cplx w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
      for (Eigen::Index c = 0; c < block; ++c)
        for (int s = 0; s < 3; ++s) {
          Eigen::Matrix<cplx, 1, Eigen::Dynamic> acc = Eigen::Matrix<cplx, 1, Eigen::Dynamic>::Zero(d);
          for (int t = 0; t < 3; ++t) acc += std::pow(w, s * t) / std::sqrt(3.0) * best.x.row(idx[t] * block + c);
          xs.row(idx[s] * block + c) = acc;
        }
      std::vector<double> scratch;
      AscentResult trial = ascend(prob, xs, budget, scratch, iterations);
      if (trial.value <= best.value + budget.stall_tolerance) break;
      trace.insert(trace.end(), scratch.begin(), scratch.end());
      best = std::move(trial);
      ++active;
    }
    total_iterations += iterations;
    return best;
  };

  AscentResult best = run_from(x0, d, est.trace);
  // Seeded generic starts: every slot occupied, members mixed when block > 1.
  Rng rng(budget.seed);
  for (int s = 0; s < budget.random_starts; ++s) {
    std::vector<double> trace;
    AscentResult r = run_from(haar_isometry(cap * block, d, rng), cap, trace);
    if (r.value > best.value) {
      best = std::move(r);
      est.trace = std::move(trace);
    }
  }

  est.value = best.value;
  est.ensemble = prob.ensemble(best.x);
  est.iterations = total_iterations;
  est.converged = best.converged;
  if (!privacy) {
    if (est.value > von_neumann_entropy(rho) + 1e-9)
      throw std::logic_error("constrained Holevo estimate exceeds H(rho)");
  } else if (est.value > holevo_quantity(phi, est.ensemble) + 1e-9) {
    throw std::logic_error("privacy estimate exceeds the Holevo quantity of its ensemble");
  }
  return est;
}

}  // namespace

CapacityEstimate constrained_holevo(const Channel& phi, const Mat& rho, const OptimizerBudget& budget) {
  return optimize(phi, rho, budget, false);
}

CapacityEstimate one_shot_privacy(const Channel& phi, const Mat& rho, const OptimizerBudget& budget) {
  return optimize(phi, rho, budget, true);
}

// ---------------------------------------------------------------------------
// L(C,T,D)

Characteristic entropy_characteristic(Eigen::Index d) {
  return {"entropy", d, [](const Mat& r) { return von_neumann_entropy(r); }, {0, 1, 0, 1, 0, 0}};
}

Characteristic output_entropy_characteristic(const Channel& phi) {
  const double lnk = std::log(static_cast<double>(phi.env_dim()));
  return {"output_entropy", phi.dim_in(), [phi](const Mat& r) { return output_entropy(phi, r); },
          {0, 1, 0, 1, 0, lnk}};
}

Characteristic entropy_exchange_characteristic(const Channel& phi) {
  const double lnk = std::log(static_cast<double>(phi.env_dim()));
  return {"entropy_exchange", phi.dim_in(), [phi](const Mat& r) { return entropy_exchange(phi, r); },
          {0, 1, 0, 1, 0, lnk}};
}

Characteristic mutual_information_characteristic(const Channel& phi) {
  return {"mutual_information", phi.dim_in(), [phi](const Mat& r) { return mutual_information(phi, r); },
          {0, 2, 0, 2, 0, 0}};
}

Characteristic coherent_information_characteristic(const Channel& phi) {
  return {"coherent_information", phi.dim_in(), [phi](const Mat& r) { return coherent_information(phi, r); },
          {1, 1, 1, 1, 0, 0}};
}

Characteristic information_gain_characteristic(const POVM& povm) {
  const Channel qc = qc_channel(povm);
  return {"information_gain", povm.dim(), [qc](const Mat& r) { return mutual_information(qc, r); },
          {0, 2, 0, 2, 0, 0}};
}

LctdRecord verify_lctd(const Characteristic& ch, const ClassLCTD& claim, int trials, std::uint64_t seed,
                       double slack) {
  LctdRecord rec;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  rec.worst_lower_affinity = rec.worst_upper_affinity = kInf;
  rec.worst_lower_sandwich = rec.worst_upper_sandwich = kInf;
  Rng rng(seed);
  std::uniform_int_distribution<Eigen::Index> rank(1, ch.dim_in);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sandwich = [&](const Mat& r, double f) {
    const double h = von_neumann_entropy(r);
    const double lo = f + claim.c_minus * h + claim.t_minus;
    const double hi = claim.c_plus * h + claim.t_plus - f;
    rec.worst_lower_sandwich = std::min(rec.worst_lower_sandwich, lo);
    rec.worst_upper_sandwich = std::min(rec.worst_upper_sandwich, hi);
    return lo >= -slack && hi >= -slack;
  };

  for (int t = 0; t < trials; ++t) {
    const Mat rho = random_density(ch.dim_in, rank(rng), rng);
    const Mat sigma = random_density(ch.dim_in, rank(rng), rng);
    double p = unit(rng);
    if (p <= 0.0) p = 0.5;
    const Mat mix = p * rho + (1.0 - p) * sigma;
    const double fr = ch.f(rho), fs = ch.f(sigma), fm = ch.f(mix);
    const double defect = fm - p * fr - (1.0 - p) * fs;
    const double lo = defect + claim.a * h2(p);
    const double hi = claim.b * h2(p) - defect;
    rec.worst_lower_affinity = std::min(rec.worst_lower_affinity, lo);
    rec.worst_upper_affinity = std::min(rec.worst_upper_affinity, hi);
    bool ok = lo >= -slack && hi >= -slack;
    ok = sandwich(rho, fr) && ok;
    ok = sandwich(sigma, fs) && ok;
    ok = sandwich(mix, fm) && ok;
    ++rec.trials;
    if (!ok && rec.holds) {
      rec.holds = false;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s trial %d: p=%.17g f(rho)=%.17g f(sigma)=%.17g f(mix)=%.17g",
                    ch.name.c_str(), t, p, fr, fs, fm);
      rec.counterexample = buf;
    }
  }
  return rec;
}

double appendix_f_phi(const StateFunction& f, const Channel& phi, const Mat& rho) {
  const Mat out = apply_channel(phi, rho);
  const double norm = out.trace().real();  // trace norm of a PSD operator
  if (norm <= 1e-15) return 0.0;
  return norm * f(out / norm);
}

}  // namespace faprop
