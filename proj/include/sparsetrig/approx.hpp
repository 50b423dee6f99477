// Copyright 2026 The SparseTrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Constructive m-term approximation: harmonic budget plans over dyadic
// levels, greedy per-block reduction, approximant assembly, the pure greedy
// and orthogonal-projection baselines, and an exhaustive best-subset oracle
// for small instances.

#ifndef SPARSETRIG_APPROX_HPP_
#define SPARSETRIG_APPROX_HPP_

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsetrig/norms.hpp"

namespace sparsetrig {

enum class Scheme { kCaseA, kCaseB, kUnivariate, kGreedy, kOrthogonal };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kCaseA: return "case_a";
    case Scheme::kCaseB: return "case_b";
    case Scheme::kUnivariate: return "univariate";
    case Scheme::kGreedy: return "greedy";
    case Scheme::kOrthogonal: return "orthogonal";
  }
  return "?";
}

/// Harmonic budget schedule: levels below base_level are kept in full,
/// levels base_level..cutoff_level get m_s harmonics each, levels beyond are
/// dropped. After the shrink step the hard budget
/// kept_full + sum(budgets) <= m holds exactly.
struct BudgetPlan {
  Scheme scheme = Scheme::kGreedy;
  Index m = 0;
  int base_level = 0;   // l
  double gamma = 0.0;   // cutoff factor
  int cutoff_level = -1;
  Index kept_full = 0;  // harmonics in the full levels, constant included
  std::map<int, Index> budgets;             // s -> m_s, post-shrink
  std::map<int, Index> budgets_pre_shrink;  // s -> m_s as derived
  double shrink_factor = 1.0;

  Index pre_shrink_total() const {
    Index t = kept_full;
    for (const auto& [s, ms] : budgets_pre_shrink) t += ms;
    return t;
  }

  Index allowance() const {
    Index t = kept_full;
    for (const auto& [s, ms] : budgets) t += ms;
    return t;
  }
};

namespace detail {

inline int floor_log2(Index m) {
  int l = 0;
  while ((Index(1) << (l + 1)) <= m) ++l;
  return l;
}

inline int cutoff_from(double gamma, int l) {
  return static_cast<int>(std::floor(gamma * l + 1e-9));
}

inline Index full_levels_count(int l, int d) {
  // All of mu(0)..mu(l-1), i.e. the cube of halfwidth 2^{l-1} - 1.
  return ipow((Index(1) << l) - 1, d);
}

// Rescales the tail budgets by a common factor and re-floors so that the
// total kept harmonics cannot exceed m.
inline void apply_shrink(BudgetPlan& plan) {
  Index pre_sum = 0;
  for (const auto& [s, ms] : plan.budgets_pre_shrink) pre_sum += ms;
  plan.budgets = plan.budgets_pre_shrink;
  const Index room = plan.m - plan.kept_full - 1;
  if (pre_sum <= room || pre_sum == 0) {
    plan.shrink_factor = 1.0;
    return;
  }
  const double rho = room <= 0 ? 0.0 : static_cast<double>(room) / static_cast<double>(pre_sum);
  plan.shrink_factor = rho;
  for (auto& [s, ms] : plan.budgets) {
    ms = static_cast<Index>(std::floor(rho * static_cast<double>(ms)));
  }
}

[[noreturn]] inline void regime_error(const std::string& what, const std::string& requirement) {
  throw std::invalid_argument(what + ": regime violation, " + requirement);
}

inline void check_pq_window(const char* what, double p, double q) {
  if (!(p > 1.0 && p <= 2.0)) regime_error(what, "requires 1 < p <= 2");
  if (!(q > 2.0 && q < kInf)) regime_error(what, "requires 2 < q < inf");
}

inline void check_not_critical(const char* what, double r, int d, double p) {
  if (std::abs(r - static_cast<double>(d) / p) <= 1e-12) {
    regime_error(what, "r = d/p is the open critical-smoothness case and is excluded");
  }
}

}  // namespace detail

/// Small-smoothness budget: base level l with 2^{dl} <= m < 2^{d(l+1)},
/// cutoff factor gamma = q/2, and per-level budgets
/// m_s = floor(2^{dl} 2^{s(d/p - r)} 2^{-(ql/2)(d/p - r)}) + 1.
inline BudgetPlan budget_plan_case_a(Index m, int d, double p, double q, double r) {
  const char* what = "budget_plan_case_a";
  if (d < 1) detail::regime_error(what, "requires d >= 1");
  detail::check_pq_window(what, p, q);
  detail::check_not_critical(what, r, d, p);
  const double dd = static_cast<double>(d);
  if (!(r > dd * (1.0 / p - 1.0 / q))) detail::regime_error(what, "requires r > d(1/p - 1/q)");
  if (!(r < dd / p)) detail::regime_error(what, "requires r < d/p");
  if (m < (Index(1) << d)) detail::regime_error(what, "requires m >= 2^d");

  BudgetPlan plan;
  plan.scheme = Scheme::kCaseA;
  plan.m = m;
  plan.base_level = detail::floor_log2(m) / d;
  plan.gamma = q / 2.0;
  plan.cutoff_level = detail::cutoff_from(plan.gamma, plan.base_level);
  plan.kept_full = detail::full_levels_count(plan.base_level, d);
  const int l = plan.base_level;
  const double decay = dd / p - r;  // > 0 in this regime
  for (int s = l; s <= plan.cutoff_level; ++s) {
    const double x = std::exp2(dd * l + (static_cast<double>(s) - q * l / 2.0) * decay);
    plan.budgets_pre_shrink[s] = static_cast<Index>(std::floor(x)) + 1;
  }
  detail::apply_shrink(plan);
  return plan;
}

/// High-smoothness budget: gamma = (r/d - 1/p + 1/2) / (r/d - 1/p + 1/q) and
/// m_s = floor(2^{dl(r/d - 1/p + 1)} 2^{-s(r - d/p)}) + 1.
inline BudgetPlan budget_plan_case_b(Index m, int d, double p, double q, double r) {
  const char* what = "budget_plan_case_b";
  if (d < 1) detail::regime_error(what, "requires d >= 1");
  detail::check_pq_window(what, p, q);
  detail::check_not_critical(what, r, d, p);
  const double dd = static_cast<double>(d);
  if (!(r > dd / p)) detail::regime_error(what, "requires r > d/p");
  if (m < (Index(1) << d)) detail::regime_error(what, "requires m >= 2^d");

  BudgetPlan plan;
  plan.scheme = Scheme::kCaseB;
  plan.m = m;
  plan.base_level = detail::floor_log2(m) / d;
  plan.gamma = (r / dd - 1.0 / p + 0.5) / (r / dd - 1.0 / p + 1.0 / q);
  plan.cutoff_level = detail::cutoff_from(plan.gamma, plan.base_level);
  plan.kept_full = detail::full_levels_count(plan.base_level, d);
  const int l = plan.base_level;
  for (int s = l; s <= plan.cutoff_level; ++s) {
    const double x =
        std::exp2(dd * l * (r / dd - 1.0 / p + 1.0) - static_cast<double>(s) * (r - dd / p));
    plan.budgets_pre_shrink[s] = static_cast<Index>(std::floor(x)) + 1;
  }
  detail::apply_shrink(plan);
  return plan;
}

/// Univariate sup-norm budget: full levels below l, then
/// m_s = floor(2^{l(r + 1/2)} 2^{-s(r - 1/2)}) + 1 up to the cutoff
/// gamma = r / (r - 1/2).
inline BudgetPlan budget_plan_univariate(Index m, double r) {
  const char* what = "budget_plan_univariate";
  if (!(r > 0.5)) detail::regime_error(what, "requires r > 1/2 (cutoff factor undefined otherwise)");
  if (m < 2) detail::regime_error(what, "requires m >= 2");

  BudgetPlan plan;
  plan.scheme = Scheme::kUnivariate;
  plan.m = m;
  plan.base_level = detail::floor_log2(m);
  plan.gamma = r / (r - 0.5);
  plan.cutoff_level = detail::cutoff_from(plan.gamma, plan.base_level);
  plan.kept_full = detail::full_levels_count(plan.base_level, 1);
  const int l = plan.base_level;
  for (int s = l; s <= plan.cutoff_level; ++s) {
    const double x = std::exp2(l * (r + 0.5) - static_cast<double>(s) * (r - 0.5));
    plan.budgets_pre_shrink[s] = static_cast<Index>(std::floor(x)) + 1;
  }
  detail::apply_shrink(plan);
  return plan;
}

/// Plan shell for the baselines; no levels, only the hard budget m.
inline BudgetPlan trivial_plan(Scheme scheme, Index m) {
  BudgetPlan plan;
  plan.scheme = scheme;
  plan.m = m;
  return plan;
}

// ---------------------------------------------------------------------------
// Greedy reduction and assembly
// ---------------------------------------------------------------------------

enum class SelectionMeasure { kL2, kWeighted };

/// Keeps the budget frequencies of the block with the largest selection
/// score; retained coefficients stay at their grid values and the kept
/// spectrum is a subset of the block support. Scores are |c_k| for kL2 and
/// |c_k| * weight(k) for kWeighted. Exact score ties break toward the
/// lexicographically smallest frequency vectors.
template <typename Real>
TrigPoly<Real> greedy_block_reduce(
    const CoeffGrid<Real>& block, Index budget,
    SelectionMeasure measure = SelectionMeasure::kL2,
    const std::type_identity_t<std::function<Real(const FreqIndex&)>>& weight = nullptr) {
  if (budget < 0) throw std::invalid_argument("greedy_block_reduce: budget must be >= 0");
  if (measure == SelectionMeasure::kWeighted && !weight) {
    throw std::invalid_argument("greedy_block_reduce: weighted selection needs a weight function");
  }

  struct Entry {
    Real score;
    FreqIndex freq;
    std::complex<Real> coeff;
  };
  std::vector<Entry> entries;
  detail::for_each_index(block.dim(), block.halfwidth(),
                         [&](const std::vector<int>& k, Index flat) {
                           const auto c = block.coeffs()[flat];
                           if (c == std::complex<Real>(0)) return;
                           FreqIndex f(k);
                           Real score = std::abs(c);
                           if (measure == SelectionMeasure::kWeighted) score *= weight(f);
                           entries.push_back(Entry{score, std::move(f), c});
                         });

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.freq < b.freq;
  });

  TrigPoly<Real> out(block.dim());
  const Index keep = std::min<Index>(budget, static_cast<Index>(entries.size()));
  for (Index i = 0; i < keep; ++i) out.set_term(entries[static_cast<std::size_t>(i)].freq,
                                                entries[static_cast<std::size_t>(i)].coeff);
  return out;
}

/// An m-term approximant together with the plan that produced it.
template <typename Real = double>
struct Approximant {
  TrigPoly<Real> poly;
  BudgetPlan plan;

  Scheme scheme() const { return plan.scheme; }
};

/// Assembles the plan: full sharp blocks below the base level, greedy
/// reductions of the sharp blocks on the budgeted levels, nothing beyond the
/// cutoff. The result never exceeds m terms.
template <typename Real>
Approximant<Real> assemble(const CoeffGrid<Real>& f, const BudgetPlan& plan) {
  TrigPoly<Real> poly(f.dim());
  const int top = sharp_top_level(f.halfwidth());
  for (int s = 0; s < plan.base_level && s <= top; ++s) {
    const CoeffGrid<Real> block = sharp_block(f, s);
    detail::for_each_index(block.dim(), block.halfwidth(),
                           [&](const std::vector<int>& k, Index flat) {
                             const auto c = block.coeffs()[flat];
                             if (c != std::complex<Real>(0)) poly.set_term(FreqIndex(k), c);
                           });
  }
  for (const auto& [s, ms] : plan.budgets) {
    if (s > top) break;
    if (ms == 0) continue;
    const TrigPoly<Real> reduced = greedy_block_reduce(sharp_block(f, s), ms);
    for (const auto& [k, c] : reduced.terms()) poly.set_term(k, c);
  }
  if (poly.term_count() > plan.m) {
    throw std::logic_error("assemble: plan allowance exceeded the hard budget");
  }
  return Approximant<Real>{std::move(poly), plan};
}

/// Achieved approximation error of a specific approximant in the target
/// space; an upper bound on the best m-term error of f.
template <typename Real>
Real approx_error(const CoeffGrid<Real>& f, const Approximant<Real>& a, const SpaceParams& sp) {
  if (f.dim() != a.poly.dim()) throw std::invalid_argument("approx_error: dimension mismatch");
  const CoeffGrid<Real> diff = f - to_grid(a.poly);
  return sp.mode == TargetMode::kBq1 ? bq1_norm(diff, sp.q, BlockMode::kVp)
                                     : lp_norm(diff, Real(sp.q));
}

/// Pure largest-coefficient baseline over the whole spectrum.
template <typename Real>
Approximant<Real> greedy_baseline(const CoeffGrid<Real>& f, Index m) {
  if (m < 0) throw std::invalid_argument("greedy_baseline: m must be >= 0");
  return Approximant<Real>{greedy_block_reduce(f, m), trivial_plan(Scheme::kGreedy, m)};
}

/// Cubic Fourier sum baseline: with n the largest level such that
/// 2^{dn} <= m, keeps the blocks s < n (the cube of halfwidth 2^{n-1} - 1).
template <typename Real>
Approximant<Real> orthogonal_cubic(const CoeffGrid<Real>& f, Index m) {
  if (m < 1) throw std::invalid_argument("orthogonal_cubic: m must be >= 1");
  const int n = detail::floor_log2(m) / f.dim();
  TrigPoly<Real> poly(f.dim());
  if (n >= 1) {
    const Index cube = std::min<Index>(f.halfwidth(), (Index(1) << (n - 1)) - 1);
    detail::for_each_index(f.dim(), cube, [&](const std::vector<int>& k, Index) {
      const auto c = f.coeffs()[f.flat_index(k)];
      if (c != std::complex<Real>(0)) poly.set_term(FreqIndex(k), c);
    });
  }
  return Approximant<Real>{std::move(poly), trivial_plan(Scheme::kOrthogonal, m)};
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

template <typename Real = double>
struct OracleResult {
  TrigPoly<Real> best;
  Real error = 0;
};

/// Exhaustive minimum of the target norm over all m-subsets of the support,
/// with coefficients kept at their grid values. Exact for the best
/// orthogonal m-term error; a lower bound certificate for the schemes.
/// Support size is capped at 16.
template <typename Real>
OracleResult<Real> oracle_best_mterm(const CoeffGrid<Real>& f, Index m, const SpaceParams& sp) {
  struct Term {
    FreqIndex freq;
    std::complex<Real> coeff;
    Index flat;
  };
  std::vector<Term> support;
  detail::for_each_index(f.dim(), f.halfwidth(), [&](const std::vector<int>& k, Index flat) {
    const auto c = f.coeffs()[flat];
    if (c != std::complex<Real>(0)) support.push_back(Term{FreqIndex(k), c, flat});
  });
  const Index n = static_cast<Index>(support.size());
  if (n > 16) throw std::invalid_argument("oracle_best_mterm: support too large (cap 16)");
  if (m < 0) throw std::invalid_argument("oracle_best_mterm: m must be >= 0");

  if (m >= n) {
    TrigPoly<Real> all(f.dim());
    for (const auto& t : support) all.set_term(t.freq, t.coeff);
    return OracleResult<Real>{std::move(all), Real(0)};
  }

  const auto residual_error = [&](const std::vector<int>& kept) {
    CoeffGrid<Real> residual = f;
    for (int i : kept) residual.coeffs()[support[static_cast<std::size_t>(i)].flat] = 0;
    return sp.mode == TargetMode::kBq1 ? bq1_norm(residual, sp.q, BlockMode::kVp)
                                       : lp_norm(residual, Real(sp.q));
  };

  // Enumerate m-combinations in lexicographic order; ties keep the first.
  std::vector<int> comb(static_cast<std::size_t>(m));
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> best_comb = comb;
  Real best = std::numeric_limits<Real>::infinity();
  while (true) {
    const Real err = residual_error(comb);
    if (err < best) {
      best = err;
      best_comb = comb;
    }
    // next combination
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] ==
                         static_cast<int>(n) - static_cast<int>(m) + i) {
      --i;
    }
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < static_cast<int>(m); ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  TrigPoly<Real> poly(f.dim());
  for (int i : best_comb) {
    poly.set_term(support[static_cast<std::size_t>(i)].freq,
                  support[static_cast<std::size_t>(i)].coeff);
  }
  return OracleResult<Real>{std::move(poly), best};
}

// ---------------------------------------------------------------------------
// Scheme dispatch
// ---------------------------------------------------------------------------

/// Everything a scheme needs to produce a plan for a given m.
struct PlanParams {
  Scheme scheme = Scheme::kUnivariate;
  int d = 1;
  double p = 2.0;
  double q = 4.0;
  double r = 1.0;
};

inline BudgetPlan make_plan(const PlanParams& pp, Index m) {
  switch (pp.scheme) {
    case Scheme::kCaseA: return budget_plan_case_a(m, pp.d, pp.p, pp.q, pp.r);
    case Scheme::kCaseB: return budget_plan_case_b(m, pp.d, pp.p, pp.q, pp.r);
    case Scheme::kUnivariate:
      if (pp.d != 1) detail::regime_error("budget_plan_univariate", "requires d = 1");
      return budget_plan_univariate(m, pp.r);
    case Scheme::kGreedy: return trivial_plan(Scheme::kGreedy, m);
    case Scheme::kOrthogonal: return trivial_plan(Scheme::kOrthogonal, m);
  }
  throw std::invalid_argument("make_plan: unknown scheme");
}

template <typename Real>
Approximant<Real> build_approximant(const CoeffGrid<Real>& f, const PlanParams& pp, Index m) {
  switch (pp.scheme) {
    case Scheme::kGreedy: return greedy_baseline(f, m);
    case Scheme::kOrthogonal: return orthogonal_cubic(f, m);
    default: return assemble(f, make_plan(pp, m));
  }
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_APPROX_HPP_
