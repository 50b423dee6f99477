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

// Closed-form convergence exponents per parameter regime, log-log slope
// fitting, and the experiment driver that compares fitted slopes against the
// predicted orders.

#ifndef SPARSETRIG_RATELAB_HPP_
#define SPARSETRIG_RATELAB_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sparsetrig/approx.hpp"
#include "sparsetrig/testfuncs.hpp"

namespace sparsetrig {

inline double positive_part(double a) { return a > 0 ? a : 0; }

/// Exponent of the small-smoothness branch: -(q/2)(r/d - 1/p + 1/q).
inline double case_a_exponent(int d, double p, double q, double r) {
  return -(q / 2.0) * (r / static_cast<double>(d) - 1.0 / p + 1.0 / q);
}

/// Exponent of the high-smoothness branch: -r/d + 1/p - 1/2.
inline double case_b_exponent(int d, double p, double r) {
  return -r / static_cast<double>(d) + 1.0 / p - 0.5;
}

enum class Quantity { kEm, kEmPerp };
enum class FuncClass { kBesov, kSobolev };
enum class Target { kBq1, kLq, kBinf1, kLinf };

inline const char* quantity_name(Quantity q) { return q == Quantity::kEm ? "em" : "em_perp"; }
inline const char* func_class_name(FuncClass c) {
  return c == FuncClass::kBesov ? "besov" : "sobolev";
}
inline const char* target_name(Target t) {
  switch (t) {
    case Target::kBq1: return "bq1";
    case Target::kLq: return "lq";
    case Target::kBinf1: return "binf1";
    case Target::kLinf: return "linf";
  }
  return "?";
}

struct ExponentQuery {
  Quantity quantity = Quantity::kEm;
  FuncClass cls = FuncClass::kBesov;
  Target target = Target::kBq1;
  int d = 1;
  double r = 1.0;
  double p = 2.0;
  double theta = kInf;
  double q = 2.0;
  double alpha = 0.0;
};

enum class CoverageStatus { kCovered, kOpenCase, kNotCovered };

struct ExponentResult {
  CoverageStatus status = CoverageStatus::kNotCovered;
  double exponent = 0.0;
  std::string clause;      // which regime produced the value
  std::string diagnostic;  // why a query is open or not covered
};

namespace detail {

inline ExponentResult covered(double exponent, std::string clause) {
  return ExponentResult{CoverageStatus::kCovered, exponent, std::move(clause), ""};
}

inline ExponentResult open_case(std::string diagnostic) {
  return ExponentResult{CoverageStatus::kOpenCase, 0.0, "", std::move(diagnostic)};
}

inline ExponentResult not_covered(std::string diagnostic) {
  return ExponentResult{CoverageStatus::kNotCovered, 0.0, "", std::move(diagnostic)};
}

inline bool at_critical_r(double r, int d, double p) {
  return std::abs(r - static_cast<double>(d) / p) <= 1e-12;
}

// Shared by the m-term rates into B_{q,1} and L_q for 1 < p <= 2 < q < inf.
inline ExponentResult two_branch_rate(const ExponentQuery& in, const char* label) {
  const double d = static_cast<double>(in.d);
  if (at_critical_r(in.r, in.d, in.p)) {
    return open_case("r = d/p is the open critical-smoothness case; no order is asserted");
  }
  if (in.r > d / in.p) {
    return covered(case_b_exponent(in.d, in.p, in.r),
                   std::string(label) + ", high-smoothness branch (r > d/p)");
  }
  if (in.r > d * (1.0 / in.p - 1.0 / in.q)) {
    return covered(case_a_exponent(in.d, in.p, in.q, in.r),
                   std::string(label) + ", small-smoothness branch (d(1/p-1/q) < r < d/p)");
  }
  return not_covered("requires r > d(1/p - 1/q)");
}

inline ExponentResult em_besov_bq1(const ExponentQuery& in) {
  const double d = static_cast<double>(in.d);
  if (in.p > 1.0 && in.p <= 2.0 && in.q > 2.0 && in.q < kInf) {
    return two_branch_rate(in, "m-term rate into B_{q,1}");
  }
  if (in.p > 2.0 && in.q > in.p && in.q < kInf) {
    if (in.r > d / 2.0) {
      return covered(-in.r / d, "m-term rate into B_{q,1}, 2 < p < q regime");
    }
    return not_covered("requires r > d/2 in the 2 < p < q regime");
  }
  const bool cubic_regime = (in.p <= in.q && in.q <= 2.0) || (in.q <= in.p);
  if (cubic_regime) {
    const double gap = positive_part(1.0 / in.p - 1.0 / in.q);
    if (in.r > d * gap) {
      return covered(-in.r / d + gap, "m-term rate into B_{q,1}, cubic regime (p <= q <= 2 or q <= p)");
    }
    return not_covered("requires r > d(1/p - 1/q)_+ in the cubic regime");
  }
  return not_covered("no covered regime for these (p, q)");
}

inline ExponentResult em_besov_lq(const ExponentQuery& in) {
  const double d = static_cast<double>(in.d);
  if (in.p > 1.0 && in.p <= 2.0 && in.q > 2.0 && in.q < kInf) {
    return two_branch_rate(in, "m-term rate into L_q");
  }
  if (in.p > 2.0 && in.q > in.p && in.q < kInf) {
    if (in.r > d / 2.0) return covered(-in.r / d, "m-term rate into L_q, 2 < p < q regime");
    return not_covered("requires r > d/2 in the 2 < p < q regime");
  }
  return not_covered("no covered regime for these (p, q) in L_q");
}

inline ExponentResult em_besov_sup(const ExponentQuery& in, const char* label) {
  if (in.d != 1) return not_covered("sup-norm targets are covered for d = 1 only");
  if (in.r > std::max(1.0 / in.p, 0.5)) {
    return covered(-in.r + positive_part(1.0 / in.p - 0.5), label);
  }
  return not_covered("requires r > max(1/p, 1/2)");
}

inline ExponentResult em_perp_bq1(const ExponentQuery& in, double q) {
  const double d = static_cast<double>(in.d);
  if (in.p == 1.0 && q == 1.0) return not_covered("the pair (p, q) = (1, 1) is excluded");
  if (std::isinf(in.p) && std::isinf(q)) {
    return not_covered("the pair (p, q) = (inf, inf) is excluded");
  }
  const double gap = positive_part(1.0 / in.p - (std::isinf(q) ? 0.0 : 1.0 / q));
  if (in.r > d * gap) {
    return covered(-in.r / d + gap, "orthogonal m-term rate into B_{q,1}");
  }
  return not_covered("requires r > d(1/p - 1/q)_+");
}

inline ExponentResult em_sobolev(const ExponentQuery& in) {
  if (in.d != 1) return not_covered("smoothness-class convolution rates are covered for d = 1 only");
  if (in.target == Target::kBinf1) {
    if (in.r > std::max(1.0 / in.p, 0.5)) {
      return covered(-in.r + positive_part(1.0 / in.p - 0.5),
                     "m-term rate of the convolution class into B_{inf,1}");
    }
    return not_covered("requires r > max(1/p, 1/2)");
  }
  if (in.target == Target::kLinf) {
    if (in.r > 1.0 / in.p) {
      return covered(-std::min(in.r, in.r - 1.0 / in.p + 0.5),
                     "m-term rate of the convolution class into L_inf");
    }
    return not_covered("requires r > 1/p");
  }
  return not_covered("convolution-class rates are covered for sup-norm targets only");
}

}  // namespace detail

/// Piecewise exponent table. Returns the covered exponent, the open-case
/// marker at the critical smoothness r = d/p, or a not-covered diagnostic
/// naming the violated inequality. Strict inequalities throughout.
inline ExponentResult theoretical_exponent(const ExponentQuery& query) {
  if (query.d < 1) throw std::invalid_argument("theoretical_exponent: d must be >= 1");
  if (!(query.r > 0)) throw std::invalid_argument("theoretical_exponent: r must be > 0");
  if (!(query.p >= 1)) throw std::invalid_argument("theoretical_exponent: p must be in [1, inf]");
  if (!(query.q >= 1)) throw std::invalid_argument("theoretical_exponent: q must be in [1, inf]");
  if (!(query.theta >= 1)) {
    throw std::invalid_argument("theoretical_exponent: theta must be in [1, inf]");
  }

  // B_{q,1} with q = inf is the sup-block target.
  ExponentQuery in = query;
  if (in.target == Target::kBq1 && std::isinf(in.q)) in.target = Target::kBinf1;
  if (in.target == Target::kLq && std::isinf(in.q)) in.target = Target::kLinf;
  if (in.target == Target::kBinf1 || in.target == Target::kLinf) in.q = kInf;

  if (in.quantity == Quantity::kEmPerp) {
    if (in.cls != FuncClass::kBesov) {
      return detail::not_covered("orthogonal rates are covered for the decomposition classes only");
    }
    if (in.target == Target::kBq1 || in.target == Target::kBinf1) {
      return detail::em_perp_bq1(in, in.target == Target::kBinf1 ? kInf : in.q);
    }
    return detail::not_covered("orthogonal rates are covered for block-sum targets only");
  }

  if (in.cls == FuncClass::kSobolev) return detail::em_sobolev(in);

  switch (in.target) {
    case Target::kBq1: return detail::em_besov_bq1(in);
    case Target::kLq: return detail::em_besov_lq(in);
    case Target::kBinf1:
      return detail::em_besov_sup(in, "m-term rate into B_{inf,1}");
    case Target::kLinf:
      return detail::em_besov_sup(in, "m-term rate into L_inf");
  }
  return detail::not_covered("unknown target");
}

// ---------------------------------------------------------------------------
// Slope fitting
// ---------------------------------------------------------------------------

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Ordinary least squares of log(err) against log(m).
inline FitResult fit_slope(const std::vector<std::pair<double, double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw std::invalid_argument("fit_slope: needs at least 2 points");
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const auto& [m, err] = points[static_cast<std::size_t>(i)];
    if (!(m > 0) || !(err > 0)) {
      throw std::invalid_argument("fit_slope: points must have positive m and error");
    }
    a(i, 0) = 1.0;
    a(i, 1) = std::log(m);
    b(i) = std::log(err);
  }
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
  const double rms = std::sqrt((a * x - b).squaredNorm() / n);
  return FitResult{x(1), x(0), rms};
}

// ---------------------------------------------------------------------------
// Rate experiments
// ---------------------------------------------------------------------------

struct RatePoint {
  Index m = 0;
  double error = 0.0;
  bool used_in_fit = false;
};

enum class Verdict { kPass, kSteeperThanClass, kFail, kDegenerate };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kSteeperThanClass: return "steeper_than_class";
    case Verdict::kFail: return "fail";
    case Verdict::kDegenerate: return "degenerate";
  }
  return "?";
}

/// A single test function only upper-bounds the class error, so the verdict
/// has one-sided semantics: pass when the fitted slope is at least as steep
/// as predicted minus the tolerance. A much steeper slope is flagged as
/// informational, not as a failure.
inline bool verdict_passes(Verdict v) {
  return v == Verdict::kPass || v == Verdict::kSteeperThanClass;
}

struct RateOptions {
  double tolerance = 0.3;
  bool drop_smallest_octave = true;  // preasymptotic-bias guard
  double steep_margin = 1.0;
};

struct RateReport {
  GenSpec gen;
  Scheme scheme = Scheme::kUnivariate;
  SpaceParams space;
  std::vector<std::uint64_t> seeds;  // singleton for per-seed runs
  ExponentQuery query;
  ExponentResult theory;
  std::vector<RatePoint> points;
  bool fitted = false;
  FitResult fit;
  Verdict verdict = Verdict::kDegenerate;
  std::vector<std::string> warnings;
};

/// Derives the exponent query an experiment is checking.
inline ExponentQuery experiment_query(const GenSpec& gen, Scheme scheme, const SpaceParams& sp) {
  ExponentQuery q;
  q.quantity = scheme == Scheme::kOrthogonal ? Quantity::kEmPerp : Quantity::kEm;
  q.cls = gen.kind == GenKind::kSobolev ? FuncClass::kSobolev : FuncClass::kBesov;
  if (sp.mode == TargetMode::kBq1) {
    q.target = std::isinf(sp.q) ? Target::kBinf1 : Target::kBq1;
  } else {
    q.target = std::isinf(sp.q) ? Target::kLinf : Target::kLq;
  }
  q.d = gen.cp.d;
  q.r = gen.cp.r;
  q.p = gen.cp.p;
  q.theta = gen.cp.theta;
  q.q = sp.q;
  q.alpha = gen.alpha;
  return q;
}

inline PlanParams experiment_plan_params(const GenSpec& gen, Scheme scheme,
                                         const SpaceParams& sp) {
  PlanParams pp;
  pp.scheme = scheme;
  pp.d = gen.cp.d;
  pp.p = gen.cp.p;
  pp.q = sp.q;
  pp.r = gen.cp.r;
  return pp;
}

namespace detail {

inline void check_m_grid(const std::vector<Index>& m_grid) {
  if (m_grid.size() < 4) throw std::invalid_argument("rate experiment: need >= 4 grid points");
  for (std::size_t i = 1; i < m_grid.size(); ++i) {
    if (m_grid[i] <= m_grid[i - 1]) {
      throw std::invalid_argument("rate experiment: m grid must be strictly increasing");
    }
  }
}

template <typename Real>
std::vector<double> experiment_errors(const CoeffGrid<Real>& f, const PlanParams& pp,
                                      const SpaceParams& sp, const std::vector<Index>& m_grid) {
  std::vector<double> errors;
  errors.reserve(m_grid.size());
  for (Index m : m_grid) {
    const Approximant<Real> a = build_approximant(f, pp, m);
    errors.push_back(static_cast<double>(approx_error(f, a, sp)));
  }
  return errors;
}

inline void finish_report(RateReport& report, const std::vector<Index>& m_grid,
                          const std::vector<double>& errors, const RateOptions& opts) {
  const double octave_cut = 2.0 * static_cast<double>(m_grid.front());
  std::vector<std::pair<double, double>> fit_points;
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    RatePoint pt;
    pt.m = m_grid[i];
    pt.error = errors[i];
    pt.used_in_fit = errors[i] > 0 &&
                     (!opts.drop_smallest_octave || static_cast<double>(pt.m) >= octave_cut);
    if (errors[i] <= 0) {
      report.warnings.push_back("m = " + std::to_string(pt.m) +
                                ": function captured exactly; point excluded from the fit");
    }
    if (pt.used_in_fit) fit_points.emplace_back(static_cast<double>(pt.m), pt.error);
    report.points.push_back(pt);
  }
  if (fit_points.size() < 2) {
    report.fitted = false;
    report.verdict = Verdict::kDegenerate;
    report.warnings.push_back("fewer than 2 usable points; no fit");
    return;
  }
  report.fitted = true;
  report.fit = fit_slope(fit_points);
  const double theo = report.theory.exponent;
  if (report.fit.slope <= theo + opts.tolerance) {
    report.verdict = report.fit.slope <= theo - opts.steep_margin
                         ? Verdict::kSteeperThanClass
                         : Verdict::kPass;
  } else {
    report.verdict = Verdict::kFail;
  }
}

}  // namespace detail

/// Runs one scheme over a geometric m grid for a single generated function
/// and fits the log-log slope. Throws when the (scheme, class, target)
/// combination is outside every covered regime.
template <typename Real = double>
RateReport run_rate_experiment(const GenSpec& gen, Scheme scheme, const SpaceParams& sp,
                               const std::vector<Index>& m_grid,
                               const RateOptions& opts = RateOptions{}) {
  detail::check_m_grid(m_grid);
  RateReport report;
  report.gen = gen;
  report.scheme = scheme;
  report.space = sp;
  report.seeds = {gen.seed};
  report.query = experiment_query(gen, scheme, sp);
  report.theory = theoretical_exponent(report.query);
  if (report.theory.status != CoverageStatus::kCovered) {
    throw std::invalid_argument("run_rate_experiment: query not covered: " +
                                report.theory.diagnostic);
  }
  const CoeffGrid<Real> f = generate<Real>(gen);
  const PlanParams pp = experiment_plan_params(gen, scheme, sp);
  const std::vector<double> errors = detail::experiment_errors(f, pp, sp, m_grid);
  detail::finish_report(report, m_grid, errors, opts);
  return report;
}

/// Median-over-seeds variant; also returns the per-seed error table so
/// callers can persist the raw points.
template <typename Real = double>
RateReport run_rate_experiment_median(const GenSpec& gen, Scheme scheme, const SpaceParams& sp,
                                      const std::vector<Index>& m_grid,
                                      const std::vector<std::uint64_t>& seeds,
                                      const RateOptions& opts = RateOptions{},
                                      std::vector<std::vector<double>>* per_seed_errors = nullptr) {
  detail::check_m_grid(m_grid);
  if (seeds.empty()) throw std::invalid_argument("run_rate_experiment_median: no seeds");
  RateReport report;
  report.gen = gen;
  report.scheme = scheme;
  report.space = sp;
  report.seeds = seeds;
  report.query = experiment_query(gen, scheme, sp);
  report.theory = theoretical_exponent(report.query);
  if (report.theory.status != CoverageStatus::kCovered) {
    throw std::invalid_argument("run_rate_experiment_median: query not covered: " +
                                report.theory.diagnostic);
  }
  const PlanParams pp = experiment_plan_params(gen, scheme, sp);

  std::vector<std::vector<double>> table;  // [seed][m]
  table.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    GenSpec spec = gen;
    spec.seed = seed;
    const CoeffGrid<Real> f = generate<Real>(spec);
    table.push_back(detail::experiment_errors(f, pp, sp, m_grid));
  }
  if (per_seed_errors) *per_seed_errors = table;

  std::vector<double> medians(m_grid.size());
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    std::vector<double> column;
    column.reserve(seeds.size());
    for (const auto& row : table) column.push_back(row[i]);
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    medians[i] = (n % 2 == 1) ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
  }
  detail::finish_report(report, m_grid, medians, opts);
  return report;
}

// ---------------------------------------------------------------------------
// Scheme comparison
// ---------------------------------------------------------------------------

struct SchemeComparison {
  Index m = 0;
  double scheme_error = 0.0;
  double greedy_error = 0.0;
  double orthogonal_error = 0.0;
  double ratio_vs_orthogonal = 0.0;  // scheme_error / orthogonal_error
};

/// Errors of the budgeted scheme, the pure greedy baseline, and the cubic
/// projection side by side for each m.
template <typename Real>
std::vector<SchemeComparison> compare_schemes(const CoeffGrid<Real>& f, const PlanParams& pp,
                                              const SpaceParams& sp,
                                              const std::vector<Index>& m_grid) {
  std::vector<SchemeComparison> rows;
  rows.reserve(m_grid.size());
  for (Index m : m_grid) {
    SchemeComparison row;
    row.m = m;
    row.scheme_error = static_cast<double>(approx_error(f, build_approximant(f, pp, m), sp));
    row.greedy_error = static_cast<double>(approx_error(f, greedy_baseline(f, m), sp));
    row.orthogonal_error = static_cast<double>(approx_error(f, orthogonal_cubic(f, m), sp));
    if (row.orthogonal_error > 0) {
      row.ratio_vs_orthogonal = row.scheme_error / row.orthogonal_error;
    } else {
      row.ratio_vs_orthogonal = row.scheme_error > 0 ? kInf : 1.0;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_RATELAB_HPP_
