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

// Computable decomposition norms: the smoothness-class norm with weights
// 2^{s r} over dyadic block L_p norms, and the target-space norm that sums
// block L_q norms. Both accept either block family; the sharp family is
// restricted to 1 < p < inf.

#ifndef SPARSETRIG_NORMS_HPP_
#define SPARSETRIG_NORMS_HPP_

#include <cmath>
#include <stdexcept>

#include "sparsetrig/decomposition.hpp"

namespace sparsetrig {

/// Source-class parameters (d, r, p, theta). Regime admissibility is
/// checked where the regimes matter (plan builders, exponent table).
struct ClassParams {
  int d = 1;
  double r = 1.0;
  double p = 2.0;
  double theta = kInf;

  ClassParams() = default;
  ClassParams(int d_, double r_, double p_, double theta_)
      : d(d_), r(r_), p(p_), theta(theta_) {
    if (d < 1) throw std::invalid_argument("ClassParams: d must be >= 1");
    if (!(r > 0)) throw std::invalid_argument("ClassParams: r must be > 0");
    if (!(p >= 1)) throw std::invalid_argument("ClassParams: p must be in [1, inf]");
    if (!(theta >= 1)) throw std::invalid_argument("ClassParams: theta must be in [1, inf]");
  }
};

enum class TargetMode { kBq1, kLq };

struct SpaceParams {
  double q = 2.0;
  TargetMode mode = TargetMode::kBq1;

  SpaceParams() = default;
  SpaceParams(double q_, TargetMode mode_) : q(q_), mode(mode_) {
    if (!(q >= 1)) throw std::invalid_argument("SpaceParams: q must be in [1, inf]");
  }
};

namespace detail {

inline void check_sharp_mode(BlockMode mode, double p, const char* what) {
  if (mode == BlockMode::kSharp && !(p > 1.0 && p < kInf)) {
    throw std::invalid_argument(std::string(what) +
                                ": the sharp block family requires 1 < p < inf");
  }
}

template <typename Real>
bool block_nonzero(const CoeffGrid<Real>& block) {
  return !block.coeffs().matrix().isZero(Real(0));
}

}  // namespace detail

/// Decomposition norm of the class: for theta < inf,
/// (sum_s 2^{s r theta} ||block_s||_p^theta)^{1/theta}; for theta = inf,
/// max_s 2^{s r} ||block_s||_p. Sums run over the nonempty blocks of the
/// polynomial; there is no tail model.
template <typename Real>
Real besov_norm(const CoeffGrid<Real>& f, const ClassParams& cp,
                BlockMode mode = BlockMode::kVp) {
  detail::check_sharp_mode(mode, cp.p, "besov_norm");
  const int top = mode == BlockMode::kVp ? vp_top_level(f.halfwidth())
                                         : sharp_top_level(f.halfwidth());
  const bool sup_form = std::isinf(cp.theta);
  Real acc = 0;
  for (int s = 0; s <= top; ++s) {
    const CoeffGrid<Real> block = block_at(f, s, mode);
    if (!detail::block_nonzero(block)) continue;
    const Real weighted = std::exp2(Real(s) * Real(cp.r)) * lp_norm(block, Real(cp.p));
    if (sup_form) {
      acc = std::max(acc, weighted);
    } else {
      acc += std::pow(weighted, Real(cp.theta));
    }
  }
  return sup_form ? acc : std::pow(acc, Real(1) / Real(cp.theta));
}

/// Target-space norm: the sum over levels of the block L_q norms. Stronger
/// than the plain L_q norm of the same polynomial.
template <typename Real>
Real bq1_norm(const CoeffGrid<Real>& f, double q, BlockMode mode = BlockMode::kVp) {
  if (!(q >= 1)) throw std::invalid_argument("bq1_norm: q must be in [1, inf]");
  detail::check_sharp_mode(mode, q, "bq1_norm");
  const int top = mode == BlockMode::kVp ? vp_top_level(f.halfwidth())
                                         : sharp_top_level(f.halfwidth());
  Real acc = 0;
  for (int s = 0; s <= top; ++s) {
    const CoeffGrid<Real> block = block_at(f, s, mode);
    if (!detail::block_nonzero(block)) continue;
    acc += lp_norm(block, Real(q));
  }
  return acc;
}

template <typename Real>
Real bq1_norm(const CoeffGrid<Real>& f, const SpaceParams& sp,
              BlockMode mode = BlockMode::kVp) {
  return bq1_norm(f, sp.q, mode);
}

/// Scales f onto the unit sphere of the class norm.
template <typename Real>
CoeffGrid<Real> class_normalize(const CoeffGrid<Real>& f, const ClassParams& cp,
                                BlockMode mode = BlockMode::kVp) {
  const Real n = besov_norm(f, cp, mode);
  if (!(n > Real(0))) {
    throw std::invalid_argument("class_normalize: input has zero class norm");
  }
  return f * (Real(1) / n);
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_NORMS_HPP_
