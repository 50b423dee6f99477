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

// Dyadic block decompositions of coefficient grids (smoothed blocks from
// differences of de la Vallee-Poussin means, and sharp blocks from
// restriction to dyadic frequency rings) plus quadrature-based L_p norms.

#ifndef SPARSETRIG_DECOMPOSITION_HPP_
#define SPARSETRIG_DECOMPOSITION_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sparsetrig/spectrum.hpp"

namespace sparsetrig {

enum class BlockMode { kVp, kSharp };

inline const char* block_mode_name(BlockMode mode) {
  return mode == BlockMode::kVp ? "vp" : "sharp";
}

/// Number of frequencies in the dyadic ring
/// mu(s) = {k : 2^{s-1} <= max_j |k_j| < 2^s}; mu(0) is the constant term.
inline Index mu_size(int s, int d) {
  if (s < 0) throw std::invalid_argument("mu_size: level must be >= 0");
  if (d < 1) throw std::invalid_argument("mu_size: dimension must be >= 1");
  if (s == 0) return 1;
  const Index outer = (Index(1) << (s + 1)) - 1;
  const Index inner = (Index(1) << s) - 1;
  return detail::ipow(outer, d) - detail::ipow(inner, d);
}

/// Ring membership of a frequency vector: the unique s with k in mu(s).
inline int mu_level(Index max_abs) {
  int s = 0;
  while ((Index(1) << s) <= max_abs) ++s;
  return s;
}

/// Smallest S with 2^S >= halfwidth: the smoothed blocks 0..S telescope to
/// the identity on the box.
inline int vp_top_level(Index halfwidth) {
  int s = 0;
  while ((Index(1) << s) < halfwidth) ++s;
  return s;
}

/// Smallest S with 2^S > halfwidth: sharp blocks 0..S partition the box.
inline int sharp_top_level(Index halfwidth) {
  int s = 0;
  while ((Index(1) << s) <= halfwidth) ++s;
  return s;
}

/// Smoothed dyadic block: the difference of de la Vallee-Poussin means
/// V_{2^s}(f) - V_{2^{s-1}}(f) for s >= 1, and V_1(f) for s = 0. Computed
/// coefficient-wise through the tensor kernel profile; identical to composing
/// convolve() with the explicit kernels.
template <typename Real>
CoeffGrid<Real> vp_block(const CoeffGrid<Real>& f, int s) {
  if (s < 0) throw std::invalid_argument("vp_block: level must be >= 0");
  const Index l_hi = Index(1) << s;
  const Index reach = 2 * l_hi - 1;
  const Index nh = std::min(f.halfwidth(), reach);
  CoeffGrid<Real> out(f.dim(), nh);
  detail::for_each_index(f.dim(), nh, [&](const std::vector<int>& k, Index flat) {
    Real hi = Real(1);
    Real lo = s >= 1 ? Real(1) : Real(0);
    for (int kj : k) {
      hi *= vp_coefficient<Real>(l_hi, kj);
      if (s >= 1) lo *= vp_coefficient<Real>(l_hi / 2, kj);
    }
    const Real w = hi - lo;
    if (w != Real(0)) out.coeffs()[flat] = f.coeffs()[f.flat_index(k)] * w;
  });
  out.tag_real(f.real_tagged());
  return out;
}

/// Sharp dyadic block: restriction of the coefficients to the ring mu(s);
/// s = 0 keeps the constant coefficient only.
template <typename Real>
CoeffGrid<Real> sharp_block(const CoeffGrid<Real>& f, int s) {
  if (s < 0) throw std::invalid_argument("sharp_block: level must be >= 0");
  if (s == 0) {
    CoeffGrid<Real> out(f.dim(), 0);
    out.coeffs()[0] = f.coeffs()[f.flat_index(std::vector<int>(static_cast<std::size_t>(f.dim()), 0))];
    out.tag_real(f.real_tagged());
    return out;
  }
  const Index lo = Index(1) << (s - 1);
  const Index hi = (Index(1) << s) - 1;
  const Index nh = std::min(f.halfwidth(), hi);
  CoeffGrid<Real> out(f.dim(), nh);
  if (nh >= lo) {
    detail::for_each_index(f.dim(), nh, [&](const std::vector<int>& k, Index flat) {
      Index max_abs = 0;
      for (int kj : k) max_abs = std::max<Index>(max_abs, std::abs(kj));
      if (max_abs >= lo) out.coeffs()[flat] = f.coeffs()[f.flat_index(k)];
    });
  }
  out.tag_real(f.real_tagged());
  return out;
}

/// The full block family of a polynomial, levels 0..S with S chosen so the
/// blocks reconstruct the input exactly.
template <typename Real>
struct DyadicBlocks {
  BlockMode mode;
  std::vector<CoeffGrid<Real>> blocks;  // blocks[s]
};

template <typename Real>
CoeffGrid<Real> block_at(const CoeffGrid<Real>& f, int s, BlockMode mode) {
  return mode == BlockMode::kVp ? vp_block(f, s) : sharp_block(f, s);
}

template <typename Real>
DyadicBlocks<Real> decompose(const CoeffGrid<Real>& f, BlockMode mode) {
  const int top = mode == BlockMode::kVp ? vp_top_level(f.halfwidth())
                                         : sharp_top_level(f.halfwidth());
  DyadicBlocks<Real> out{mode, {}};
  out.blocks.reserve(static_cast<std::size_t>(top) + 1);
  for (int s = 0; s <= top; ++s) out.blocks.push_back(block_at(f, s, mode));
  return out;
}

template <typename Real>
CoeffGrid<Real> reconstruct(const DyadicBlocks<Real>& blocks) {
  if (blocks.blocks.empty()) throw std::invalid_argument("reconstruct: no blocks");
  CoeffGrid<Real> out = blocks.blocks.front();
  for (std::size_t i = 1; i < blocks.blocks.size(); ++i) out = out + blocks.blocks[i];
  return out;
}

// ---------------------------------------------------------------------------
// L_p norms (normalized measure, equal-weight quadrature on the oversampled
// uniform grid; p = inf is the grid maximum)
// ---------------------------------------------------------------------------

template <typename Real>
Real lp_norm(const SampleGrid<Real>& g, Real p) {
  if (!(p >= Real(1))) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  const auto abs_vals = g.values().abs().eval();
  if (std::isinf(p)) return abs_vals.maxCoeff();
  if (p == Real(1)) return abs_vals.mean();
  if (p == Real(2)) return std::sqrt(abs_vals.square().mean());
  return std::pow(abs_vals.pow(p).mean(), Real(1) / p);
}

template <typename Real>
Real lp_norm(const CoeffGrid<Real>& f, Real p) {
  return lp_norm(synthesize(f, default_sample_count(f.halfwidth())), p);
}

template <typename Real>
Real lp_norm(const TrigPoly<Real>& f, Real p) {
  return lp_norm(to_grid(f), p);
}

/// Ratio of ||f||_q to the different-metrics bound
/// 2^d prod_j n_j^{1/p - 1/q} ||f||_p with per-axis degrees n_j >= 1.
/// At most 1 for every trigonometric polynomial; 0 for the zero polynomial.
template <typename Real>
Real nikolskii_gap(const TrigPoly<Real>& f, Real p, Real q) {
  if (!(p >= Real(1)) || !(q <= kInf) || !(p < q)) {
    throw std::invalid_argument("nikolskii_gap: needs 1 <= p < q <= inf");
  }
  if (f.term_count() == 0) return Real(0);
  const Real np = lp_norm(f, p);
  const Real nq = lp_norm(f, q);
  Real bound = std::pow(Real(2), Real(f.dim()));
  const Real expo = Real(1) / p - (std::isinf(q) ? Real(0) : Real(1) / q);
  for (Index deg : f.axis_degrees()) {
    bound *= std::pow(Real(std::max<Index>(deg, 1)), expo);
  }
  return nq / (bound * np);
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_DECOMPOSITION_HPP_
