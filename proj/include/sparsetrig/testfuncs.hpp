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

// Seeded generators of experiment inputs: random unit-ball class
// representatives, single-ring extremals, and smooth functions obtained by
// convolving a density against the truncated Bernoulli kernel.
//
// Determinism contract: all randomness flows through std::mt19937_64 seeded
// by splitmix64(seed ^ fnv1a64(role)); raw engine words are mapped to
// uniforms by hand. Standard-library distributions are never used, so a
// fixed (seed, role) pair yields byte-identical output on every platform.

#ifndef SPARSETRIG_TESTFUNCS_HPP_
#define SPARSETRIG_TESTFUNCS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "sparsetrig/norms.hpp"

namespace sparsetrig {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Sub-stream derivation: adding experiments never perturbs existing ones
/// because each (seed, role) pair hashes to an independent engine seed.
inline std::uint64_t role_seed(std::uint64_t seed, std::string_view role) {
  return splitmix64(seed ^ fnv1a64(role));
}

inline std::mt19937_64 substream(std::uint64_t seed, std::string_view role) {
  return std::mt19937_64(role_seed(seed, role));
}

/// Uniform in [0, 1) from the top 53 engine bits.
inline double uniform_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline int coin_sign(std::mt19937_64& g) { return (g() & 1ULL) ? 1 : -1; }

enum class GenKind { kRandomBesov, kSingleBlock, kSobolev };
enum class PhiKind { kRandomSigns, kConstant };

inline const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::kRandomBesov: return "random_besov";
    case GenKind::kSingleBlock: return "single_block";
    case GenKind::kSobolev: return "sobolev";
  }
  return "?";
}

inline const char* phi_kind_name(PhiKind k) {
  return k == PhiKind::kRandomSigns ? "random_signs" : "constant";
}

struct GenSpec {
  GenKind kind = GenKind::kRandomBesov;
  ClassParams cp{1, 1.0, 2.0, kInf};
  int s_max = 6;          // top dyadic level of the generated spectrum
  std::uint64_t seed = 1;
  int block_level = 3;    // single-block only
  double alpha = 0.0;     // sobolev only
  PhiKind phi_kind = PhiKind::kRandomSigns;
  Index phi_degree = 0;   // sobolev truncation K; 0 = automatic tail rule
};

namespace detail {

inline BlockMode normalize_mode(double p) {
  return (p > 1.0 && p < kInf) ? BlockMode::kSharp : BlockMode::kVp;
}

}  // namespace detail

/// Random class representative with unit-modulus random-phase coefficients
/// on every ring s <= s_max, rescaled so that ||f_(s)||_p = 2^{-s r} w_s.
/// The weights w_s make the decomposition norm equal one: w_s = 1 for
/// theta = inf and w_s = (s_max + 1)^{-1/theta} otherwise; a final
/// normalization lands exactly on the unit sphere.
template <typename Real = double>
CoeffGrid<Real> random_besov(const GenSpec& spec) {
  const ClassParams& cp = spec.cp;
  if (spec.s_max < 1) throw std::invalid_argument("random_besov: s_max must be >= 1");
  const Index halfwidth = (Index(1) << spec.s_max) - 1;
  CoeffGrid<Real> f(cp.d, halfwidth);

  const Real w = std::isinf(cp.theta)
                     ? Real(1)
                     : std::pow(Real(spec.s_max + 1), Real(-1) / Real(cp.theta));
  for (int s = 0; s <= spec.s_max; ++s) {
    auto rng = substream(spec.seed, "random_besov/level/" + std::to_string(s));
    const Index ring_lo = s == 0 ? 0 : (Index(1) << (s - 1));
    const Index ring_hi = s == 0 ? 0 : (Index(1) << s) - 1;
    CoeffGrid<Real> block(cp.d, ring_hi);
    detail::for_each_index(cp.d, ring_hi, [&](const std::vector<int>& k, Index flat) {
      Index max_abs = 0;
      for (int kj : k) max_abs = std::max<Index>(max_abs, std::abs(kj));
      if (max_abs < ring_lo) return;
      const Real phase = Real(2) * std::numbers::pi_v<Real> * Real(uniform_unit(rng));
      block.coeffs()[flat] = std::polar(Real(1), phase);
    });
    const Real target = std::exp2(-Real(s) * Real(cp.r)) * w;
    const Real current = lp_norm(block, Real(cp.p));
    const Real scale = target / current;
    detail::for_each_index(cp.d, ring_hi, [&](const std::vector<int>& k, Index flat) {
      const auto c = block.coeffs()[flat];
      if (c != std::complex<Real>(0)) f.coeffs()[f.flat_index(k)] = c * scale;
    });
  }
  return class_normalize(f, cp, detail::normalize_mode(cp.p));
}

/// Worst-case probe concentrated on one dyadic ring: all-ones coefficients
/// on mu(s), normalized to unit class norm.
template <typename Real = double>
CoeffGrid<Real> single_block_extremal(int s, const ClassParams& cp) {
  if (s < 1) throw std::invalid_argument("single_block_extremal: level must be >= 1");
  const Index ring_lo = Index(1) << (s - 1);
  const Index ring_hi = (Index(1) << s) - 1;
  CoeffGrid<Real> f(cp.d, ring_hi);
  detail::for_each_index(cp.d, ring_hi, [&](const std::vector<int>& k, Index flat) {
    Index max_abs = 0;
    for (int kj : k) max_abs = std::max<Index>(max_abs, std::abs(kj));
    if (max_abs >= ring_lo) f.coeffs()[flat] = std::complex<Real>(1);
  });
  return class_normalize(f, cp, detail::normalize_mode(cp.p));
}

/// The source density phi of the smoothness-class convolution: coefficients
/// on |k| <= K, either all ones or random +-1 signs mirrored so phi is real,
/// normalized to ||phi||_p = 1.
template <typename Real = double>
CoeffGrid<Real> sobolev_phi(double p, PhiKind kind, Index degree, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("sobolev_phi: degree must be >= 1");
  CoeffGrid<Real> phi(1, degree);
  auto rng = substream(seed, "sobolev/phi");
  for (Index k = 0; k <= degree; ++k) {
    const Real v = kind == PhiKind::kConstant ? Real(1) : Real(coin_sign(rng));
    phi.set_coeff(FreqIndex{static_cast<int>(k)}, std::complex<Real>(v));
    phi.set_coeff(FreqIndex{static_cast<int>(-k)}, std::complex<Real>(v));
  }
  phi.tag_real(true);
  const Real n = lp_norm(phi, Real(p));
  CoeffGrid<Real> out = phi * (Real(1) / n);
  out.tag_real(true);
  return out;
}

/// Convolution representative of the smoothness class: f_hat(k) =
/// phi_hat(k) * F_hat(k) with the truncated Bernoulli kernel, zero mean.
template <typename Real = double>
CoeffGrid<Real> sobolev_function(double r, double p, double alpha, PhiKind phi_kind,
                                 Index truncation, std::uint64_t seed) {
  if (truncation <= 0) truncation = bernoulli_truncation(r);
  const CoeffGrid<Real> phi = sobolev_phi<Real>(p, phi_kind, truncation, seed);
  const TrigPoly<Real> kernel = bernoulli_kernel<Real>(Real(r), Real(alpha), truncation);
  CoeffGrid<Real> f = convolve(phi, kernel);
  f.tag_real(phi.real_tagged());
  return f;
}

template <typename Real = double>
CoeffGrid<Real> generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::kRandomBesov: return random_besov<Real>(spec);
    case GenKind::kSingleBlock: return single_block_extremal<Real>(spec.block_level, spec.cp);
    case GenKind::kSobolev:
      return sobolev_function<Real>(spec.cp.r, spec.cp.p, spec.alpha, spec.phi_kind,
                                    spec.phi_degree, spec.seed);
  }
  throw std::invalid_argument("generate: unknown generator kind");
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_TESTFUNCS_HPP_
