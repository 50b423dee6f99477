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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparsetrig/decomposition.hpp"
#include "test_support.hpp"

using namespace sparsetrig;
using Complexd = std::complex<double>;

namespace {

// Enumeration oracle for the ring sizes: count box points by membership.
Index mu_size_by_enumeration(int s, int d) {
  const Index lo = s == 0 ? 0 : (Index(1) << (s - 1));
  const Index hi = (Index(1) << s) - 1;
  Index count = 0;
  detail::for_each_index(d, hi, [&](const std::vector<int>& k, Index) {
    Index max_abs = 0;
    for (int kj : k) max_abs = std::max<Index>(max_abs, std::abs(kj));
    if (max_abs >= lo && (s == 0 ? max_abs == 0 : true)) ++count;
  });
  return count;
}

// Literal two-convolution route for the smoothed block.
CoeffGrid<double> vp_block_by_convolution(const CoeffGrid<double>& f, int s) {
  const Index l = Index(1) << s;
  const auto hi = convolve(f, tensor_kernel(vallee_poussin_kernel(l), f.dim()));
  if (s == 0) return hi;
  const auto lo = convolve(f, tensor_kernel(vallee_poussin_kernel(l / 2), f.dim()));
  return hi - lo;
}

}  // namespace

TEST_CASE("mu_size") {
  CHECK(mu_size(0, 1) == 1);
  CHECK(mu_size(0, 3) == 1);
  // frozen small values, confirmed by enumeration below
  CHECK(mu_size(1, 1) == 2);
  CHECK(mu_size(1, 2) == 8);
  CHECK(mu_size(3, 1) == 8);
  for (int d : {1, 2, 3}) {
    for (int s = 0; s <= 5; ++s) {
      CHECK(mu_size(s, d) == mu_size_by_enumeration(s, d));
    }
  }
  SUBCASE("rings partition the cube") {
    for (int d : {1, 2}) {
      for (int top = 1; top <= 5; ++top) {
        Index total = 0;
        for (int s = 0; s <= top; ++s) total += mu_size(s, d);
        const Index side = 2 * ((Index(1) << top) - 1) + 1;
        CHECK(total == detail::ipow(side, d));
      }
    }
  }
  CHECK_THROWS_AS(mu_size(-1, 1), std::invalid_argument);
  SUBCASE("mu_level inverts ring membership") {
    for (int s = 0; s <= 6; ++s) {
      const Index lo = s == 0 ? 0 : (Index(1) << (s - 1));
      const Index hi = (Index(1) << s) - 1;
      CHECK(mu_level(lo) == s);
      CHECK(mu_level(hi) == s);
    }
  }
}

TEST_CASE("vp_block") {
  SUBCASE("constant function") {
    CoeffGrid<double> f(1, 0);
    f.set_coeff(FreqIndex{0}, Complexd(3.0));
    CHECK(vp_block(f, 0).coeff(FreqIndex{0}) == Complexd(3.0));
    for (int s : {1, 2, 3}) {
      CHECK(vp_block(f, s).coeffs().matrix().isZero(0.0));
    }
  }
  SUBCASE("single frequency |k| = 3 splits across two levels") {
    CoeffGrid<double> f(1, 3);
    f.set_coeff(FreqIndex{3}, Complexd(1));
    CHECK(vp_block(f, 0).coeffs().matrix().isZero(0.0));
    CHECK(vp_block(f, 1).coeff(FreqIndex{3}) == Complexd(0.5));
    CHECK(vp_block(f, 2).coeff(FreqIndex{3}) == Complexd(0.5));
    CHECK(vp_block(f, 3).coeffs().matrix().isZero(0.0));
  }
  SUBCASE("telescoping reconstructs polynomials") {
    for (int d : {1, 2}) {
      const auto f = testing::random_grid(5 + d, d, d == 1 ? 21 : 9);
      const auto blocks = decompose(f, BlockMode::kVp);
      const auto sum = embedded(reconstruct(blocks), f.halfwidth());
      CHECK(((sum.coeffs() - f.coeffs()).abs() < 1e-10).all());
    }
  }
  SUBCASE("matches the literal convolution route") {
    for (int d : {1, 2}) {
      const auto f = testing::random_grid(15 + d, d, 6);
      for (int s = 0; s <= 3; ++s) {
        const auto fast = vp_block(f, s);
        const auto slow = vp_block_by_convolution(f, s);
        CHECK(fast.halfwidth() == slow.halfwidth());
        CHECK(((fast.coeffs() - slow.coeffs()).abs() < 1e-12).all());
      }
    }
  }
  SUBCASE("kernel-flat frequencies pass through whole") {
    for (int s : {1, 2, 3, 4}) {
      CoeffGrid<double> f(1, Index(1) << s);
      f.set_coeff(FreqIndex{static_cast<int>(Index(1) << s)}, Complexd(2, 1));
      const auto b = vp_block(f, s);
      CHECK(b.coeff(FreqIndex{static_cast<int>(Index(1) << s)}) == Complexd(2, 1));
      // and the neighbours vanish there
      CHECK(vp_block(f, s + 1).coeffs().matrix().isZero(0.0));
      if (s >= 1) CHECK(vp_block(f, s - 1).coeffs().matrix().isZero(0.0));
    }
  }
}

TEST_CASE("sharp_block") {
  SUBCASE("1-D ring contents") {
    auto f = testing::random_grid(7, 1, 7);
    const auto b1 = sharp_block(f, 1);
    CHECK(b1.coeff(FreqIndex{1}) == f.coeff(FreqIndex{1}));
    CHECK(b1.coeff(FreqIndex{-1}) == f.coeff(FreqIndex{-1}));
    CHECK(b1.coeff(FreqIndex{0}) == Complexd(0));
    const auto b2 = sharp_block(f, 2);
    for (int k : {2, 3, -2, -3}) CHECK(b2.coeff(FreqIndex{k}) == f.coeff(FreqIndex{k}));
    CHECK(b2.coeff(FreqIndex{1}) == Complexd(0));
    Index nonzero = 0;
    for (Index i = 0; i < b2.size(); ++i) {
      if (b2.coeffs()[i] != Complexd(0)) ++nonzero;
    }
    CHECK(nonzero == 4);
  }
  SUBCASE("levels are disjoint and partition the input") {
    for (int d : {1, 2}) {
      const auto f = testing::random_grid(9 + d, d, 11);
      const auto blocks = decompose(f, BlockMode::kSharp);
      // disjoint supports
      for (std::size_t a = 0; a < blocks.blocks.size(); ++a) {
        for (std::size_t b = a + 1; b < blocks.blocks.size(); ++b) {
          const auto& ga = blocks.blocks[a];
          const auto& gb = blocks.blocks[b];
          detail::for_each_index(d, std::min(ga.halfwidth(), gb.halfwidth()),
                                 [&](const std::vector<int>& k, Index) {
                                   const bool both = ga.coeffs()[ga.flat_index(k)] != Complexd(0) &&
                                                     gb.coeffs()[gb.flat_index(k)] != Complexd(0);
                                   CHECK(!both);
                                 });
        }
      }
      const auto sum = embedded(reconstruct(blocks), f.halfwidth());
      CHECK(((sum.coeffs() - f.coeffs()).abs() < 1e-10).all());
    }
  }
  SUBCASE("vp and sharp sums agree") {
    const auto f = testing::random_grid(23, 2, 10);
    const auto a = embedded(reconstruct(decompose(f, BlockMode::kVp)), f.halfwidth());
    const auto b = embedded(reconstruct(decompose(f, BlockMode::kSharp)), f.halfwidth());
    CHECK(((a.coeffs() - b.coeffs()).abs() < 1e-10).all());
  }
}

TEST_CASE("block kernels have uniformly bounded L1 mass") {
  // The kernel behind vp_block(., s) is V_{2^s} - V_{2^{s-1}}; its L1 norm
  // stays bounded in s, which is what makes the block sums stable.
  for (int s = 1; s <= 6; ++s) {
    const Index l = Index(1) << s;
    const auto hi = vallee_poussin_kernel(l);
    const auto lo = vallee_poussin_kernel(l / 2);
    TrigPoly<double> sigma(1);
    for (const auto& [k, c] : hi.terms()) sigma.add_term(k, c);
    for (const auto& [k, c] : lo.terms()) sigma.add_term(k, -c);
    CHECK(lp_norm(sigma, 1.0) <= 8.0);
  }
  // and the means themselves are bounded too
  for (Index l : {1, 4, 16, 64}) {
    CHECK(lp_norm(vallee_poussin_kernel(l), 1.0) <= 4.0);
  }
}

TEST_CASE("lp_norm") {
  SUBCASE("constants and single exponentials are unimodular in every p") {
    CoeffGrid<double> c(2, 0);
    c.set_coeff(FreqIndex{0, 0}, Complexd(1));
    CoeffGrid<double> e(1, 3);
    e.set_coeff(FreqIndex{-2}, Complexd(0, 1));
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, kInf}) {
      CHECK(lp_norm(c, p) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lp_norm(e, p) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("dirichlet kernels in L2") {
    for (Index k = 1; k <= 8; ++k) {
      CHECK(lp_norm(dirichlet_kernel(k), 2.0) ==
            doctest::Approx(std::sqrt(double(2 * k + 1))).epsilon(1e-8));
    }
  }
  SUBCASE("monotone in p on the normalized measure") {
    const double grid[] = {1.0, 1.3, 2.0, 2.7, 4.0, 8.0, kInf};
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      const auto f = testing::random_grid(seed, 1, 8);
      double prev = 0;
      for (double p : grid) {
        const double n = lp_norm(f, p);
        CHECK(n >= prev - 1e-9);
        prev = n;
      }
    }
  }
  SUBCASE("triangle inequality and homogeneity") {
    const auto a = testing::random_grid(31, 1, 6);
    const auto b = testing::random_grid(32, 1, 6);
    for (double p : {1.0, 2.0, 3.5, kInf}) {
      CHECK(lp_norm(a + b, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-9);
      CHECK(lp_norm(a * 3.0, p) == doctest::Approx(3.0 * lp_norm(a, p)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(lp_norm(testing::random_grid(1, 1, 2), 0.5), std::invalid_argument);
}

TEST_CASE("nikolskii_gap") {
  SUBCASE("constant polynomial") {
    TrigPoly<double> one(2);
    one.set_term(FreqIndex{0, 0}, Complexd(1));
    // degrees clamp to 1, both norms are 1, so the gap is 2^{-d}
    CHECK(nikolskii_gap(one, 1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("dirichlet kernels stay below the different-metrics bound") {
    for (Index n = 2; n <= 16; ++n) {
      CHECK(nikolskii_gap(dirichlet_kernel(n), 1.0, kInf) <= 1.0);
    }
  }
  SUBCASE("random polynomials stay below one") {
    const std::pair<double, double> pq[] = {{1, 2}, {1, kInf}, {2, 4}, {2, kInf}};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      for (int d : {1, 2}) {
        const auto f = testing::random_poly(seed, d, 6, 8);
        for (const auto& [p, q] : pq) {
          CHECK(nikolskii_gap(f, p, q) <= 1.0);
        }
      }
    }
  }
  SUBCASE("zero polynomial gives zero") {
    CHECK(nikolskii_gap(TrigPoly<double>(1), 1.0, 2.0) == 0.0);
  }
  CHECK_THROWS_AS(nikolskii_gap(dirichlet_kernel(1), 2.0, 2.0), std::invalid_argument);
}
