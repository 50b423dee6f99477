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
#include <complex>

#include "sparsetrig/spectrum.hpp"
#include "test_support.hpp"

using namespace sparsetrig;
using Complexd = std::complex<double>;

namespace {

// Independent summation route for the kernel: l^{-1} sum_{k=l}^{2l-1} D_k.
TrigPoly<double> vp_by_summation(Index l) {
  TrigPoly<double> acc(1);
  for (Index k = l; k <= 2 * l - 1; ++k) {
    const auto dk = dirichlet_kernel(k);
    for (const auto& [f, c] : dk.terms()) acc.add_term(f, c);
  }
  TrigPoly<double> out(1);
  for (const auto& [f, c] : acc.terms()) out.set_term(f, c / double(l));
  return out;
}

}  // namespace

TEST_CASE("dirichlet kernel") {
  SUBCASE("order zero collapses to the constant") {
    const auto d0 = dirichlet_kernel(0);
    CHECK(d0.term_count() == 1);
    CHECK(d0.coeff(FreqIndex{0}) == Complexd(1));
  }
  SUBCASE("order one profile") {
    const auto d1 = dirichlet_kernel(1);
    CHECK(d1.term_count() == 3);
    for (int m : {-1, 0, 1}) CHECK(d1.coeff(FreqIndex{m}) == Complexd(1));
  }
  SUBCASE("value at zero is the term count") {
    for (Index k : {1, 2, 3}) {
      const auto val = evaluate(dirichlet_kernel(k), {0.0});
      CHECK(val.real() == doctest::Approx(double(2 * k + 1)).epsilon(1e-14));
      CHECK(std::abs(val.imag()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(dirichlet_kernel(-1), std::invalid_argument);
}

TEST_CASE("vallee-poussin kernel") {
  SUBCASE("l = 1 equals the first dirichlet kernel") {
    CHECK(vallee_poussin_kernel(1) == dirichlet_kernel(1));
  }
  SUBCASE("l = 2 profile matches direct summation") {
    const auto v2 = vallee_poussin_kernel(2);
    const auto oracle = vp_by_summation(2);
    CHECK(v2.term_count() == oracle.term_count());
    for (const auto& [f, c] : oracle.terms()) {
      CHECK(std::abs(v2.coeff(f) - c) < 1e-15);
    }
    // Frozen from the summation: 1 on |m| <= 2, 1/2 at |m| = 3, 0 beyond.
    for (int m : {-2, -1, 0, 1, 2}) CHECK(v2.coeff(FreqIndex{m}) == Complexd(1));
    CHECK(v2.coeff(FreqIndex{3}) == Complexd(0.5));
    CHECK(v2.coeff(FreqIndex{-3}) == Complexd(0.5));
    CHECK(v2.coeff(FreqIndex{4}) == Complexd(0));
  }
  SUBCASE("flat shoulder at |m| = l") {
    for (Index l : {2, 4, 8}) {
      CHECK(vallee_poussin_kernel(l).coeff(FreqIndex{static_cast<int>(l)}) == Complexd(1));
      CHECK(vp_by_summation(l).coeff(FreqIndex{static_cast<int>(l)}) == Complexd(1));
    }
  }
  SUBCASE("full profile equals summation for several l") {
    for (Index l : {1, 3, 5}) {
      CHECK(vallee_poussin_kernel(l) == vp_by_summation(l));
    }
  }
  SUBCASE("unit mass at frequency zero") {
    for (Index l : {1, 2, 3, 7, 16}) {
      CHECK(vallee_poussin_kernel(l).coeff(FreqIndex{0}) == Complexd(1));
    }
  }
}

TEST_CASE("tensor kernel") {
  const auto v1 = vallee_poussin_kernel(1);
  SUBCASE("d = 1 is the identity") { CHECK(tensor_kernel(v1, 1) == v1); }
  SUBCASE("constant stays constant") {
    const auto one = dirichlet_kernel(0);
    const auto t = tensor_kernel(one, 3);
    CHECK(t.term_count() == 1);
    CHECK(t.coeff(FreqIndex{0, 0, 0}) == Complexd(1));
  }
  SUBCASE("d = 2 product structure") {
    const auto t = tensor_kernel(v1, 2);
    CHECK(t.term_count() == 9);
    CHECK(t.coeff(FreqIndex{1, 1}) == Complexd(1));
    CHECK(t.coeff(FreqIndex{1, -1}) == Complexd(1));
    CHECK(t.coeff(FreqIndex{2, 0}) == Complexd(0));
  }
  SUBCASE("general coefficients multiply") {
    const auto v2 = vallee_poussin_kernel(2);
    const auto t = tensor_kernel(v2, 2);
    CHECK(t.coeff(FreqIndex{3, 3}) == Complexd(0.25));
    CHECK(t.coeff(FreqIndex{3, 0}) == Complexd(0.5));
  }
}

TEST_CASE("convolve") {
  auto f = testing::random_grid(7, 1, 5);
  SUBCASE("constant kernel projects onto the mean") {
    const auto proj = convolve(f, dirichlet_kernel(0));
    CHECK(proj.halfwidth() == 0);
    CHECK(proj.coeff(FreqIndex{0}) == f.coeff(FreqIndex{0}));
  }
  SUBCASE("wide kernel is the identity") {
    const auto same = convolve(f, vallee_poussin_kernel(5));
    CHECK(same.halfwidth() == f.halfwidth());
    CHECK(((same.coeffs() - f.coeffs()).abs() < 1e-15).all());
  }
  SUBCASE("dirichlet grid against the ramp") {
    const auto d3 = to_grid(dirichlet_kernel(3));
    const auto out = convolve(d3, vallee_poussin_kernel(2));
    CHECK(out.halfwidth() == 3);
    for (int m : {-2, -1, 0, 1, 2}) CHECK(out.coeff(FreqIndex{m}) == Complexd(1));
    CHECK(out.coeff(FreqIndex{3}) == Complexd(0.5));
    CHECK(out.coeff(FreqIndex{-3}) == Complexd(0.5));
  }
  SUBCASE("linear in the function argument") {
    const auto g = testing::random_grid(8, 1, 5, "test/grid2");
    const auto v2 = vallee_poussin_kernel(2);
    const auto lhs = convolve(f + g, v2);
    const auto rhs = convolve(f, v2) + convolve(g, v2);
    CHECK(((lhs.coeffs() - rhs.coeffs()).abs() < 1e-12).all());
  }
  SUBCASE("support shrinks to the intersection") {
    const auto out = convolve(f, dirichlet_kernel(2));
    CHECK(out.halfwidth() == 2);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(convolve(f, tensor_kernel(dirichlet_kernel(1), 2)), std::invalid_argument);
  }
}

TEST_CASE("synthesize") {
  SUBCASE("constant grid") {
    CoeffGrid<double> f(2, 0);
    f.set_coeff(FreqIndex{0, 0}, Complexd(2.5, -1.0));
    const auto s = synthesize(f, 4);
    CHECK(s.size() == 16);
    CHECK(((s.values() - Complexd(2.5, -1.0)).abs() < 1e-14).all());
  }
  SUBCASE("single exponential has unit modulus everywhere") {
    CoeffGrid<double> f(1, 3);
    f.set_coeff(FreqIndex{2}, Complexd(1));
    const auto s = synthesize(f, 16);
    CHECK(((s.values().abs() - 1.0).abs() < 1e-13).all());
  }
  SUBCASE("dirichlet kernel at the origin") {
    const auto s = synthesize(dirichlet_kernel(2), 16);
    CHECK(s.values()[0].real() == doctest::Approx(5.0).epsilon(1e-13));
  }
  SUBCASE("aliasing is rejected") {
    CoeffGrid<double> f(1, 4);
    CHECK_THROWS_AS(synthesize(f, 8), std::invalid_argument);
    CHECK_NOTHROW(synthesize(f, 9));
  }
  SUBCASE("parseval on alias-free grids") {
    for (int d : {1, 2, 3}) {
      const auto f = testing::random_grid(11 + d, d, d == 3 ? 2 : 4);
      const double coeff_energy = f.coeffs().abs2().sum();
      for (Index m : {9, 12, 16}) {
        const auto s = synthesize(f, m);
        const double sample_energy = s.values().abs2().mean();
        CHECK(std::abs(sample_energy - coeff_energy) < 1e-10 * coeff_energy);
      }
    }
  }
  SUBCASE("three-dimensional synthesis matches direct evaluation") {
    const auto f = testing::random_grid(99, 3, 2);
    const Index m = 8;
    const auto s = synthesize(f, m);
    const auto poly = to_poly(f);
    for (Index probe : {Index(0), Index(137), Index(511)}) {
      const Index i0 = probe / (m * m), i1 = (probe / m) % m, i2 = probe % m;
      const double step = 2.0 * std::numbers::pi / double(m);
      const auto direct = evaluate(poly, {i0 * step, i1 * step, i2 * step});
      CHECK(std::abs(s.values()[probe] - direct) < 1e-11);
    }
  }
  SUBCASE("hermitian grids synthesize to real samples") {
    auto f = testing::random_grid(21, 1, 4);
    // symmetrize: coeff(-k) = conj(coeff(k))
    for (int k = 1; k <= 4; ++k) {
      f.set_coeff(FreqIndex{-k}, std::conj(f.coeff(FreqIndex{k})));
    }
    f.set_coeff(FreqIndex{0}, Complexd(f.coeff(FreqIndex{0}).real()));
    f.tag_real(true);
    CHECK(f.is_hermitian(0.0));
    const auto s = synthesize(f, default_sample_count(4));
    CHECK((s.values().imag().abs() < 1e-10).all());
  }
}

TEST_CASE("real tag propagation") {
  auto f = testing::random_grid(31, 1, 6);
  for (int k = 1; k <= 6; ++k) f.set_coeff(FreqIndex{-k}, std::conj(f.coeff(FreqIndex{k})));
  f.set_coeff(FreqIndex{0}, Complexd(1.0));
  f.tag_real(true);
  const auto smoothed = convolve(f, vallee_poussin_kernel(2));
  CHECK(smoothed.real_tagged());
  CHECK(smoothed.is_hermitian(1e-15));
  // a complex-coefficient kernel clears the tag
  const auto twisted = convolve(f, bernoulli_kernel(1.0, 1.0, 4));
  CHECK(!twisted.real_tagged());
}

TEST_CASE("bernoulli kernel") {
  SUBCASE("zero phase gives real coefficients k^{-r}/2") {
    const auto b = bernoulli_kernel(1.5, 0.0, 4);
    for (int k = 1; k <= 4; ++k) {
      const auto c = b.coeff(FreqIndex{k});
      CHECK(c.real() == doctest::Approx(0.5 * std::pow(k, -1.5)).epsilon(1e-14));
      CHECK(std::abs(c.imag()) < 1e-16);
      CHECK(b.coeff(FreqIndex{-k}) == std::conj(c));
    }
    CHECK(b.coeff(FreqIndex{0}) == Complexd(0));
  }
  SUBCASE("alpha = 1 rotates the phase to -i") {
    const auto b = bernoulli_kernel(2.0, 1.0, 3);
    for (int k = 1; k <= 3; ++k) {
      const Complexd expected = Complexd(0, -0.5) * std::pow(k, -2.0);
      CHECK(std::abs(b.coeff(FreqIndex{k}) - expected) < 1e-15);
    }
  }
  SUBCASE("value at zero matches the cosine sum") {
    // r = 2, K = 2, alpha = 0: cos(0) + cos(0)/4 = 1.25
    const auto val = evaluate(bernoulli_kernel(2.0, 0.0, 2), {0.0});
    CHECK(val.real() == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(std::abs(val.imag()) < 1e-14);
  }
  SUBCASE("truncation rule bounds the tail") {
    for (double r : {0.75, 1.0, 2.0}) {
      const Index k = bernoulli_truncation(r);
      // integral bound at the chosen K
      const double bound = std::pow(double(k), 1.0 - 2 * r) / (2 * r - 1.0);
      CHECK(bound < 1e-8);
      // one step earlier the bound must fail, otherwise K is not minimal
      if (k > 1) {
        const double prev = std::pow(double(k - 1), 1.0 - 2 * r) / (2 * r - 1.0);
        CHECK(prev >= 1e-8 * 0.999);
      }
    }
    CHECK_THROWS_AS(bernoulli_truncation(0.5), std::invalid_argument);
  }
}

TEST_CASE("grid arithmetic embeds to the larger box") {
  const auto a = testing::random_grid(41, 1, 3);
  const auto b = testing::random_grid(42, 1, 5);
  const auto sum = a + b;
  CHECK(sum.halfwidth() == 5);
  CHECK(std::abs(sum.coeff(FreqIndex{2}) - (a.coeff(FreqIndex{2}) + b.coeff(FreqIndex{2}))) <
        1e-15);
  CHECK(std::abs(sum.coeff(FreqIndex{5}) - b.coeff(FreqIndex{5})) < 1e-15);
  const auto diff = a - a;
  CHECK(diff.coeffs().matrix().isZero(0.0));
}
