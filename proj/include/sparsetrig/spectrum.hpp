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

// Frequency-domain representations of multivariate periodic functions:
// coefficient grids over symmetric frequency boxes, sparse trigonometric
// polynomials, classical kernels, and synthesis on uniform sample grids.

#ifndef SPARSETRIG_SPECTRUM_HPP_
#define SPARSETRIG_SPECTRUM_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsetrig {

using Index = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

inline Index ipow(Index base, int exp) {
  Index out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// (2N+1)^d with a hard cap; desk-scale grids stay far below it.
inline Index checked_box_size(Index side, int dim) {
  constexpr Index kMaxElements = Index(1) << 27;
  Index out = 1;
  for (int i = 0; i < dim; ++i) {
    if (out > kMaxElements / side) {
      throw std::invalid_argument("coefficient box exceeds the desk-scale size cap");
    }
    out *= side;
  }
  return out;
}

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Visits the box {max_j |k_j| <= halfwidth} in lexicographic order, which
// coincides with the flat storage order of CoeffGrid. The index vector is
// reused between calls.
template <typename Fn>
void for_each_index(int dim, Index halfwidth, Fn&& fn) {
  const int h = static_cast<int>(halfwidth);
  std::vector<int> k(static_cast<std::size_t>(dim), -h);
  const Index size = ipow(2 * halfwidth + 1, dim);
  for (Index flat = 0; flat < size; ++flat) {
    fn(static_cast<const std::vector<int>&>(k), flat);
    for (int j = dim - 1; j >= 0; --j) {
      if (k[static_cast<std::size_t>(j)] < h) {
        ++k[static_cast<std::size_t>(j)];
        break;
      }
      k[static_cast<std::size_t>(j)] = -h;
    }
  }
}

}  // namespace detail

/// Integer frequency vector in Z^d. The ordering is lexicographic on the
/// components; every deterministic tie-break in the library leans on it.
struct FreqIndex {
  std::vector<int> k;

  FreqIndex() = default;
  explicit FreqIndex(std::vector<int> components) : k(std::move(components)) {
    if (k.empty()) throw std::invalid_argument("FreqIndex: dimension must be >= 1");
  }
  FreqIndex(std::initializer_list<int> components)
      : FreqIndex(std::vector<int>(components)) {}

  int dim() const { return static_cast<int>(k.size()); }
  int operator[](int j) const { return k[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return k[static_cast<std::size_t>(j)]; }

  int max_abs() const {
    int m = 0;
    for (int kj : k) m = std::max(m, std::abs(kj));
    return m;
  }

  FreqIndex negated() const {
    FreqIndex out = *this;
    for (int& kj : out.k) kj = -kj;
    return out;
  }

  friend bool operator==(const FreqIndex& a, const FreqIndex& b) { return a.k == b.k; }
  friend bool operator!=(const FreqIndex& a, const FreqIndex& b) { return !(a == b); }
  friend bool operator<(const FreqIndex& a, const FreqIndex& b) { return a.k < b.k; }
};

/// Dense array of complex Fourier coefficients over the box
/// {k in Z^d : max_j |k_j| <= halfwidth}. This is the canonical function
/// representation; storage is row-major with axis 0 slowest, so the flat
/// order equals the lexicographic order of frequency vectors.
template <typename Real = double>
class CoeffGrid {
 public:
  using Scalar = std::complex<Real>;
  using Storage = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  CoeffGrid(int dim, Index halfwidth) : dim_(dim), halfwidth_(halfwidth) {
    if (dim < 1) throw std::invalid_argument("CoeffGrid: dimension must be >= 1");
    if (halfwidth < 0) throw std::invalid_argument("CoeffGrid: halfwidth must be >= 0");
    const Index size = detail::checked_box_size(2 * halfwidth + 1, dim);
    coeffs_ = Storage::Zero(size);
  }

  int dim() const { return dim_; }
  Index halfwidth() const { return halfwidth_; }
  Index side() const { return 2 * halfwidth_ + 1; }
  Index size() const { return coeffs_.size(); }

  const Storage& coeffs() const { return coeffs_; }
  Storage& coeffs() { return coeffs_; }

  bool contains(const FreqIndex& f) const {
    if (f.dim() != dim_) return false;
    return f.max_abs() <= halfwidth_;
  }

  bool contains(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != dim_) return false;
    for (int kj : k) {
      if (std::abs(static_cast<Index>(kj)) > halfwidth_) return false;
    }
    return true;
  }

  Index flat_index(const std::vector<int>& k) const {
    Index idx = 0;
    for (int kj : k) idx = idx * side() + (kj + halfwidth_);
    return idx;
  }

  Index flat_index(const FreqIndex& f) const { return flat_index(f.k); }

  /// Coefficient at k; frequencies outside the box read as zero.
  Scalar coeff(const FreqIndex& f) const {
    if (f.dim() != dim_) throw std::invalid_argument("CoeffGrid: dimension mismatch");
    if (!contains(f)) return Scalar(0);
    return coeffs_[flat_index(f)];
  }

  void set_coeff(const FreqIndex& f, Scalar value) {
    if (!contains(f)) throw std::invalid_argument("CoeffGrid: frequency outside the box");
    coeffs_[flat_index(f)] = value;
  }

  /// Optional marker: the producer asserts coeff(-k) = conj(coeff(k)).
  bool real_tagged() const { return real_tag_; }
  void tag_real(bool tag) { real_tag_ = tag; }

  /// Checks Hermitian symmetry of the stored coefficients.
  bool is_hermitian(Real tol = Real(0)) const {
    bool ok = true;
    detail::for_each_index(dim_, halfwidth_, [&](const std::vector<int>& k, Index flat) {
      std::vector<int> neg(k);
      for (int& kj : neg) kj = -kj;
      const Scalar a = coeffs_[flat];
      const Scalar b = coeffs_[flat_index(neg)];
      if (std::abs(a - std::conj(b)) > tol) ok = false;
    });
    return ok;
  }

 private:
  int dim_;
  Index halfwidth_;
  bool real_tag_ = false;
  Storage coeffs_;
};

/// Sparse trigonometric polynomial: a finite map from frequency vectors to
/// complex coefficients. Exact zeros are never stored, so term_count() is
/// the "m" of m-term approximation.
template <typename Real = double>
class TrigPoly {
 public:
  using Scalar = std::complex<Real>;
  using TermMap = std::map<FreqIndex, Scalar>;

  explicit TrigPoly(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("TrigPoly: dimension must be >= 1");
  }

  int dim() const { return dim_; }
  Index term_count() const { return static_cast<Index>(terms_.size()); }
  const TermMap& terms() const { return terms_; }

  Scalar coeff(const FreqIndex& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void set_term(const FreqIndex& f, Scalar value) {
    if (f.dim() != dim_) throw std::invalid_argument("TrigPoly: dimension mismatch");
    if (value == Scalar(0)) {
      terms_.erase(f);
    } else {
      terms_[f] = value;
    }
  }

  void add_term(const FreqIndex& f, Scalar value) { set_term(f, coeff(f) + value); }

  Index max_abs_freq() const {
    Index out = 0;
    for (const auto& [f, c] : terms_) out = std::max<Index>(out, f.max_abs());
    return out;
  }

  /// Per-axis degree bounds max_k |k_j| over the support; zeros if empty.
  std::vector<Index> axis_degrees() const {
    std::vector<Index> deg(static_cast<std::size_t>(dim_), 0);
    for (const auto& [f, c] : terms_) {
      for (int j = 0; j < dim_; ++j) {
        deg[static_cast<std::size_t>(j)] =
            std::max<Index>(deg[static_cast<std::size_t>(j)], std::abs(f[j]));
      }
    }
    return deg;
  }

  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  int dim_;
  TermMap terms_;
};

/// Function values on the uniform tensor grid x_j = 2*pi*j/M per axis,
/// row-major flat storage like CoeffGrid.
template <typename Real = double>
class SampleGrid {
 public:
  using Scalar = std::complex<Real>;
  using Storage = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  SampleGrid(int dim, Index points_per_axis)
      : dim_(dim), points_per_axis_(points_per_axis) {
    if (dim < 1) throw std::invalid_argument("SampleGrid: dimension must be >= 1");
    if (points_per_axis < 1) throw std::invalid_argument("SampleGrid: M must be >= 1");
    const Index size = detail::checked_box_size(points_per_axis, dim);
    values_ = Storage::Zero(size);
  }

  int dim() const { return dim_; }
  Index points_per_axis() const { return points_per_axis_; }
  Index size() const { return values_.size(); }
  const Storage& values() const { return values_; }
  Storage& values() { return values_; }

 private:
  int dim_;
  Index points_per_axis_;
  Storage values_;
};

// ---------------------------------------------------------------------------
// Conversions and arithmetic
// ---------------------------------------------------------------------------

template <typename Real>
CoeffGrid<Real> to_grid(const TrigPoly<Real>& p) {
  CoeffGrid<Real> out(p.dim(), p.max_abs_freq());
  for (const auto& [f, c] : p.terms()) out.set_coeff(f, c);
  return out;
}

template <typename Real>
TrigPoly<Real> to_poly(const CoeffGrid<Real>& g) {
  TrigPoly<Real> out(g.dim());
  detail::for_each_index(g.dim(), g.halfwidth(), [&](const std::vector<int>& k, Index flat) {
    const auto c = g.coeffs()[flat];
    if (c != typename CoeffGrid<Real>::Scalar(0)) out.set_term(FreqIndex(k), c);
  });
  return out;
}

/// Same coefficients on a wider box. new_halfwidth >= halfwidth().
template <typename Real>
CoeffGrid<Real> embedded(const CoeffGrid<Real>& g, Index new_halfwidth) {
  if (new_halfwidth < g.halfwidth()) {
    throw std::invalid_argument("embedded: new halfwidth must not shrink the box");
  }
  if (new_halfwidth == g.halfwidth()) return g;
  CoeffGrid<Real> out(g.dim(), new_halfwidth);
  detail::for_each_index(g.dim(), g.halfwidth(), [&](const std::vector<int>& k, Index flat) {
    out.coeffs()[out.flat_index(k)] = g.coeffs()[flat];
  });
  out.tag_real(g.real_tagged());
  return out;
}

template <typename Real>
CoeffGrid<Real> operator+(const CoeffGrid<Real>& a, const CoeffGrid<Real>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("CoeffGrid +: dimension mismatch");
  const Index nh = std::max(a.halfwidth(), b.halfwidth());
  CoeffGrid<Real> out = embedded(a, nh);
  const CoeffGrid<Real> bb = embedded(b, nh);
  out.coeffs() += bb.coeffs();
  out.tag_real(a.real_tagged() && b.real_tagged());
  return out;
}

template <typename Real>
CoeffGrid<Real> operator-(const CoeffGrid<Real>& a, const CoeffGrid<Real>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("CoeffGrid -: dimension mismatch");
  const Index nh = std::max(a.halfwidth(), b.halfwidth());
  CoeffGrid<Real> out = embedded(a, nh);
  const CoeffGrid<Real> bb = embedded(b, nh);
  out.coeffs() -= bb.coeffs();
  out.tag_real(a.real_tagged() && b.real_tagged());
  return out;
}

template <typename Real>
CoeffGrid<Real> operator*(const CoeffGrid<Real>& g, Real scale) {
  CoeffGrid<Real> out = g;
  out.coeffs() *= typename CoeffGrid<Real>::Scalar(scale);
  return out;
}

template <typename Real>
CoeffGrid<Real> operator*(Real scale, const CoeffGrid<Real>& g) {
  return g * scale;
}

// ---------------------------------------------------------------------------
// Classical kernels
// ---------------------------------------------------------------------------

/// Coefficient profile of the de la Vallee-Poussin kernel V_l at frequency m:
/// 1 on |m| <= l, the ramp (2l - |m|)/l on l < |m| <= 2l-1, 0 beyond.
template <typename Real = double>
Real vp_coefficient(Index l, Index m) {
  if (l < 1) throw std::invalid_argument("vp_coefficient: l must be >= 1");
  const Index a = m < 0 ? -m : m;
  if (a <= l) return Real(1);
  if (a <= 2 * l - 1) return Real(2 * l - a) / Real(l);
  return Real(0);
}

/// D_k: coefficient 1 at every frequency in [-k, k]. 1-D.
template <typename Real = double>
TrigPoly<Real> dirichlet_kernel(Index order) {
  if (order < 0) throw std::invalid_argument("dirichlet_kernel: order must be >= 0");
  TrigPoly<Real> out(1);
  for (Index m = -order; m <= order; ++m) {
    out.set_term(FreqIndex{static_cast<int>(m)}, typename TrigPoly<Real>::Scalar(1));
  }
  return out;
}

/// V_l = l^{-1} sum_{k=l}^{2l-1} D_k. 1-D.
template <typename Real = double>
TrigPoly<Real> vallee_poussin_kernel(Index l) {
  if (l < 1) throw std::invalid_argument("vallee_poussin_kernel: l must be >= 1");
  TrigPoly<Real> out(1);
  for (Index m = -(2 * l - 1); m <= 2 * l - 1; ++m) {
    const Real c = vp_coefficient<Real>(l, m);
    if (c != Real(0)) out.set_term(FreqIndex{static_cast<int>(m)}, typename TrigPoly<Real>::Scalar(c));
  }
  return out;
}

/// Tensor product of a 1-D kernel with itself over d axes: the coefficient at
/// (k_1,...,k_d) is the product of the 1-D coefficients.
template <typename Real>
TrigPoly<Real> tensor_kernel(const TrigPoly<Real>& kernel_1d, int d) {
  if (kernel_1d.dim() != 1) throw std::invalid_argument("tensor_kernel: kernel must be 1-D");
  if (d < 1) throw std::invalid_argument("tensor_kernel: dimension must be >= 1");
  if (d == 1) return kernel_1d;

  std::vector<std::pair<int, typename TrigPoly<Real>::Scalar>> base;
  base.reserve(static_cast<std::size_t>(kernel_1d.term_count()));
  for (const auto& [f, c] : kernel_1d.terms()) base.emplace_back(f[0], c);

  const Index n = static_cast<Index>(base.size());
  Index total = 1;
  for (int j = 0; j < d; ++j) {
    if (total > (Index(1) << 26) / std::max<Index>(n, 1)) {
      throw std::invalid_argument("tensor_kernel: result exceeds the desk-scale size cap");
    }
    total *= n;
  }

  TrigPoly<Real> out(d);
  std::vector<Index> digit(static_cast<std::size_t>(d), 0);
  std::vector<int> freq(static_cast<std::size_t>(d), 0);
  for (Index it = 0; it < total; ++it) {
    typename TrigPoly<Real>::Scalar c(1);
    for (int j = 0; j < d; ++j) {
      const auto& [kj, cj] = base[static_cast<std::size_t>(digit[static_cast<std::size_t>(j)])];
      freq[static_cast<std::size_t>(j)] = kj;
      c *= cj;
    }
    if (c != typename TrigPoly<Real>::Scalar(0)) out.set_term(FreqIndex(freq), c);
    for (int j = d - 1; j >= 0; --j) {
      if (++digit[static_cast<std::size_t>(j)] < n) break;
      digit[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

/// True when the kernel is a real even function: real coefficients with
/// g(-k) = g(k). Convolution with such kernels preserves the real tag.
template <typename Real>
bool is_real_even(const TrigPoly<Real>& g) {
  for (const auto& [f, c] : g.terms()) {
    if (c.imag() != Real(0)) return false;
    if (g.coeff(f.negated()) != c) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

/// Convolution against the normalized measure acts coefficient-wise:
/// the result carries f_hat(k) * g_hat(k) on the box of halfwidth
/// min(halfwidth(f), max frequency of g).
template <typename Real>
CoeffGrid<Real> convolve(const CoeffGrid<Real>& f, const TrigPoly<Real>& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("convolve: dimension mismatch");
  const Index nh = std::min(f.halfwidth(), g.max_abs_freq());
  CoeffGrid<Real> out(f.dim(), nh);
  detail::for_each_index(f.dim(), nh, [&](const std::vector<int>& k, Index flat) {
    const auto gc = g.coeff(FreqIndex(k));
    if (gc != typename TrigPoly<Real>::Scalar(0)) {
      out.coeffs()[flat] = f.coeffs()[f.flat_index(k)] * gc;
    }
  });
  out.tag_real(f.real_tagged() && is_real_even(g));
  return out;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

/// Mandated oversampling policy: M = 4*(2N+1) rounded up to a power of two.
inline Index default_sample_count(Index max_freq) {
  return detail::next_pow2(4 * (2 * max_freq + 1));
}

namespace detail {

// One axis of the tensor synthesis: contracts a length-w coefficient axis
// against exp(i k 2*pi*x/M) into a length-M sample axis. Twiddle factors are
// table lookups, exact up to one std::polar evaluation each.
template <typename Real>
void synth_axis(const std::complex<Real>* in, std::complex<Real>* out, Index outer,
                Index w, Index inner, Index M, Index halfwidth,
                const std::vector<std::complex<Real>>& twiddle) {
  using Scalar = std::complex<Real>;
  for (Index o = 0; o < outer; ++o) {
    const Scalar* ib = in + o * w * inner;
    Scalar* ob = out + o * M * inner;
    std::fill(ob, ob + M * inner, Scalar(0));
    for (Index x = 0; x < M; ++x) {
      Scalar* orow = ob + x * inner;
      for (Index j = 0; j < w; ++j) {
        const Index k = j - halfwidth;
        const Index km = ((k % M) + M) % M;
        const Scalar factor = twiddle[static_cast<std::size_t>((km * x) % M)];
        const Scalar* irow = ib + j * inner;
        if (inner == 1) {
          orow[0] += factor * irow[0];
        } else {
          Eigen::Map<Eigen::Array<Scalar, Eigen::Dynamic, 1>>(orow, inner) +=
              factor * Eigen::Map<const Eigen::Array<Scalar, Eigen::Dynamic, 1>>(irow, inner);
        }
      }
    }
  }
}

}  // namespace detail

/// Exact evaluation of the coefficient grid on the uniform tensor grid with M
/// points per axis. Requires M > 2*halfwidth so the samples are alias-free.
template <typename Real>
SampleGrid<Real> synthesize(const CoeffGrid<Real>& f, Index points_per_axis) {
  using Scalar = std::complex<Real>;
  const Index M = points_per_axis;
  if (M <= 2 * f.halfwidth()) {
    throw std::invalid_argument("synthesize: sample count must exceed twice the max frequency");
  }
  const Index w = f.side();
  const int d = f.dim();

  std::vector<Scalar> twiddle(static_cast<std::size_t>(M));
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  for (Index t = 0; t < M; ++t) {
    twiddle[static_cast<std::size_t>(t)] = std::polar(Real(1), two_pi * Real(t) / Real(M));
  }

  using Buffer = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Buffer cur = f.coeffs();
  Index lead = 1;
  for (int a = 0; a < d; ++a) {
    const Index inner = detail::ipow(w, d - 1 - a);
    Buffer next(lead * M * inner);
    detail::synth_axis<Real>(cur.data(), next.data(), lead, w, inner, M, f.halfwidth(), twiddle);
    cur = std::move(next);
    lead *= M;
  }

  SampleGrid<Real> out(d, M);
  out.values() = std::move(cur);
  return out;
}

template <typename Real>
SampleGrid<Real> synthesize(const TrigPoly<Real>& p, Index points_per_axis) {
  return synthesize(to_grid(p), points_per_axis);
}

/// Pointwise evaluation sum_k c_k exp(i <k, x>).
template <typename Real>
std::complex<Real> evaluate(const TrigPoly<Real>& p, const std::vector<Real>& x) {
  if (static_cast<int>(x.size()) != p.dim()) {
    throw std::invalid_argument("evaluate: point dimension mismatch");
  }
  std::complex<Real> out(0);
  for (const auto& [f, c] : p.terms()) {
    Real phase = 0;
    for (int j = 0; j < p.dim(); ++j) phase += Real(f[j]) * x[static_cast<std::size_t>(j)];
    out += c * std::polar(Real(1), phase);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bernoulli kernel
// ---------------------------------------------------------------------------

/// Truncation of F_r(x, alpha) = sum_{k>=1} k^{-r} cos(kx - pi*alpha/2) to
/// 1 <= k <= K, written with complex coefficients: (1/2) k^{-r} e^{-i pi alpha/2}
/// at +k and the conjugate at -k. The constant term is zero.
template <typename Real = double>
TrigPoly<Real> bernoulli_kernel(Real r, Real alpha, Index truncation) {
  if (!(r > Real(0))) throw std::invalid_argument("bernoulli_kernel: r must be > 0");
  if (truncation < 1) throw std::invalid_argument("bernoulli_kernel: truncation must be >= 1");
  TrigPoly<Real> out(1);
  const std::complex<Real> phase = std::polar(Real(0.5), -std::numbers::pi_v<Real> * alpha / Real(2));
  for (Index k = 1; k <= truncation; ++k) {
    const std::complex<Real> c = phase * std::pow(Real(k), -r);
    out.set_term(FreqIndex{static_cast<int>(k)}, c);
    out.set_term(FreqIndex{static_cast<int>(-k)}, std::conj(c));
  }
  return out;
}

/// Smallest K whose L2 tail bound int_K^inf x^{-2r} dx = K^{1-2r}/(2r-1)
/// falls below tail_tol. Requires r > 1/2 (a finite L2 tail).
inline Index bernoulli_truncation(double r, double tail_tol = 1e-8) {
  if (!(r > 0.5)) {
    throw std::invalid_argument("bernoulli_truncation: tail rule needs r > 1/2");
  }
  if (!(tail_tol > 0)) throw std::invalid_argument("bernoulli_truncation: tolerance must be > 0");
  const auto tail_bound = [r](Index k) {
    return std::pow(static_cast<double>(k), 1.0 - 2 * r) / (2 * r - 1);
  };
  Index k = std::max<Index>(
      1, static_cast<Index>(std::ceil(std::pow(tail_tol * (2 * r - 1), 1.0 / (1.0 - 2 * r)))));
  while (!(tail_bound(k) < tail_tol)) ++k;
  return k;
}

}  // namespace sparsetrig

#endif  // SPARSETRIG_SPECTRUM_HPP_
