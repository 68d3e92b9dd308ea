// Copyright 2026 The ellipdecay Authors
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

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/multi_index.hpp"
#include "ellipdecay/rational.hpp"

namespace ellipdecay {

namespace detail {

inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0); }

inline std::complex<double> to_complex(const GaussianRational& c) { return c.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& c) { return c; }

}  // namespace detail

/// Sparse multivariate polynomial in `dim` variables. Coefficients are either
/// exact (GaussianRational) or IEEE complex; the mode is fixed by the type.
/// No zero coefficient is ever stored.
template <class Coeff>
class BasicPoly {
 public:
  using coeff_type = Coeff;
  using TermMap = std::map<MultiIndex, Coeff>;

  BasicPoly() = default;
  explicit BasicPoly(int dim) : dim_(dim) {
    if (dim < 1) throw ValidationError("polynomial dimension must be positive");
  }

  static BasicPoly constant(int dim, Coeff c) {
    BasicPoly p(dim);
    p.add_term(MultiIndex(dim), std::move(c));
    return p;
  }
  static BasicPoly variable(int dim, int j) {
    BasicPoly p(dim);
    p.add_term(MultiIndex::unit(dim, j), Coeff(1));
    return p;
  }
  static BasicPoly monomial(const MultiIndex& alpha, Coeff c) {
    BasicPoly p(alpha.dim());
    p.add_term(alpha, std::move(c));
    return p;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; std::nullopt for the zero polynomial.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.total();  // graded order: last key has max degree
  }
  int degree_or(int fallback) const { return degree().value_or(fallback); }

  Coeff coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const MultiIndex& alpha, const Coeff& c) {
    if (alpha.dim() != dim_) throw ValidationError("term dimension does not match polynomial");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  BasicPoly& operator*=(const Coeff& s) {
    if (detail::coeff_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const Coeff& s) { return a *= s; }
  friend BasicPoly operator*(const Coeff& s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator-(BasicPoly a) { return a *= Coeff(-1); }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    a.check_dim(b);
    BasicPoly out(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  BasicPoly pow(int n) const {
    BasicPoly out = constant(dim_, Coeff(1));
    for (int k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  /// d/d(var j).
  BasicPoly derivative(int j) const {
    BasicPoly out(dim_);
    for (const auto& [a, c] : terms_) {
      if (a[j] == 0) continue;
      MultiIndex b = a;
      b[j] -= 1;
      out.add_term(b, c * Coeff(a[j]));
    }
    return out;
  }

  /// partial^alpha.
  BasicPoly derivative(const MultiIndex& alpha) const {
    BasicPoly out = *this;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < alpha[j]; ++k) out = out.derivative(j);
    return out;
  }

  /// Terms of total degree exactly k.
  BasicPoly homogeneous_part(int k) const {
    BasicPoly out(dim_);
    for (const auto& [a, c] : terms_)
      if (a.total() == k) out.terms_.emplace(a, c);
    return out;
  }

  /// Evaluates at an arbitrary commutative point type (complex<double>, GaussianRational).
  template <class T>
  T evaluate(std::span<const T> point) const {
    if (static_cast<int>(point.size()) != dim_) throw ValidationError("evaluation point has wrong dimension");
    const int deg = degree_or(0);
    // powers[j][k] = point[j]^k
    std::vector<std::vector<T>> powers(static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) {
      auto& row = powers[static_cast<std::size_t>(j)];
      row.reserve(static_cast<std::size_t>(deg) + 1);
      row.push_back(T(1));
      for (int k = 1; k <= deg; ++k) row.push_back(row.back() * point[static_cast<std::size_t>(j)]);
    }
    T sum(0);
    for (const auto& [a, c] : terms_) {
      T term = convert<T>(c);
      for (int j = 0; j < dim_; ++j)
        if (a[j]) term *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(a[j])];
      sum += term;
    }
    return sum;
  }

  std::complex<double> operator()(std::span<const std::complex<double>> point) const {
    return evaluate<std::complex<double>>(point);
  }

  bool is_real() const {
    for (const auto& [a, c] : terms_)
      if (detail::to_complex(c).imag() != 0.0) return false;
    return true;
  }

 private:
  template <class T>
  static T convert(const Coeff& c) {
    if constexpr (std::is_same_v<T, Coeff>) {
      return c;
    } else {
      return T(detail::to_complex(c));
    }
  }

  void check_dim(const BasicPoly& o) const {
    if (o.dim_ != dim_) throw ValidationError("polynomial dimension mismatch");
  }

  int dim_ = 1;
  TermMap terms_;
};

using ExactPoly = BasicPoly<GaussianRational>;
using FloatPoly = BasicPoly<std::complex<double>>;

inline FloatPoly to_float(const ExactPoly& p) {
  FloatPoly out(p.dim());
  for (const auto& [a, c] : p.terms()) out.add_term(a, c.to_complex());
  return out;
}

/// List of the d partial derivatives.
template <class Coeff>
std::vector<BasicPoly<Coeff>> gradient(const BasicPoly<Coeff>& q) {
  std::vector<BasicPoly<Coeff>> g;
  g.reserve(static_cast<std::size_t>(q.dim()));
  for (int j = 0; j < q.dim(); ++j) g.push_back(q.derivative(j));
  return g;
}

}  // namespace ellipdecay
