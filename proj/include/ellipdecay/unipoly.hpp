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
#include <utility>
#include <vector>

#include "ellipdecay/multipoly.hpp"
#include "ellipdecay/rational.hpp"

namespace ellipdecay {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(Rational c) { return UniPoly({std::move(c)}); }
  static UniPoly from_doubles(const std::vector<double>& coeffs);

  const std::vector<Rational>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coefficient(int k) const;
  const Rational& leading() const;

  UniPoly derivative() const;
  Rational operator()(const Rational& z) const;
  double operator()(double z) const;
  std::complex<double> operator()(std::complex<double> z) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Euclidean division: *this = q*divisor + r, deg r < deg divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
  UniPoly monic() const;

  std::vector<std::complex<double>> complex_coefficients() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd, computed exactly.
UniPoly gcd(UniPoly a, UniPoly b);

/// p / gcd(p, p'): same zeros, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Radial symbol Q(xi) = G0(|xi|^2) in `dim` variables.
struct RadialForm {
  RadialForm(UniPoly g0, int dim);

  const UniPoly& g0() const { return g0_; }
  int dim() const { return dim_; }
  /// Total degree of Q, i.e. 2 deg G0.
  int degree() const { return 2 * g0_.degree(); }
  /// Expanded Q as a polynomial in xi_1..xi_d.
  ExactPoly expand() const;

 private:
  UniPoly g0_;
  int dim_;
};

}  // namespace ellipdecay
