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
#include <string>

#include <gmpxx.h>

namespace ellipdecay {

using Rational = mpq_class;

/// Exact rational from a double (every finite double is a dyadic rational).
Rational rational_from_double(double v);

/// Parses "p", "p/q", "1.25", "-3e-2" exactly.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  GaussianRational(int r) : re(r) {}                   // NOLINT(implicit)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// i^n for any integer n.
  static GaussianRational i_pow(int n);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// "3/2", "-i", "(1/2+3i)"; the form accepted back by the polynomial parser.
std::string to_string(const GaussianRational& z);

}  // namespace ellipdecay
