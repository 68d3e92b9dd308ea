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
#include <span>
#include <string>

#include "ellipdecay/multipoly.hpp"

namespace ellipdecay {

/// Exact polynomial in 2d variables: slots 0..d-1 are x, slots d..2d-1 are the
/// second group (xi for symbols, y for the conjugation exponent).
class PhasePoly {
 public:
  PhasePoly() = default;
  explicit PhasePoly(int dim) : dim_(dim), poly_(2 * dim) {}

  /// Q(xi) with no x dependence.
  static PhasePoly from_xi(const ExactPoly& q);
  /// f(x) with no second-group dependence.
  static PhasePoly from_x(const ExactPoly& f);
  static PhasePoly x(int dim, int j);
  static PhasePoly xi(int dim, int j);
  static PhasePoly constant(int dim, const GaussianRational& c);

  int dim() const { return dim_; }
  const ExactPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  /// Coefficient of x^ax * xi^axi.
  GaussianRational coefficient(const MultiIndex& ax, const MultiIndex& axi) const;
  void add_term(const MultiIndex& ax, const MultiIndex& axi, const GaussianRational& c);
  /// Calls fn(ax, axi, c) for every term.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [a, c] : poly_.terms()) {
      MultiIndex ax(dim_), axi(dim_);
      for (int j = 0; j < dim_; ++j) {
        ax[j] = a[j];
        axi[j] = a[dim_ + j];
      }
      fn(ax, axi, c);
    }
  }

  PhasePoly dx(const MultiIndex& alpha) const;
  PhasePoly dxi(const MultiIndex& alpha) const;
  /// Largest total degree in the second group.
  int xi_degree() const;

  PhasePoly& operator+=(const PhasePoly& o);
  PhasePoly& operator-=(const PhasePoly& o);
  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const GaussianRational& s);
  friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.dim_ == b.dim_ && a.poly_ == b.poly_; }

  std::complex<double> operator()(std::span<const std::complex<double>> x,
                                  std::span<const std::complex<double>> xi) const;

 private:
  int dim_ = 0;
  ExactPoly poly_;
};

/// Text with variables x1..xd and <second>1..<second>d.
std::string to_string(const PhasePoly& p, const std::string& second = "xi");
PhasePoly parse_phase(const std::string& text, int dim, const std::string& second = "xi");

/// g(x, y) = f(x - y/2) - f(x + y/2).
PhasePoly conjugation_exponent(const ExactPoly& f);

/// Weyl symbol of e^f Op^w(a) e^{-f}: sum over beta of (-i)^|beta| d_xi^beta a * [y^beta] exp(g).
PhasePoly weyl_conjugate(const PhasePoly& a, const ExactPoly& f);
PhasePoly weyl_conjugate(const ExactPoly& q, const ExactPoly& f);

/// Composition of standard-ordered symbols (x to the left of p).
PhasePoly standard_product(const PhasePoly& a, const PhasePoly& b);
/// exp(k d_x . d_xi) with the sign of k fixed by weyl_kappa().
PhasePoly standard_to_weyl(const PhasePoly& a);
PhasePoly weyl_to_standard(const PhasePoly& a);
/// The half-mixing constant, determined once from the operator identity
/// (xp + px)/2 = Op^w(x xi). Throws Error if no candidate is consistent.
const GaussianRational& weyl_kappa();

/// Independent path: a(x, p + i grad f) in standard order, then converted to Weyl form.
PhasePoly conjugate_oracle(const PhasePoly& a, const ExactPoly& f);
PhasePoly conjugate_oracle(const ExactPoly& q, const ExactPoly& f);

/// Q(xi + i grad f(x)) as a symbol (the closed form when d^3 f = 0).
PhasePoly shifted_symbol(const ExactPoly& q, const ExactPoly& f);

}  // namespace ellipdecay
