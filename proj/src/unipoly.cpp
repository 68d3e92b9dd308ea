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

#include "ellipdecay/unipoly.hpp"

#include <algorithm>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::from_doubles(const std::vector<double>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (double v : coeffs) c.push_back(rational_from_double(v));
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<std::size_t>(k)];
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw ValidationError("zero polynomial has no leading coefficient");
  return c_.back();
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return UniPoly(std::move(d));
}

Rational UniPoly::operator()(const Rational& z) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double UniPoly::operator()(double z) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

std::complex<double> UniPoly::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
  std::vector<Rational> rem = c_;
  const int dd = divisor.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(std::max(0, degree() - dd + 1)));
  for (int k = degree(); k >= dd; --k) {
    Rational f = rem[static_cast<std::size_t>(k)] / divisor.leading();
    quot[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= f * divisor.c_[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> c = c_;
  Rational lead = c.back();
  for (auto& v : c) v /= lead;
  return UniPoly(std::move(c));
}

std::vector<std::complex<double>> UniPoly::complex_coefficients() const {
  std::vector<std::complex<double>> out;
  out.reserve(c_.size());
  for (const auto& v : c_) out.emplace_back(v.get_d(), 0.0);
  return out;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

RadialForm::RadialForm(UniPoly g0, int dim) : g0_(std::move(g0)), dim_(dim) {
  if (dim < 1) throw ValidationError("radial form needs a positive dimension");
  if (g0_.degree() < 1) throw ValidationError("radial form G0 must be nonconstant (elliptic of positive degree)");
}

ExactPoly RadialForm::expand() const {
  ExactPoly r2(dim_);
  for (int j = 0; j < dim_; ++j) {
    MultiIndex a(dim_);
    a[j] = 2;
    r2.add_term(a, GaussianRational(1));
  }
  // Horner in |xi|^2.
  ExactPoly acc(dim_);
  for (int k = g0_.degree(); k >= 0; --k) {
    acc = acc * r2;
    acc.add_term(MultiIndex(dim_), GaussianRational(g0_.coefficient(k)));
  }
  return acc;
}

}  // namespace ellipdecay
