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

#include "ellipdecay/weylconj.hpp"

#include <algorithm>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/poly_text.hpp"

namespace ellipdecay {

namespace {

MultiIndex join(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> e(a.entries());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return MultiIndex(std::move(e));
}

GaussianRational from_mpz(const mpz_class& z) { return GaussianRational(Rational(z)); }

// c!/(c-g)! per coordinate
mpz_class falling(const MultiIndex& c, const MultiIndex& g) {
  mpz_class out = 1;
  for (int j = 0; j < c.dim(); ++j)
    for (int k = 0; k < g[j]; ++k) out *= c[j] - k;
  return out;
}

// Substitutes x_j -> x_j + s*y_j into f.
PhasePoly shifted(const ExactPoly& f, const Rational& s) {
  const int d = f.dim();
  std::vector<PhasePoly> lin;
  for (int j = 0; j < d; ++j) lin.push_back(PhasePoly::x(d, j) + PhasePoly::xi(d, j) * GaussianRational(s));
  PhasePoly out(d);
  for (const auto& [a, c] : f.terms()) {
    PhasePoly t = PhasePoly::constant(d, c);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < a[j]; ++k) t = t * lin[static_cast<std::size_t>(j)];
    out += t;
  }
  return out;
}

PhasePoly truncate_second(const PhasePoly& p, int max_degree) {
  PhasePoly out(p.dim());
  p.for_each([&](const MultiIndex& ax, const MultiIndex& ay, const GaussianRational& c) {
    if (ay.total() <= max_degree) out.add_term(ax, ay, c);
  });
  return out;
}

PhasePoly mixing(const PhasePoly& a, const GaussianRational& kappa) {
  const int d = a.dim();
  PhasePoly out(d);
  for (const auto& g : multi_indices_up_to(d, a.xi_degree())) {
    PhasePoly t = a.dx(g).dxi(g);
    if (t.is_zero()) continue;
    GaussianRational w(Rational(1) / Rational(g.factorial()));
    for (int k = 0; k < g.total(); ++k) w *= kappa;
    out += t * w;
  }
  return out;
}

GaussianRational pin_kappa() {
  const PhasePoly x = PhasePoly::x(1, 0), p = PhasePoly::xi(1, 0);
  // standard form of Op^w(x xi) = (xp + px)/2
  PhasePoly sym = (standard_product(x, p) + standard_product(p, x)) * GaussianRational(Rational(1, 2));
  const PhasePoly target = x * p;
  for (const GaussianRational& k : {GaussianRational(0, Rational(1, 2)), GaussianRational(0, Rational(-1, 2))})
    if (mixing(sym, k) == target) return k;
  throw Error("standard-to-Weyl sign self-test failed");
}

}  // namespace

PhasePoly PhasePoly::from_xi(const ExactPoly& q) {
  PhasePoly out(q.dim());
  for (const auto& [a, c] : q.terms()) out.add_term(MultiIndex(q.dim()), a, c);
  return out;
}

PhasePoly PhasePoly::from_x(const ExactPoly& f) {
  PhasePoly out(f.dim());
  for (const auto& [a, c] : f.terms()) out.add_term(a, MultiIndex(f.dim()), c);
  return out;
}

PhasePoly PhasePoly::x(int dim, int j) {
  PhasePoly out(dim);
  out.add_term(MultiIndex::unit(dim, j), MultiIndex(dim), 1);
  return out;
}

PhasePoly PhasePoly::xi(int dim, int j) {
  PhasePoly out(dim);
  out.add_term(MultiIndex(dim), MultiIndex::unit(dim, j), 1);
  return out;
}

PhasePoly PhasePoly::constant(int dim, const GaussianRational& c) {
  PhasePoly out(dim);
  out.add_term(MultiIndex(dim), MultiIndex(dim), c);
  return out;
}

GaussianRational PhasePoly::coefficient(const MultiIndex& ax, const MultiIndex& axi) const {
  return poly_.coefficient(join(ax, axi));
}

void PhasePoly::add_term(const MultiIndex& ax, const MultiIndex& axi, const GaussianRational& c) {
  if (ax.dim() != dim_ || axi.dim() != dim_) throw ValidationError("phase-space term has wrong dimension");
  poly_.add_term(join(ax, axi), c);
}

PhasePoly PhasePoly::dx(const MultiIndex& alpha) const {
  PhasePoly out(dim_);
  out.poly_ = poly_.derivative(join(alpha, MultiIndex(dim_)));
  return out;
}

PhasePoly PhasePoly::dxi(const MultiIndex& alpha) const {
  PhasePoly out(dim_);
  out.poly_ = poly_.derivative(join(MultiIndex(dim_), alpha));
  return out;
}

int PhasePoly::xi_degree() const {
  int m = 0;
  for_each([&](const MultiIndex&, const MultiIndex& axi, const GaussianRational&) { m = std::max(m, axi.total()); });
  return m;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
  if (o.dim_ != dim_) throw ValidationError("phase-space dimension mismatch");
  poly_ += o.poly_;
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
  if (o.dim_ != dim_) throw ValidationError("phase-space dimension mismatch");
  poly_ -= o.poly_;
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  if (a.dim_ != b.dim_) throw ValidationError("phase-space dimension mismatch");
  PhasePoly out(a.dim_);
  out.poly_ = a.poly_ * b.poly_;
  return out;
}

PhasePoly operator*(PhasePoly a, const GaussianRational& s) {
  a.poly_ *= s;
  return a;
}

std::complex<double> PhasePoly::operator()(std::span<const std::complex<double>> x,
                                           std::span<const std::complex<double>> xi) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(xi.size()) != dim_)
    throw ValidationError("evaluation point has wrong dimension");
  std::vector<std::complex<double>> pt(x.begin(), x.end());
  pt.insert(pt.end(), xi.begin(), xi.end());
  return to_float(poly_)(pt);
}

std::string to_string(const PhasePoly& p, const std::string& second) {
  std::vector<std::string> names;
  for (int j = 1; j <= p.dim(); ++j) names.push_back("x" + std::to_string(j));
  for (int j = 1; j <= p.dim(); ++j) names.push_back(second + std::to_string(j));
  RawTerms raw;
  for (const auto& [a, c] : p.poly().terms()) raw.emplace(a.entries(), c);
  return format_terms(raw, names);
}

PhasePoly parse_phase(const std::string& text, int dim, const std::string& second) {
  auto xs = indexed_variables("x", dim), ys = indexed_variables(second, dim, dim);
  // the longer prefix first so that "xi1" is not read as x followed by garbage
  VariableResolver r = [&](const std::string& name) -> std::optional<int> {
    if (second.size() > 1 && second[0] == 'x') {
      if (auto s = ys(name)) return s;
      return xs(name);
    }
    if (auto s = xs(name)) return s;
    return ys(name);
  };
  PhasePoly out(dim);
  for (auto& [e, c] : parse_expression(text, 2 * dim, r)) {
    MultiIndex ax(dim), ay(dim);
    for (int j = 0; j < dim; ++j) {
      ax[j] = e[static_cast<std::size_t>(j)];
      ay[j] = e[static_cast<std::size_t>(dim + j)];
    }
    out.add_term(ax, ay, c);
  }
  return out;
}

PhasePoly conjugation_exponent(const ExactPoly& f) { return shifted(f, Rational(-1, 2)) - shifted(f, Rational(1, 2)); }

PhasePoly weyl_conjugate(const PhasePoly& a, const ExactPoly& f) {
  const int d = a.dim();
  if (f.dim() != d) throw ValidationError("symbol and weight dimensions differ");
  const int n = a.xi_degree();
  const PhasePoly g = conjugation_exponent(f);
  // exp(g) truncated at y-degree n; g has no y-free terms so n+1 powers suffice
  PhasePoly e = PhasePoly::constant(d, 1), power = PhasePoly::constant(d, 1);
  Rational inv_fact = 1;
  for (int k = 1; k <= n; ++k) {
    power = truncate_second(power * g, n);
    inv_fact /= k;
    e += power * GaussianRational(inv_fact);
  }
  // [y^beta] exp(g) as functions of x
  std::map<MultiIndex, PhasePoly> coeff;
  e.for_each([&](const MultiIndex& ax, const MultiIndex& ay, const GaussianRational& c) {
    auto [it, fresh] = coeff.try_emplace(ay, PhasePoly(d));
    it->second.add_term(ax, MultiIndex(d), c);
  });
  PhasePoly out(d);
  for (const auto& [beta, cx] : coeff) {
    PhasePoly da = a.dxi(beta);
    if (da.is_zero()) continue;
    out += da * cx * GaussianRational::i_pow(-beta.total());
  }
  return out;
}

PhasePoly weyl_conjugate(const ExactPoly& q, const ExactPoly& f) { return weyl_conjugate(PhasePoly::from_xi(q), f); }

PhasePoly standard_product(const PhasePoly& a, const PhasePoly& b) {
  if (a.dim() != b.dim()) throw ValidationError("phase-space dimension mismatch");
  const int d = a.dim();
  PhasePoly out(d);
  a.for_each([&](const MultiIndex& xa, const MultiIndex& pb, const GaussianRational& ca) {
    b.for_each([&](const MultiIndex& xc, const MultiIndex& pe, const GaussianRational& cb) {
      // x^xa (p^pb x^xc) p^pe
      for (const auto& g : sub_indices(pb)) {
        if (!g.divides(xc)) continue;
        GaussianRational w = ca * cb * from_mpz(binomial(pb, g) * falling(xc, g)) * GaussianRational::i_pow(-g.total());
        out.add_term(xa + xc - g, pb - g + pe, w);
      }
    });
  });
  return out;
}

const GaussianRational& weyl_kappa() {
  static const GaussianRational k = pin_kappa();
  return k;
}

PhasePoly standard_to_weyl(const PhasePoly& a) { return mixing(a, weyl_kappa()); }
PhasePoly weyl_to_standard(const PhasePoly& a) { return mixing(a, -weyl_kappa()); }

PhasePoly conjugate_oracle(const PhasePoly& a, const ExactPoly& f) {
  const int d = a.dim();
  if (f.dim() != d) throw ValidationError("symbol and weight dimensions differ");
  std::vector<PhasePoly> P;
  for (int j = 0; j < d; ++j)
    P.push_back(PhasePoly::xi(d, j) + PhasePoly::from_x(f.derivative(j)) * GaussianRational::i());
  const PhasePoly std_form = weyl_to_standard(a);
  PhasePoly out(d);
  std_form.for_each([&](const MultiIndex& ax, const MultiIndex& ap, const GaussianRational& c) {
    PhasePoly t(d);
    t.add_term(ax, MultiIndex(d), c);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < ap[j]; ++k) t = standard_product(t, P[static_cast<std::size_t>(j)]);
    out += t;
  });
  return standard_to_weyl(out);
}

PhasePoly conjugate_oracle(const ExactPoly& q, const ExactPoly& f) { return conjugate_oracle(PhasePoly::from_xi(q), f); }

PhasePoly shifted_symbol(const ExactPoly& q, const ExactPoly& f) {
  const int d = q.dim();
  if (f.dim() != d) throw ValidationError("symbol and weight dimensions differ");
  std::vector<PhasePoly> P;
  for (int j = 0; j < d; ++j)
    P.push_back(PhasePoly::xi(d, j) + PhasePoly::from_x(f.derivative(j)) * GaussianRational::i());
  PhasePoly out(d);
  for (const auto& [a, c] : q.terms()) {
    PhasePoly t = PhasePoly::constant(d, c);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < a[j]; ++k) t = t * P[static_cast<std::size_t>(j)];
    out += t;
  }
  return out;
}

}  // namespace ellipdecay
