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

#include <doctest.h>

#include <cmath>
#include <random>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/poly_text.hpp"
#include "ellipdecay/polyalg.hpp"
#include "ellipdecay/roots.hpp"

using namespace ellipdecay;
using cd = std::complex<double>;

TEST_CASE("parse_poly basic forms") {
  ExactPoly p = parse_poly("x1^2+x2^2", 2);
  CHECK(p.terms().size() == 2);
  CHECK(p.coefficient(MultiIndex{2, 0}) == GaussianRational(1));
  CHECK(p.coefficient(MultiIndex{0, 2}) == GaussianRational(1));

  ExactPoly z = parse_poly("0", 3);
  CHECK(z.is_zero());
  CHECK_FALSE(z.degree().has_value());

  CHECK_THROWS_AS(parse_poly("x3", 2), ValidationError);
  CHECK_THROWS_AS(parse_poly("", 2), ValidationError);
  CHECK_THROWS_AS(parse_poly("x1^", 2), ValidationError);
  CHECK_THROWS_AS(parse_poly("y1", 2), ValidationError);
}

TEST_CASE("parse_poly rationals, decimals, products and the imaginary unit") {
  ExactPoly p = parse_poly("3/2*x1^2*x2 - 0.25 x2 + (1+2i)", 2);
  CHECK(p.coefficient(MultiIndex{2, 1}) == GaussianRational(Rational(3, 2)));
  CHECK(p.coefficient(MultiIndex{0, 1}) == GaussianRational(Rational(-1, 4)));
  CHECK(p.coefficient(MultiIndex{0, 0}) == GaussianRational(1, 2));
  ExactPoly q = parse_poly("(x1+x2)^2", 2);
  CHECK(q.coefficient(MultiIndex{1, 1}) == GaussianRational(2));
}

TEST_CASE("format/parse round trip") {
  for (const char* text : {"x1^2 + x2^2", "x1^4 - 2*x1^2 + 1", "3/2*x1*x2^3 - i*x1 + 5", "-x2", "(1+2i)*x1^2 - 7/3"}) {
    ExactPoly p = parse_poly(text, 2);
    std::string canon = format_poly(p);
    CHECK(format_poly(parse_poly(canon, 2)) == canon);
    CHECK(parse_poly(canon, 2) == p);
  }
  CHECK(format_poly(parse_poly("x2^2+x1^2", 2)) == "x1^2 + x2^2");
  CHECK(format_unipoly(parse_unipoly("z^2-2z")) == "z^2 - 2*z");
}

TEST_CASE("JSON form round trip") {
  ExactPoly p = parse_poly("3/2*x1*x2^3 - i*x1 + 5", 2);
  CHECK(poly_from_json(poly_to_json(p)) == p);
  auto j = nlohmann::json::parse(R"({"dim":1,"terms":[{"alpha":[2],"re":0.5,"im":0}]})");
  CHECK(poly_from_json(j).coefficient(MultiIndex{2}) == GaussianRational(Rational(1, 2)));
}

TEST_CASE("eval_conjugate examples") {
  ExactPoly q = parse_poly("x1^2", 1);
  std::vector<double> xi{1}, om{1};
  cd v = eval_conjugate(q, xi, 1.0, om);
  CHECK(v.real() == doctest::Approx(0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(2));

  ExactPoly q4 = parse_poly("(x1^2+x2^2)^2", 2);
  std::vector<double> xi2{0, 0}, om2{1, 0};
  CHECK(std::abs(eval_conjugate(q4, xi2, 1.0, om2) - cd(1)) < 1e-15);

  std::vector<double> xi0{0};
  CHECK(std::abs(eval_conjugate(q, xi0, 1.0, om) - cd(-1)) < 1e-15);

  std::vector<double> bad{0.5, 0.5};
  CHECK_THROWS_AS(eval_conjugate(q4, xi2, 1.0, bad), ValidationError);
  CHECK_THROWS_AS(eval_conjugate(q, xi2, 1.0, om2), ValidationError);

  std::vector<Rational> exi{1}, eom{1};
  CHECK(eval_conjugate_exact(q, exi, Rational(1), eom) == GaussianRational(0, 2));
}

TEST_CASE("eval_conjugate agrees with the real/imag split expansion") {
  // Q(xi + i s w) expanded as a polynomial in 2d real variables (u, v) := (xi, s w).
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  ExactPoly q = parse_poly("x1^3*x2 - 2*x1*x2^2 + 3/4*x2^4 + x1 - 5", 2);
  ExactPoly lifted(4);
  for (const auto& [a, c] : q.terms()) {
    // (u1 + i v1)^a1 (u2 + i v2)^a2
    ExactPoly f1 = (ExactPoly::variable(4, 0) + ExactPoly::variable(4, 2) * GaussianRational::i()).pow(a[0]);
    ExactPoly f2 = (ExactPoly::variable(4, 1) + ExactPoly::variable(4, 3) * GaussianRational::i()).pow(a[1]);
    lifted += f1 * f2 * c;
  }
  for (int k = 0; k < 50; ++k) {
    double th = u(rng) * 3.14159;
    std::vector<double> xi{u(rng), u(rng)}, om{std::cos(th), std::sin(th)};
    double s = 2 * std::abs(u(rng));
    std::vector<cd> pt{xi[0], xi[1], s * om[0], s * om[1]};
    cd a = eval_conjugate(q, xi, s, om);
    cd b = to_float(lifted)(pt);
    CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(b)));
  }
}

TEST_CASE("gradient examples and finite-difference order") {
  auto g = gradient(parse_poly("x1^2+x2^2", 2));
  CHECK(g[0] == parse_poly("2*x1", 2));
  CHECK(g[1] == parse_poly("2*x2", 2));
  auto g4 = gradient(parse_poly("(x1^2+x2^2)^2", 2));
  CHECK(g4[0] == parse_poly("4*(x1^2+x2^2)*x1", 2));
  auto gc = gradient(parse_poly("7", 2));
  CHECK(gc[0].is_zero());
  CHECK(gc[1].is_zero());

  ExactPoly q = parse_poly("x1^3*x2 + 2*x2^3 - x1", 2);
  auto gq = gradient(q);
  FloatPoly fq = to_float(q), fg = to_float(gq[0]);
  std::vector<cd> p0{0.3, -0.7};
  auto fd_err = [&](double h) {
    std::vector<cd> pp{p0[0] + h, p0[1]}, pm{p0[0] - h, p0[1]};
    return std::abs((fq(pp) - fq(pm)) / (2 * h) - fg(p0));
  };
  double e1 = fd_err(1e-2), e2 = fd_err(1e-3);
  CHECK(std::log10(e1 / e2) >= 1.9);
  CHECK(fd_err(1e-4) < 1e-7);
  CHECK(fd_err(1e-5) < 1e-8);
}

TEST_CASE("zeta_dcoef") {
  auto [z1, d1] = zeta_dcoef(MultiIndex{1, 0, 2});
  CHECK(z1 == Rational(1, 2));
  CHECK(d1 == Rational(1, 4));
  auto [z2, d2] = zeta_dcoef(MultiIndex{1, 0, 0});
  CHECK(z2 == 1);
  CHECK(d2 == 1);
  auto [z3, d3] = zeta_dcoef(MultiIndex{1, 1, 1});
  CHECK(z3 == Rational(1, 3));
  CHECK(d3 == Rational(1, 3));
  CHECK_THROWS_AS(zeta_dcoef(MultiIndex{0, 0}), ValidationError);
}

TEST_CASE("summation rule: #{(beta,k): alpha = beta + e_k} = 1/zeta(alpha)") {
  for (int d = 1; d <= 3; ++d)
    for (const auto& alpha : multi_indices_up_to(d, 6)) {
      if (alpha.is_zero()) continue;
      int count = 0;
      for (int k = 0; k < d; ++k)
        for (const auto& beta : multi_indices_up_to(d, alpha.total()))
          if (beta + MultiIndex::unit(d, k) == alpha) ++count;
      CHECK(Rational(count) == 1 / zeta(alpha));
    }
}

TEST_CASE("is_elliptic") {
  Ellipticity e = is_elliptic(parse_poly("x1^4+x2^4", 2));
  CHECK(e.kind == Ellipticity::Kind::numeric_pass);
  CHECK(e.margin == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(e.margin >= 0.5 - 1e-12);

  CHECK(is_elliptic(RadialForm(parse_unipoly("z^2"), 2)).kind == Ellipticity::Kind::certified_radial);

  Ellipticity f = is_elliptic(parse_poly("x1^2-x2^2", 2));
  CHECK(f.kind == Ellipticity::Kind::fail);
  REQUIRE(f.witness.size() == 2);
  CHECK(std::abs(f.witness[0]) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(f.witness[1]) == doctest::Approx(1 / std::sqrt(2.0)));

  CHECK(is_elliptic(parse_poly("x1^2+x2^2+x3^2", 3)).kind == Ellipticity::Kind::numeric_pass);
  CHECK(is_elliptic(parse_poly("x1^3+x2^2", 2)).kind == Ellipticity::Kind::fail);
  CHECK_THROWS_AS(is_elliptic(parse_poly("0", 2)), ValidationError);
}

TEST_CASE("exact gcd, squarefree part and root multiplicities") {
  UniPoly p = parse_unipoly("(z-1)^2*(z+2)");
  CHECK(gcd(p, p.derivative()) == parse_unipoly("z-1"));
  CHECK(squarefree_part(p) == parse_unipoly("(z-1)*(z+2)"));
  auto roots = distinct_roots(p);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    if (std::abs(r.z - cd(1)) < 1e-12) CHECK(r.multiplicity == 2);
    else CHECK(r.multiplicity == 1);
  }
  auto r4 = distinct_roots(parse_unipoly("z^2+4"));
  REQUIRE(r4.size() == 2);
  CHECK(std::abs(upper_sqrt(r4[1].z) - cd(1, 1)) < 1e-15);
  CHECK(upper_sqrt(cd(-1, -0.0)) == cd(0, 1));
}

TEST_CASE("Aberth roots of a random polynomial") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cd> c;
  for (int k = 0; k <= 9; ++k) c.emplace_back(u(rng), u(rng));
  for (auto z : polynomial_roots(c)) {
    cd p = 0;
    for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
    CHECK(std::abs(p) < 1e-12);
  }
}

TEST_CASE("radial expansion") {
  RadialForm f(parse_unipoly("z^2-2z"), 2);
  CHECK(f.expand() == parse_poly("(x1^2+x2^2)^2 - 2*(x1^2+x2^2)", 2));
  CHECK_THROWS_AS(RadialForm(parse_unipoly("3"), 2), ValidationError);
}

TEST_CASE("division by constants") {
  ExactPoly p = parse_poly("x1^3/3 - x2/(2*i)", 2);
  CHECK(p.coefficient(MultiIndex{3, 0}) == GaussianRational(Rational(1, 3)));
  CHECK(p.coefficient(MultiIndex{0, 1}) == GaussianRational(0, Rational(1, 2)));
  CHECK_THROWS_AS(parse_poly("x1/x2", 2), ValidationError);
  CHECK_THROWS_AS(parse_poly("x1/0", 2), ValidationError);
}
