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

#include <random>

#include "ellipdecay/poly_text.hpp"
#include "ellipdecay/polyalg.hpp"
#include "ellipdecay/weylconj.hpp"

using namespace ellipdecay;

namespace {

std::vector<ExactPoly> monomials(int d, int max_degree, bool with_constant) {
  std::vector<ExactPoly> out;
  for (const auto& a : multi_indices_up_to(d, max_degree))
    if (with_constant || !a.is_zero()) out.push_back(ExactPoly::monomial(a, 1));
  return out;
}

}  // namespace

TEST_CASE("conjugation exponent") {
  CHECK(conjugation_exponent(parse_poly("3*x1", 1)) == parse_phase("-3*y1", 1, "y"));
  CHECK(conjugation_exponent(parse_poly("x1^4/4", 1)) == parse_phase("-(x1^3*y1 + x1*y1^3/4)", 1, "y"));
  // f even -> g odd in y
  PhasePoly g = conjugation_exponent(parse_poly("x1^4 - 2*x1^2*x2^2 + x2^2 + 7", 2));
  g.for_each([](const MultiIndex&, const MultiIndex& ay, const GaussianRational&) { CHECK(ay.total() % 2 == 1); });
  CHECK(conjugation_exponent(parse_poly("5", 2)).is_zero());
}

TEST_CASE("phase text round trip") {
  PhasePoly p = parse_phase("(xi1 + i*x1^2)^4 - 2*i*xi1 + 2*x1^2", 1);
  CHECK(parse_phase(to_string(p), 1) == p);
  CHECK(to_string(PhasePoly::xi(2, 1)) == "xi2");
}

TEST_CASE("kappa is pinned by the x p identity") {
  CHECK(weyl_kappa() == GaussianRational(0, Rational(1, 2)));
  PhasePoly xp = PhasePoly::x(1, 0) * PhasePoly::xi(1, 0);
  CHECK(standard_to_weyl(xp) == xp + PhasePoly::constant(1, GaussianRational(0, Rational(1, 2))));
  // px = xp - i in standard form
  CHECK(standard_product(PhasePoly::xi(1, 0), PhasePoly::x(1, 0)) == xp - PhasePoly::constant(1, GaussianRational::i()));
  PhasePoly s = parse_phase("x1^2*xi1^3 + i*x2*xi1*xi2 - x1", 2);
  CHECK(weyl_to_standard(standard_to_weyl(s)) == s);
}

TEST_CASE("standard product is associative") {
  std::mt19937_64 rng(3);
  std::vector<PhasePoly> pool = {parse_phase("x1^2*xi1", 1), parse_phase("xi1^2 + x1", 1), parse_phase("x1*xi1^3 - 2", 1),
                                 parse_phase("i*x1^3", 1)};
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool) CHECK(standard_product(standard_product(a, b), c) == standard_product(a, standard_product(b, c)));
}

TEST_CASE("worked examples") {
  CHECK(weyl_conjugate(parse_poly("x1^4", 1), parse_poly("x1^3/3", 1)) ==
        parse_phase("(xi1 + i*x1^2)^4 - 2*i*xi1 + 2*x1^2", 1));
  CHECK(conjugate_oracle(parse_poly("x1^4", 1), parse_poly("x1^3/3", 1)) ==
        parse_phase("(xi1 + i*x1^2)^4 - 2*i*xi1 + 2*x1^2", 1));
  CHECK(weyl_conjugate(parse_poly("x1^2", 1), parse_poly("x1^2/2", 1)) == parse_phase("(xi1 + i*x1)^2", 1));
  CHECK(weyl_conjugate(parse_poly("x1", 1), parse_poly("3*x1", 1)) == parse_phase("xi1 + 3*i", 1));
  CHECK(conjugate_oracle(parse_poly("x1", 1), parse_poly("3*x1", 1)) == parse_phase("xi1 + 3*i", 1));
  ExactPoly q = parse_poly("x1^3*x2 - 2*x2^2 + x1", 2);
  CHECK(weyl_conjugate(q, parse_poly("5/2*x1", 2)) == parse_phase("(xi1 + 5/2*i)^3*xi2 - 2*xi2^2 + xi1 + 5/2*i", 2));
}

TEST_CASE("closed form for quadratic weights") {
  for (int d : {1, 2})
    for (const auto& q : monomials(d, 4, true)) {
      CHECK(weyl_conjugate(q, ExactPoly(d)) == PhasePoly::from_xi(q));
      for (const auto& f : monomials(d, 2, false)) CHECK(weyl_conjugate(q, f) == shifted_symbol(q, f));
    }
  ExactPoly f = parse_poly("x1^2 - 3*x1*x2 + x2/2 + 4", 2);
  ExactPoly q = parse_poly("(x1^2 + x2^2)^2 - x1*x2", 2);
  CHECK(weyl_conjugate(q, f) == shifted_symbol(q, f));
}

TEST_CASE("series equals the operator oracle") {
  for (int d : {1, 2})
    for (const auto& q : monomials(d, 4, true))
      for (const auto& f : monomials(d, 4, false)) CHECK(weyl_conjugate(q, f) == conjugate_oracle(q, f));
}

TEST_CASE("composition in the weight") {
  const std::vector<std::pair<std::string, std::string>> weights = {
      {"x1^3", "x1^2"}, {"x1^4/4", "2*x1^3"}, {"x1*x2^2", "x2^3 - x1"}};
  for (const auto& [fs, hs] : weights) {
    const int d = fs.find("x2") == std::string::npos && hs.find("x2") == std::string::npos ? 1 : 2;
    ExactPoly f = parse_poly(fs, d), h = parse_poly(hs, d);
    ExactPoly q = d == 1 ? parse_poly("x1^4 - x1", 1) : parse_poly("x1^2*x2^2 + x1^3", 2);
    PhasePoly both = weyl_conjugate(q, f + h);
    CHECK(weyl_conjugate(weyl_conjugate(q, f), h) == both);
    CHECK(conjugate_oracle(conjugate_oracle(PhasePoly::from_xi(q), f), h) == both);
  }
}

TEST_CASE("x-dependent symbols: series against oracle") {
  PhasePoly a = parse_phase("x1^2*xi1^2 + i*x1*xi1 - xi1^3", 1);
  for (const auto& f : monomials(1, 4, false)) CHECK(weyl_conjugate(a, f) == conjugate_oracle(a, f));
}

TEST_CASE("linear weight matches the conjugated symbol evaluation") {
  ExactPoly q = parse_poly("(x1^2 + x2^2)^2 - 3*x1*x2 + x2", 2);
  const double sigma = 0.75;
  const double omega[2] = {0.6, 0.8};
  ExactPoly f(2);
  f.add_term(MultiIndex::unit(2, 0), rational_from_double(sigma * omega[0]));
  f.add_term(MultiIndex::unit(2, 1), rational_from_double(sigma * omega[1]));
  PhasePoly b = weyl_conjugate(q, f);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    std::vector<std::complex<double>> x{n(rng), n(rng)}, xi{n(rng), n(rng)};
    std::vector<double> xir{xi[0].real(), xi[1].real()}, om{omega[0], omega[1]};
    std::complex<double> expect = eval_conjugate(to_float(q), xir, sigma, om);
    std::complex<double> got = b(x, xi);
    CHECK(std::abs(got - expect) <= 1e-12 * (1 + std::abs(expect)));
  }
}
