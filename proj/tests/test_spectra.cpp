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
#include "ellipdecay/spectra.hpp"

using namespace ellipdecay;

namespace {

RadialForm radial(const char* g0, int d = 2) { return RadialForm(parse_unipoly(g0), d); }

std::vector<double> sigmas(const ExceptionalSet& s) {
  std::vector<double> out;
  for (const auto& p : s.discrete) out.push_back(p.sigma);
  return out;
}

}  // namespace

TEST_CASE("radial_exceptional examples") {
  auto a = radial_exceptional(radial("z^2"), 1.0);
  REQUIRE(sigmas(a).size() == 1);
  CHECK(a.discrete[0].sigma == doctest::Approx(1.0).epsilon(1e-14));

  auto b = radial_exceptional(radial("z^2"), -4.0);
  REQUIRE(b.discrete.size() == 1);
  CHECK(std::abs(b.discrete[0].sigma - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(b.discrete[0].xi[0]) - 1.0) < 1e-14);

  auto c = radial_exceptional(radial("z", 1), -1.0);
  REQUIRE(c.discrete.size() == 1);
  CHECK(std::abs(c.discrete[0].sigma - 1.0) < 1e-15);

  auto d = radial_exceptional(radial("z^2"), 0.0);
  CHECK(d.discrete.empty());
  REQUIRE(d.continua.size() == 1);
  CHECK(d.continua[0].sigma_lo == 0.0);
  CHECK(d.continua[0].multiplicity == 2);
  CHECK(std::abs(d.continua[0].z0) < 1e-15);
  CHECK(d.boundary.size() == 1);
  // the continuum needs d >= 2
  CHECK(radial_exceptional(radial("z^2", 1), 0.0).continua.empty());
}

TEST_CASE("continuum witnesses: xi.omega = st/sigma, |xi|^2 = sigma^2 + s^2 - t^2") {
  // z0 = 0 double zero: any sigma > 0 works with xi perpendicular to omega, |xi| = sigma
  ExactPoly q = radial("z^2").expand();
  for (double sigma : {0.3, 1.0, 4.0}) {
    ExceptionalPoint p{sigma, {1, 0}, {0, sigma}, 0};
    CHECK(exceptional_residual(q, 0.0, p) < 1e-12);
  }
  // z0 = 2i double zero of (z - 2i)(z + 2i) squared: sqrt(2i) = 1 + i, so s = t = 1
  ExactPoly q2 = radial("(z^2+4)^2").expand();
  for (double sigma : {1.5, 3.0}) {
    double along = 1.0 / sigma, across = std::sqrt(sigma * sigma - along * along);
    ExceptionalPoint p{sigma, {1, 0}, {along, across}, 0};
    CHECK(exceptional_residual(q2, 0.0, p) < 1e-10);
  }
  auto set = radial_exceptional(radial("(z^2+4)^2"), 0.0);
  REQUIRE(set.continua.size() == 2);
  CHECK(set.continua[0].sigma_lo == doctest::Approx(1.0));
}

TEST_CASE("every discrete witness solves the exceptional system") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rational> co;
    const int deg = 1 + t % 4;
    for (int k = 0; k <= deg; ++k) co.push_back(c(rng));
    if (sgn(co.back()) == 0) co.back() = 1;
    RadialForm f(UniPoly(co), 2);
    const double lambda = c(rng) / 3.0;
    auto set = radial_exceptional(f, lambda);
    ExactPoly q = f.expand();
    for (const auto& p : set.discrete) {
      CHECK(exceptional_residual(q, lambda, p) < 1e-8);
      CHECK(p.residual < 1e-8);
    }
    for (std::size_t k = 1; k < set.discrete.size(); ++k) CHECK(set.discrete[k - 1].sigma < set.discrete[k].sigma);
  }
}

TEST_CASE("rotational symmetry of radial witnesses") {
  RadialForm f = radial("z^3 - z + 2");
  ExactPoly q = f.expand();
  auto set = radial_exceptional(f, -3.0);
  REQUIRE_FALSE(set.discrete.empty());
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 6.283185307179586);
  for (const auto& p : set.discrete)
    for (int k = 0; k < 10; ++k) {
      double th = u(rng), c = std::cos(th), s = std::sin(th);
      ExceptionalPoint r = p;
      r.omega = {c * p.omega[0] - s * p.omega[1], s * p.omega[0] + c * p.omega[1]};
      r.xi = {c * p.xi[0] - s * p.xi[1], s * p.xi[0] + c * p.xi[1]};
      CHECK(std::abs(exceptional_residual(q, -3.0, r) - exceptional_residual(q, -3.0, p)) < 1e-10);
    }
}

TEST_CASE("generic_exceptional examples") {
  auto a = generic_exceptional(parse_poly("(x1^2+x2^2)^2", 2), 1.0);
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a[0].sigma - 1.0) < 1e-8);
  auto b = generic_exceptional(parse_poly("x1^2+x2^2", 2), -1.0);
  REQUIRE(b.size() == 1);
  CHECK(std::abs(b[0].sigma - 1.0) < 1e-8);
  auto c = generic_exceptional(parse_poly("(x1^2+x2^2)^2", 2), -4.0);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].sigma - 1.0) < 1e-8);
  auto d1 = generic_exceptional(parse_poly("x1^4", 1), -4.0);
  REQUIRE(d1.size() == 1);
  CHECK(std::abs(d1[0].sigma - 1.0) < 1e-8);
  CHECK_THROWS_AS(generic_exceptional(parse_poly("x1^2-x2^2", 2), 1.0), ValidationError);
}

TEST_CASE("generic solver is deterministic and thread independent") {
  ExactPoly q = parse_poly("x1^4 + x2^4 + x1*x2 - x1", 2);
  SolverConfig one;
  one.starts = 64;
  one.threads = 1;
  SolverConfig many = one;
  many.threads = 4;
  auto a = generic_exceptional(q, -2.0, one);
  auto b = generic_exceptional(q, -2.0, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].sigma == b[k].sigma);
    CHECK(a[k].xi == b[k].xi);
  }
}

TEST_CASE("ct_bound") {
  CHECK(ct_bound(radial("z^2"), -4.0).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ct_bound(radial("z", 1), -1.0).value == doctest::Approx(1.0).epsilon(1e-14));
  auto in = ct_bound(radial("z^2"), 16.0);
  CHECK(in.value == 0.0);
  CHECK(in.in_range);

  // bisection oracle against the closed form
  auto g = ct_bound(parse_poly("(x1^2+x2^2)^2", 2), -4.0);
  CHECK(std::abs(g.value - 1.0) < 1e-7);
  CHECK(g.hi - g.lo <= 1e-8);
  CHECK(ct_bound(parse_poly("(x1^2+x2^2)^2", 2), 16.0).in_range);
  CHECK(ct_bound(parse_poly("x1^2", 1), -1.0).value == doctest::Approx(1.0));
}

TEST_CASE("ct_bound never exceeds the least exceptional sigma") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> co;
    for (int k = 0; k <= 1 + t % 3; ++k) co.push_back(c(rng));
    if (sgn(co.back()) == 0) co.back() = 2;
    RadialForm f(UniPoly(co), 2);
    const double lambda = c(rng) + 0.25;
    auto set = radial_exceptional(f, lambda);
    if (set.discrete.empty()) continue;
    CHECK(ct_bound(f, lambda).value <= set.discrete.front().sigma + 1e-14);
  }
}

TEST_CASE("spectrum_geometry") {
  auto a = spectrum_geometry(radial("z^2-2z"));
  REQUIRE(a.critical_values.size() == 2);
  CHECK(a.critical_values[0] == doctest::Approx(-1.0));
  CHECK(a.critical_values[1] == 0.0);
  CHECK(*a.range_min == doctest::Approx(-1.0));
  auto b = spectrum_geometry(radial("z"));
  CHECK(b.critical_values == std::vector<double>{0.0});
  CHECK(*b.range_min == 0.0);
  auto c = spectrum_geometry(radial("z^2"));
  CHECK(c.critical_values == std::vector<double>{0.0});

  SolverConfig cfg;
  cfg.starts = 64;
  auto g = spectrum_geometry(parse_poly("(x1^2+x2^2)^2 - 2*(x1^2+x2^2)", 2), cfg);
  CHECK_FALSE(g.certified);
  REQUIRE(g.critical_values.size() == 2);
  CHECK(g.critical_values[0] == doctest::Approx(-1.0));
  CHECK(*g.range_min == doctest::Approx(-1.0));

  CHECK(radial_is_critical(radial("z^2-2z"), -1.0));
  CHECK(radial_is_critical(radial("z^2-2z"), 0.0));
  CHECK_FALSE(radial_is_critical(radial("z^2-2z"), 3.0));
  CHECK(radial_in_range(radial("z^2-2z"), -1.0));
  CHECK_FALSE(radial_in_range(radial("z^2-2z"), -1.5));
}

TEST_CASE("stationary_check") {
  auto a = stationary_check(radial("z^2"), 1.0, 1.0);
  CHECK_FALSE(a.solvable);
  CHECK(a.best_residual > 1e-3);

  auto b = stationary_check(radial("z^2-2z+1"), 0.0, 1.0);
  CHECK(b.solvable);
  REQUIRE(b.z0.has_value());
  CHECK(std::abs(*b.z0 - std::complex<double>(1.0)) < 1e-12);
  ExactPoly q = radial("z^2-2z+1").expand();
  CHECK(stationary_residual(q, 0.0, 1.0, b.omega, b.xi) < 1e-12);

  // generic minimizer finds the same solution
  SolverConfig cfg;
  auto g = stationary_check(q, 0.0, 1.0, cfg);
  CHECK(g.solvable);

  CHECK_THROWS_AS(stationary_check(radial("z^2"), 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(stationary_check(q, 1.0, -1.0), ValidationError);
}

TEST_CASE("conjugated_XY") {
  ConjugatedSymbol cs(parse_poly("x1^2", 1), -1.0, 1.0, Weight::r1());
  auto v = conjugated_XY(cs, {10.0}, {0.0});
  CHECK(v.X == doctest::Approx(1.0 - 100.0 / 101.0).epsilon(1e-12));
  CHECK(v.Y == 0.0);
  ConjugatedSymbol flat(parse_poly("x1^2 + x1*x2", 2), 2.0, 0.0, Weight::r1());
  auto w = conjugated_XY(flat, {0.3, 0.4}, {1.0, 2.0});
  CHECK(w.X == doctest::Approx(1.0 + 2.0 - 2.0));
  CHECK(w.Y == 0.0);
}

TEST_CASE("weights: closed-form gradient and Hessian match finite differences") {
  for (Weight w : {Weight::r1(), Weight::r_eps(0.5), Weight::r_eps(0.2)}) {
    std::vector<double> x{0.7, -1.3};
    CHECK(w.value(x) >= 1.0);
    auto g = w.gradient(x);
    auto h = w.hessian(x);
    const double e = 1e-5;
    for (int j = 0; j < 2; ++j) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(j)] += e;
      xm[static_cast<std::size_t>(j)] -= e;
      CHECK(g[static_cast<std::size_t>(j)] == doctest::Approx((w.value(xp) - w.value(xm)) / (2 * e)).epsilon(1e-8));
      auto gp = w.gradient(xp), gm = w.gradient(xm);
      for (int k = 0; k < 2; ++k)
        CHECK(h[static_cast<std::size_t>(j * 2 + k)] ==
              doctest::Approx((gp[static_cast<std::size_t>(k)] - gm[static_cast<std::size_t>(k)]) / (2 * e)).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(Weight::r_eps(1.5), ValidationError);
}

TEST_CASE("bracket_XY: positivity and finite-difference agreement") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  ExactPoly q = parse_poly("x1^4 + x2^4 + x1^2*x2 - 3*x1*x2 + x2", 2);
  for (Weight w : {Weight::r1(), Weight::r_eps(0.5)}) {
    ConjugatedSymbol cs(q, 0.7, 0.8, w);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> x{u(rng), u(rng)}, xi{u(rng), u(rng)};
      double b = bracket_XY(cs, x, xi);
      CHECK(b >= -1e-10 * (1 + std::abs(b)));
      double fd = bracket_XY_fd(cs, x, xi);
      CHECK(std::abs(b - fd) <= 1e-6 * (1 + std::abs(b)));
    }
  }
  ConjugatedSymbol zero(q, 0.7, 0.0, Weight::r1());
  CHECK(bracket_XY(zero, {0.5, 0.5}, {1, 1}) == 0.0);
  // linear in sigma
  ConjugatedSymbol s1(parse_poly("x1^2+x2^2", 2), 0.0, 1e-3, Weight::r1());
  ConjugatedSymbol s2(parse_poly("x1^2+x2^2", 2), 0.0, 2e-3, Weight::r1());
  double b1 = bracket_XY(s1, {1, 2}, {0.5, -1}), b2 = bracket_XY(s2, {1, 2}, {0.5, -1});
  CHECK(b2 / b1 == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("flow_rhs") {
  auto f = flow_rhs(parse_poly("x1^2+x2^2", 2), 1.0, {1, 0}, {0, 1});
  CHECK(f.d_omega[0] == 0.0);
  CHECK(f.d_omega[1] == doctest::Approx(2.0));
  CHECK(f.d_xi[0] == 0.0);
  CHECK(f.d_xi[1] == 0.0);

  RadialForm rf = radial("z^2");
  for (double lambda : {1.0, -4.0, 16.0})
    for (const auto& p : radial_exceptional(rf, lambda).discrete)
      CHECK(flow_rhs(rf.expand(), p.sigma, p.omega, p.xi).norm() < 1e-8);

  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  ExactPoly q = parse_poly("x1^3*x2 + x2^4 - x1 + 2", 2);
  for (int k = 0; k < 1000; ++k) {
    double a = n(rng), b = n(rng), r = std::hypot(a, b);
    std::vector<double> om{a / r, b / r}, xi{n(rng), n(rng)};
    auto out = flow_rhs(q, 0.1 + std::abs(n(rng)), om, xi);
    CHECK(std::abs(out.d_omega[0] * om[0] + out.d_omega[1] * om[1]) < 1e-12 * (1 + out.norm()));
    CHECK(std::abs(out.d_xi[0] * om[0] + out.d_xi[1] * om[1]) < 1e-12 * (1 + out.norm()));
  }
}

TEST_CASE("theorem_report") {
  PotentialClass compact;
  compact.compact_support = true;
  auto r = theorem_report(radial("z^2"), -4.0, compact);
  auto find = [&](const TheoremReport& rep, const std::string& name) {
    for (const auto& c : rep.applicable)
      if (c.name == name) return c;
    FAIL("missing check " << name);
    return TheoremCheck{};
  };
  CHECK_FALSE(r.lambda_in_range);
  CHECK(find(r, "positive_rate.off_range").applies);
  REQUIRE(r.sigma_exc.discrete.size() == 1);
  CHECK(r.sigma_exc.discrete[0].sigma == doctest::Approx(1.0));
  CHECK(r.refined_branch == "r_eps");
  CHECK(find(r, "refined.r_eps").applies);
  CHECK_FALSE(find(r, "refined.stationary").applies);
  CHECK(find(r, "finite_rate.laplacian_power").applies);

  PotentialClass slow;
  slow.v1 = {1.0};
  slow.v2 = 1.0;
  slow.little_o = true;
  auto s = theorem_report(radial("z"), 4.0, slow);
  CHECK(s.lambda_in_range);
  CHECK_FALSE(s.lambda_critical);
  CHECK(find(s, "positive_rate.noncritical").applies);
  CHECK_FALSE(find(s, "positive_rate.off_range").applies);

  PotentialClass t4;
  t4.v1 = {3.0};
  t4.v2 = 3.5;
  t4.delta = 1.0;
  auto u = theorem_report(radial("z^2+z"), 1.0, t4);
  auto c4 = find(u, "finite_rate");
  CHECK(c4.requirement.find("V2 = O(|x|^-3)") != std::string::npos);
  CHECK(c4.requirement.find("((5+|alpha|)/2)") != std::string::npos);
  CHECK_FALSE(find(u, "finite_rate.laplacian_power").applies);
  CHECK(find(u, "finite_rate.laplacian_power").note.find("not") != std::string::npos);
}
