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
#include <limits>
#include <numbers>
#include <thread>

#include "ellipdecay/decaylab.hpp"
#include "ellipdecay/errors.hpp"
#include "ellipdecay/poly_text.hpp"

using namespace ellipdecay;

namespace {

const double pi = std::numbers::pi;

FieldSample sampled(const Grid1D& g, double (*f)(double)) {
  FieldSample s(g);
  for (int n = 0; n < g.N; ++n) s.values[static_cast<std::size_t>(n)] = f(static_cast<double>(g.x(n)));
  return s;
}

FieldSample sampled_ld(const Grid1D& g, real_t (*f)(real_t)) {
  FieldSample s(g);
  for (int n = 0; n < g.N; ++n) s.values[static_cast<std::size_t>(n)] = f(g.x(n));
  return s;
}

}  // namespace

TEST_CASE("resolvent profile") {
  Grid1D g(40, 4096);
  FieldSample a = resolvent_profile({0, 2}, g);
  FieldSample b = resolvent_profile({-1, 0}, g);
  for (int n = 0; n < g.N; n += 7) {
    double x = std::abs(static_cast<double>(g.x(n)));
    CHECK(static_cast<double>(a.values[static_cast<std::size_t>(n)].real()) ==
          doctest::Approx(std::exp(-x) / 4 * (std::cos(x) - std::sin(x))).epsilon(1e-12));
    CHECK(static_cast<double>(b.values[static_cast<std::size_t>(n)].real()) == doctest::Approx(std::exp(-x) / 2).epsilon(1e-12));
  }
  CHECK(static_cast<double>(resolvent_value({0, 2}, 0)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(resolvent_profile({4, 0}, g), ValidationError);
  CHECK_THROWS_AS(Grid1D(40, 100), ValidationError);
  CHECK_THROWS_AS(Grid1D(40, 1000), ValidationError);
}

TEST_CASE("positivity windows and radius choice") {
  auto w = positivity_windows({0, 2}, 12);
  REQUIRE(w.size() >= 3);
  CHECK(w[0].first == 0);
  CHECK(w[0].second == doctest::Approx(pi / 4).epsilon(1e-9));
  CHECK(w[1].first == doctest::Approx(5 * pi / 4).epsilon(1e-9));
  CHECK(w[1].second == doctest::Approx(9 * pi / 4).epsilon(1e-9));
  auto e = positivity_windows({-1, 0}, 12);
  REQUIRE(e.size() == 1);
  CHECK(std::isinf(e[0].second));

  double R = auto_radius({0, 2}, 40);
  CHECK(R / 2 > 5 * pi / 4);
  CHECK(3 * R / 4 < 9 * pi / 4);
  CHECK(auto_radius({-1, 0}, 40) == doctest::Approx(8));
  CHECK_THROWS_AS(auto_radius({-1, 0}, 20), ValidationError);
}

TEST_CASE("smooth cutoff") {
  CHECK(smooth_cutoff(0.5L, 1, 2) == 1);
  CHECK(smooth_cutoff(2.5L, 1, 2) == 0);
  CHECK(static_cast<double>(smooth_cutoff(1.5L, 1, 2)) == doctest::Approx(0.5));
  real_t prev = 1;
  for (int k = 1; k < 100; ++k) {
    real_t v = smooth_cutoff(1 + k / 100.0L, 1, 2);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("spectral apply") {
  Grid1D g(40, 4096);
  const UniPoly z = parse_unipoly("z"), z2 = parse_unipoly("z^2");
  FieldSample mode(g);
  const int m = 37;
  const real_t xi0 = std::numbers::pi_v<real_t> * m / g.L;
  for (int n = 0; n < g.N; ++n) mode.values[static_cast<std::size_t>(n)] = std::exp(cplx_t(0, xi0 * g.x(n)));
  FieldSample out = spectral_apply(z, mode, false);
  // rounding in the transform, amplified by the largest multiplier
  const real_t bound = g.N * std::numeric_limits<real_t>::epsilon() * g.nyquist() * g.nyquist();
  for (int n = 0; n < g.N; n += 11)
    CHECK(std::abs(out.values[static_cast<std::size_t>(n)] - xi0 * xi0 * mode.values[static_cast<std::size_t>(n)]) < bound);

  FieldSample gauss = sampled_ld(g, [](real_t x) { return std::exp(-x * x / 4); });
  FieldSample once = spectral_apply(z, gauss);
  FieldSample twice = spectral_apply(z, once, false);
  FieldSample direct = spectral_apply(z2, gauss);
  real_t diff = 0;
  for (int n = 0; n < g.N; ++n)
    diff = std::max(diff, std::abs(twice.values[static_cast<std::size_t>(n)] - direct.values[static_cast<std::size_t>(n)]));
  CHECK(static_cast<double>(diff) < 1e-14);
  // -d^2/dx^2 e^{-x^2/4} = (1/2 - x^2/4) e^{-x^2/4}
  for (int n = 0; n < g.N; n += 13) {
    real_t x = g.x(n);
    CHECK(static_cast<double>(std::abs(once.values[static_cast<std::size_t>(n)].real() - (0.5L - x * x / 4) * std::exp(-x * x / 4))) < 1e-15);
  }
  real_t gmax = std::pow(g.nyquist(), 4);
  CHECK(direct.norm() <= gmax * gauss.norm());

  FieldSample step = sampled(g, [](double x) { return std::abs(x) < 3 ? 1.0 : 0.0; });
  CHECK(spectral_tail(step) > 1e-12L);
  CHECK_THROWS_AS(spectral_apply(z2, step), ValidationError);
}

TEST_CASE("potential construction") {
  Grid1D g(40, 4096);
  const UniPoly z2 = parse_unipoly("z^2");
  PotentialBuild b = build_potential(z2, -4, {0, 2}, 0, g);
  CHECK(b.residual < 1e-8);
  CHECK(b.max_imag_V <= 1e-10 * static_cast<double>(b.V.max_abs()));
  for (int n = 0; n < g.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double x = std::abs(static_cast<double>(g.x(n)));
    if (x > b.R) CHECK(b.V.values[i].real() == 0);
    if (x < 3 * b.R / 4) CHECK(b.phi.values[i].real() > 0);
  }
  CHECK(b.k == std::complex<double>(1, 1));

  PotentialBuild s = build_potential(parse_unipoly("z"), -1, {-1, 0}, 0, g);
  CHECK(s.residual < 1e-8);
  for (int n = 0; n < g.N; n += 5) {
    const double x = std::abs(static_cast<double>(g.x(n)));
    if (x > 3 * s.R / 4) CHECK(static_cast<double>(s.phi.values[static_cast<std::size_t>(n)].real()) == doctest::Approx(std::exp(-x) / 2).epsilon(1e-12));
  }

  // transition (R/2, 3R/4) = (1, 1.5) lies past the first sign change at pi/4
  CHECK_THROWS_AS(build_potential(z2, -4, {0, 2}, 2, g), ValidationError);
  CHECK_THROWS_AS(build_potential(z2, -4, {0, 2}, 1.2, g), ValidationError);
  CHECK_THROWS_AS(build_potential(z2, -4, {0, 3}, 0, g), ValidationError);
  CHECK_THROWS_AS(build_potential(z2, -4, {0, 2}, 0, Grid1D(10, 1024)), ValidationError);
  CHECK_THROWS_AS(build_potential(z2, 16, {16, 0}, 0, g), ValidationError);
}

TEST_CASE("eigen solve") {
  Grid1D g(40, 4096);
  const UniPoly z2 = parse_unipoly("z^2");
  PotentialBuild b = build_potential(z2, -4, {0, 2}, 0, g);
  EigenResult e = eigen_solve(z2, b.V, -4);
  CHECK(e.lambda_num == doctest::Approx(-4).epsilon(1e-6));
  CHECK(e.residual < 1e-8);
  CHECK_FALSE(e.degenerate);
  // even eigenfunction
  for (int n = 1; n < g.N / 2; n += 3)
    CHECK(std::abs(static_cast<double>(e.phi.values[static_cast<std::size_t>(n)].real() -
                                       e.phi.values[static_cast<std::size_t>(g.N - n)].real())) < 1e-9);

  FieldSample zero(g);
  CHECK_THROWS_AS(eigen_solve(z2, zero, -4), ConvergenceError);

  PotentialBuild w = build_potential(parse_unipoly("z"), -1, {-1, 0}, 0, g);
  EigenResult ew = eigen_solve(parse_unipoly("z"), w.V, -1);
  CHECK(ew.lambda_num == doctest::Approx(-1).epsilon(1e-6));
  CHECK(ew.residual < 1e-8);
}

TEST_CASE("decay fits") {
  Grid1D g(40, 4096);
  FieldSample e = sampled(g, [](double x) { return std::exp(-std::abs(x)); });
  DecayFit f = fit_decay(e, 8, 16);
  CHECK(f.sigma_hat == doctest::Approx(1).epsilon(1e-3));
  CHECK(f.rsq > 0.9999);
  CHECK_FALSE(f.oscillatory);
  CHECK(fit_decay(e, -16, -8).sigma_hat == doctest::Approx(f.sigma_hat).epsilon(1e-12));

  FieldSample r = sampled(g, [](double x) {
    double b = std::sqrt(1 + x * x);
    return std::exp(-(b - std::sqrt(b)));
  });
  DecayFit fr = fit_decay(r, 8, 16, DecayFit::Mode::r_eps, 0.5);
  CHECK(fr.sigma_hat == doctest::Approx(1).epsilon(1e-2));
  CHECK(fit_decay(r, 8, 16).sigma_hat < 0.9);

  FieldSample osc = sampled(g, [](double x) { return std::exp(-0.5 * std::abs(x)) * std::cos(2 * std::abs(x) + 0.3); });
  DecayFit fo = fit_decay(osc, 8, 16);
  CHECK(fo.oscillatory);
  CHECK(fo.sigma_hat == doctest::Approx(0.5).epsilon(1e-6));

  CHECK_THROWS_AS(fit_decay(e, 4, 16), ValidationError);
  CHECK_THROWS_AS(fit_decay(e, 8, 30), ValidationError);
  CHECK_THROWS_AS(fit_decay(e, -10, 10), ValidationError);
  CHECK_THROWS_AS(fit_decay(e, 8, 8.05), ValidationError);
}

TEST_CASE("lab end to end") {
  const UniPoly z2 = parse_unipoly("z^2");
  auto roots = lab_roots(z2, -4);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - std::complex<double>(0, 2)) < 1e-12);
  CHECK(lab_roots(z2, 16).size() == 1);
  CHECK_THROWS_AS(run_lab(parse_unipoly("z^2-2*z"), -0.5), ValidationError);

  LabResult a = run_lab(z2, -4);
  CHECK(a.relative_error < 0.05);
  CHECK(a.V_support <= 0.75 * a.R + 1e-9);
  CHECK(std::abs(a.fit_left.sigma_hat - a.fit_right.sigma_hat) < 1e-6);
  LabConfig fine;
  fine.N = 8192;
  LabResult b = run_lab(z2, -4, fine);
  CHECK(std::abs(a.eigen.lambda_num - b.eigen.lambda_num) < 1e-9);
  CHECK(std::abs(a.sigma_hat - b.sigma_hat) < 1e-3);

  LabResult s = run_lab(parse_unipoly("z"), -1);
  CHECK(s.sigma_hat == doctest::Approx(1).epsilon(0.01));
  CHECK(lab_csv(s).rfind("x,abs_phi,V\n", 0) == 0);
}

TEST_CASE("concurrent labs agree") {
  LabResult r1, r2;
  std::thread t1([&] { r1 = run_lab(parse_unipoly("z^2"), -4); });
  std::thread t2([&] { r2 = run_lab(parse_unipoly("z^2"), -4); });
  t1.join();
  t2.join();
  CHECK(r1.eigen.lambda_num == r2.eigen.lambda_num);
  CHECK(r1.sigma_hat == r2.sigma_hat);
}
