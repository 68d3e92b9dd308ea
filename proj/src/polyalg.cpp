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

#include "ellipdecay/polyalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

namespace {

void check_point(int dim, std::size_t nxi, std::size_t nomega) {
  if (static_cast<int>(nxi) != dim || static_cast<int>(nomega) != dim)
    throw ValidationError("point dimension does not match polynomial");
}

}  // namespace

std::complex<double> eval_conjugate(const FloatPoly& q, std::span<const double> xi, double sigma,
                                    std::span<const double> omega) {
  check_point(q.dim(), xi.size(), omega.size());
  double n2 = 0;
  for (double w : omega) n2 += w * w;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw ValidationError("omega is not a unit vector");
  std::vector<std::complex<double>> z(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) z[j] = {xi[j], sigma * omega[j]};
  return q.evaluate<std::complex<double>>(z);
}

std::complex<double> eval_conjugate(const ExactPoly& q, std::span<const double> xi, double sigma,
                                    std::span<const double> omega) {
  return eval_conjugate(to_float(q), xi, sigma, omega);
}

GaussianRational eval_conjugate_exact(const ExactPoly& q, std::span<const Rational> xi, const Rational& sigma,
                                      std::span<const Rational> omega) {
  check_point(q.dim(), xi.size(), omega.size());
  Rational n2 = 0;
  for (const auto& w : omega) n2 += w * w;
  if (n2 != 1) throw ValidationError("omega is not a unit vector");
  std::vector<GaussianRational> z;
  for (std::size_t j = 0; j < xi.size(); ++j) z.emplace_back(xi[j], sigma * omega[j]);
  return q.evaluate<GaussianRational>(z);
}

std::pair<Rational, Rational> zeta_dcoef(const MultiIndex& alpha) {
  if (alpha.is_zero()) throw ValidationError("zeta is undefined at alpha = 0");
  Rational z(1, alpha.support_size());
  Rational d = z / Rational(alpha.factorial());
  d.canonicalize();
  return {z, d};
}

Rational zeta(const MultiIndex& alpha) { return zeta_dcoef(alpha).first; }
Rational dcoef(const MultiIndex& alpha) { return zeta_dcoef(alpha).second; }

std::string to_string(Ellipticity::Kind k) {
  switch (k) {
    case Ellipticity::Kind::certified_radial: return "certified_radial";
    case Ellipticity::Kind::numeric_pass: return "numeric_pass";
    case Ellipticity::Kind::fail: return "fail";
  }
  return "fail";
}

std::vector<std::vector<double>> sphere_samples(int dim, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 1) {
    out.push_back({1.0});
    out.push_back({-1.0});
    return out;
  }
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      double th = 2 * std::numbers::pi * k / count;
      out.push_back({std::cos(th), std::sin(th)});
    }
    return out;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      double z = 1.0 - 2.0 * (k + 0.5) / count;
      double r = std::sqrt(1.0 - z * z);
      out.push_back({r * std::cos(golden * k), r * std::sin(golden * k), z});
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    double n = 0;
    do {
      n = 0;
      for (auto& c : v) {
        c = normal(rng);
        n += c * c;
      }
    } while (n < 1e-12);
    for (auto& c : v) c /= std::sqrt(n);
    out.push_back(std::move(v));
  }
  return out;
}

Ellipticity is_elliptic(const ExactPoly& q, std::uint64_t seed) {
  if (q.is_zero()) throw ValidationError("ellipticity of the zero polynomial");
  if (!q.is_real()) throw ValidationError("ellipticity requires real coefficients");
  Ellipticity out;
  const int deg = *q.degree();
  if (deg == 0) {
    out.kind = Ellipticity::Kind::fail;
    out.witness.assign(static_cast<std::size_t>(q.dim()), 0.0);
    out.witness[0] = 1.0;
    out.note = "constant polynomial";
    return out;
  }
  FloatPoly principal = to_float(q.homogeneous_part(deg));
  double scale = 0;
  for (const auto& [a, c] : principal.terms()) scale = std::max(scale, std::abs(c));
  const int count = 10000 * q.dim();
  auto dirs = sphere_samples(q.dim(), count, seed);
  out.samples = static_cast<int>(dirs.size());
  double best = std::numeric_limits<double>::infinity();
  bool pos = false, neg = false;
  for (const auto& w : dirs) {
    std::vector<std::complex<double>> z(w.begin(), w.end());
    double v = principal(z).real();
    if (v > 0) pos = true;
    if (v < 0) neg = true;
    // first minimizer wins, ties within roundoff resolve to grid order
    if (std::abs(v) < best - 1e-14 * scale) {
      best = std::abs(v);
      out.witness = w;
    }
  }
  out.margin = best;
  const bool vanishes = best <= 1e-12 * scale;
  if (pos && neg) {
    out.kind = Ellipticity::Kind::fail;
    out.note = "principal part changes sign on the sphere";
  } else if (vanishes) {
    out.kind = Ellipticity::Kind::fail;
    out.note = "principal part vanishes on the sphere";
  } else {
    out.kind = Ellipticity::Kind::numeric_pass;
    out.note = "heuristic: sampled principal part";
  }
  return out;
}

Ellipticity is_elliptic(const RadialForm& form) {
  Ellipticity out;
  out.kind = Ellipticity::Kind::certified_radial;
  out.margin = std::abs(form.g0().leading().get_d());
  out.note = "radial: leading coefficient nonzero";
  return out;
}

}  // namespace ellipdecay
