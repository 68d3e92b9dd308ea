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

#include "ellipdecay/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

namespace {

using cld = std::complex<long double>;

template <class C>
std::pair<C, C> horner_with_derivative(const std::vector<C>& c, C z) {
  C p = c.back();
  C dp = 0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs_in,
                                                   const RootOptions& opt) {
  std::vector<std::complex<double>> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw ValidationError("root finding on the zero polynomial");
  const std::size_t n = coeffs.size() - 1;
  std::vector<std::complex<double>> roots;
  // zeros at the origin
  std::size_t shift = 0;
  while (shift < n && coeffs[shift] == 0.0) ++shift;
  roots.assign(shift, 0.0);
  std::vector<cld> c;
  for (std::size_t k = shift; k <= n; ++k) c.emplace_back(coeffs[k].real(), coeffs[k].imag());
  const std::size_t m = c.size() - 1;
  if (m == 0) return roots;
  if (m == 1) {
    cld r = -c[0] / c[1];
    roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    return roots;
  }

  // Initial guesses on a circle of the Cauchy-type radius, rotated off symmetry axes.
  long double radius = 0;
  for (std::size_t k = 0; k < m; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k] / c[m]), 1.0L / static_cast<long double>(m - k)));
  radius = std::max(radius, 1e-3L);
  std::vector<cld> z(m);
  for (std::size_t k = 0; k < m; ++k) {
    long double th = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(m) + 0.4L;
    z[k] = radius * cld(std::cos(th), std::sin(th));
  }

  bool converged = false;
  for (int it = 0; it < opt.max_iterations && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < m; ++k) {
      auto [p, dp] = horner_with_derivative(c, z[k]);
      if (p == cld(0)) continue;
      cld ratio = p / dp;
      cld sum = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      cld step = ratio / (1.0L - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > opt.tolerance * (1 + std::abs(z[k]))) converged = false;
    }
  }
  // Newton polish; the Aberth fixed point is already close.
  for (auto& r : z) {
    for (int it = 0; it < 8; ++it) {
      auto [p, dp] = horner_with_derivative(c, r);
      if (dp == cld(0)) break;
      cld step = p / dp;
      r -= step;
      if (std::abs(step) <= std::numeric_limits<long double>::epsilon() * (1 + std::abs(r))) break;
    }
  }
  if (!converged) {
    // accept if residuals are tiny relative to coefficient scale
    long double scale = 0;
    for (auto& ck : c) scale = std::max(scale, std::abs(ck));
    for (auto& r : z) {
      long double mag = std::max(1.0L, std::pow(std::abs(r), static_cast<long double>(m)));
      if (std::abs(horner_with_derivative(c, r).first) > 1e-9L * scale * mag)
        throw ConvergenceError("Aberth iteration did not converge");
    }
  }
  for (auto& r : z) roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<UniRoot> distinct_roots(const UniPoly& p, const RootOptions& opt) {
  if (p.degree() < 1) return {};
  std::vector<UniRoot> out;
  for (auto z : polynomial_roots(squarefree_part(p).complex_coefficients(), opt)) out.push_back({z, 1});
  // Each gcd level g_k = gcd(g_{k-1}, g_{k-1}') removes one multiplicity; roots of
  // squarefree(g_k) have multiplicity > k.
  UniPoly g = gcd(p, p.derivative());
  while (g.degree() >= 1) {
    for (auto z : polynomial_roots(squarefree_part(g).complex_coefficients(), opt)) {
      auto it = std::min_element(out.begin(), out.end(),
                                 [z](const UniRoot& a, const UniRoot& b) { return std::abs(a.z - z) < std::abs(b.z - z); });
      it->multiplicity += 1;
    }
    g = gcd(g, g.derivative());
  }
  return out;
}

std::complex<double> upper_sqrt(std::complex<double> z) {
  std::complex<double> s = std::sqrt(z);
  if (s.imag() < 0 || (s.imag() == 0 && s.real() < 0)) s = -s;
  return s;
}

}  // namespace ellipdecay
