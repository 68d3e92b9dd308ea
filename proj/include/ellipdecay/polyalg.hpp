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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ellipdecay/multipoly.hpp"
#include "ellipdecay/unipoly.hpp"

namespace ellipdecay {

/// Q(xi + i sigma omega). Requires |omega| = 1 within 1e-12.
std::complex<double> eval_conjugate(const FloatPoly& q, std::span<const double> xi, double sigma,
                                    std::span<const double> omega);
std::complex<double> eval_conjugate(const ExactPoly& q, std::span<const double> xi, double sigma,
                                    std::span<const double> omega);
/// Exact version; omega must satisfy |omega|^2 = 1 exactly.
GaussianRational eval_conjugate_exact(const ExactPoly& q, std::span<const Rational> xi, const Rational& sigma,
                                      std::span<const Rational> omega);

/// zeta(alpha) = 1 / #{j : alpha_j > 0} and d(alpha) = zeta(alpha) / alpha!.
std::pair<Rational, Rational> zeta_dcoef(const MultiIndex& alpha);
Rational zeta(const MultiIndex& alpha);
Rational dcoef(const MultiIndex& alpha);

struct Ellipticity {
  enum class Kind { certified_radial, numeric_pass, fail };
  Kind kind = Kind::fail;
  /// Minimum of |principal part| over the sampled sphere (numeric modes).
  double margin = 0;
  /// Direction where the principal part (nearly) vanishes, for fail.
  std::vector<double> witness;
  int samples = 0;
  std::string note;
};

std::string to_string(Ellipticity::Kind k);

/// Sphere sampling: uniform circle (d=2), Fibonacci sphere (d=3), seeded Gaussian
/// directions otherwise; 10^4 * d points. Heuristic for non-radial input.
Ellipticity is_elliptic(const ExactPoly& q, std::uint64_t seed = 1);
Ellipticity is_elliptic(const RadialForm& form);

/// Deterministic direction sample on S^{d-1}.
std::vector<std::vector<double>> sphere_samples(int dim, int count, std::uint64_t seed);

}  // namespace ellipdecay
