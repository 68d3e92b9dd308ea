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
#include <vector>

#include "ellipdecay/unipoly.hpp"

namespace ellipdecay {

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 1e-15;
};

/// All complex zeros of a polynomial given by coefficients (lowest first) via
/// Aberth-Ehrlich simultaneous iteration followed by long double Newton polish.
/// Throws ConvergenceError if the iteration stalls.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs,
                                                   const RootOptions& opt = {});

struct UniRoot {
  std::complex<double> z;
  int multiplicity = 1;
};

/// Distinct zeros of an exact polynomial with certified multiplicities: the roots
/// of the squarefree part are found numerically, multiplicities come from the
/// exact gcd chain.
std::vector<UniRoot> distinct_roots(const UniPoly& p, const RootOptions& opt = {});

/// Principal square root with nonnegative imaginary part.
std::complex<double> upper_sqrt(std::complex<double> z);

}  // namespace ellipdecay
