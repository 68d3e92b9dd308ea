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
#include <optional>
#include <string>
#include <vector>

#include "ellipdecay/multipoly.hpp"
#include "ellipdecay/unipoly.hpp"

namespace ellipdecay {

struct SolverConfig {
  int starts = 512;
  std::uint64_t seed = 20240601;
  double tol = 1e-10;
  int max_iterations = 100;
  /// Newton may slide toward sigma -> 0 along real solutions; such limits are dropped.
  double sigma_min = 1e-6;
  double sigma_max = 1e2;
  /// Starts per feasibility query in the bisection oracle.
  int feasibility_starts = 64;
  /// 0 means ELLIPDECAY_THREADS or 1.
  int threads = 0;
};

struct ExceptionalPoint {
  double sigma = 0;
  std::vector<double> omega;
  std::vector<double> xi;
  double residual = 0;
};

struct Continuum {
  /// Open interval (sigma_lo, infinity).
  double sigma_lo = 0;
  std::complex<double> z0;
  int multiplicity = 2;
  bool lower_endpoint_included = false;
};

struct ExceptionalSet {
  enum class Source { radial_exact, generic_numeric };
  std::vector<ExceptionalPoint> discrete;
  std::vector<Continuum> continua;
  /// Roots with |Im zeta| below the real-axis tolerance; not exceptional.
  std::vector<std::complex<double>> boundary;
  double lambda = 0;
  int dim = 1;
  Source source = Source::radial_exact;
};

std::string to_string(ExceptionalSet::Source s);

/// Imaginary-part threshold below which a root counts as real.
double real_axis_tolerance(std::complex<double> zeta);

/// Residual max(|Q(zeta) - lambda|, |P_perp(omega) grad Q(zeta)|) at zeta = xi + i sigma omega.
double exceptional_residual(const ExactPoly& q, double lambda, const ExceptionalPoint& p);

ExceptionalSet radial_exceptional(const RadialForm& form, double lambda);
std::vector<ExceptionalPoint> generic_exceptional(const ExactPoly& q, double lambda, const SolverConfig& cfg = {});

struct CtBound {
  double value = 0;
  bool in_range = false;
  /// Final bisection bracket (generic path); equal endpoints for closed forms.
  double lo = 0;
  double hi = 0;
  std::string method;
};

CtBound ct_bound(const RadialForm& form, double lambda);
CtBound ct_bound(const ExactPoly& q, double lambda, const SolverConfig& cfg = {});

/// Is there (omega, xi) with Q(xi + i sigma omega) = lambda?
bool ct_feasible(const ExactPoly& q, double lambda, double sigma, const SolverConfig& cfg);

struct SpectrumGeometry {
  std::vector<double> critical_values;  // sorted ascending
  std::optional<double> range_min;
  std::optional<double> range_max;
  bool certified = false;
};

SpectrumGeometry spectrum_geometry(const RadialForm& form);
SpectrumGeometry spectrum_geometry(const ExactPoly& q, const SolverConfig& cfg = {});

/// Exact membership tests for radial forms.
bool radial_in_range(const RadialForm& form, double lambda);
bool radial_is_critical(const RadialForm& form, double lambda);

struct StationaryResult {
  bool solvable = false;
  double best_residual = 0;
  std::vector<double> omega;
  std::vector<double> xi;
  std::string method;
  /// Multiple zero of G0 - lambda used by the radial shortcut.
  std::optional<std::complex<double>> z0;
};

/// Q(zeta) = lambda and grad Q(zeta) = 0 with zeta = xi + i sigma omega.
StationaryResult stationary_check(const RadialForm& form, double lambda, double sigma);
StationaryResult stationary_check(const ExactPoly& q, double lambda, double sigma, const SolverConfig& cfg = {});

/// Residual of the full stationary system at a point.
double stationary_residual(const ExactPoly& q, double lambda, double sigma, const std::vector<double>& omega,
                           const std::vector<double>& xi);

// ---- conjugated symbols ---------------------------------------------------

struct Weight {
  enum class Kind { r1, r_eps };
  Kind kind = Kind::r1;
  double eps = 0.5;

  static Weight r1() { return {}; }
  static Weight r_eps(double e);

  double value(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;
  /// Row-major d x d Hessian.
  std::vector<double> hessian(const std::vector<double>& x) const;
};

class ConjugatedSymbol {
 public:
  ConjugatedSymbol(const ExactPoly& q, double lambda, double sigma, Weight w);

  int dim() const { return q_.dim(); }
  double sigma() const { return sigma_; }
  double lambda() const { return lambda_; }
  const Weight& weight() const { return w_; }

  /// X + i Y = Q(xi + i sigma grad r(x)) - lambda.
  std::complex<double> XY(const std::vector<double>& x, const std::vector<double>& xi) const;
  /// grad_xi Q at xi + i sigma grad r(x).
  std::vector<std::complex<double>> grad_at(const std::vector<double>& x, const std::vector<double>& xi) const;

  const FloatPoly& q() const { return q_; }
  const std::vector<FloatPoly>& grad() const { return grad_; }

 private:
  FloatPoly q_;
  std::vector<FloatPoly> grad_;
  double lambda_;
  double sigma_;
  Weight w_;
};

struct XYValue {
  double X = 0;
  double Y = 0;
};

XYValue conjugated_XY(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi);

/// {X, Y} = sigma (d_xi X H d_xi X^T + d_xi Y H d_xi Y^T), H the Hessian of the weight.
double bracket_XY(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi);

/// Central-difference Poisson bracket sum_j (d_xi_j X d_x_j Y - d_x_j X d_xi_j Y).
double bracket_XY_fd(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi,
                     double h = 1e-5);

struct FlowRhs {
  std::vector<double> d_omega;
  std::vector<double> d_xi;
  double norm() const;
};

FlowRhs flow_rhs(const ExactPoly& q, double sigma, const std::vector<double>& omega, const std::vector<double>& xi);

// ---- theorem report --------------------------------------------------------

/// Declared decay of the potential V = V1 + V2: |d^alpha V1| = O(|x|^{-v1[|alpha|]})
/// and |V2| = O(|x|^{-v2}). Orders beyond v1.size() gain one power per derivative.
/// `little_o` upgrades every declared bound from O to o.
struct PotentialClass {
  bool compact_support = false;
  std::vector<double> v1{0.0};
  double v2 = 0;
  bool little_o = false;
  /// The delta used when printing the absence-of-super-exponential-decay thresholds.
  double delta = 1.0;

  double v1_exponent(int order) const;
  double v2_exponent() const;
};

struct TheoremCheck {
  std::string name;
  bool applies = false;
  std::string requirement;
  std::string note;
};

struct TheoremReport {
  double lambda = 0;
  int degree = 0;
  bool lambda_in_range = false;
  bool lambda_critical = false;
  ExceptionalSet sigma_exc;
  CtBound ct;
  bool stationary_solvable = false;
  double stationary_residual = 0;
  PotentialClass potential;
  std::vector<TheoremCheck> applicable;
  std::string refined_branch;
  bool heuristic = false;
};

TheoremReport theorem_report(const RadialForm& form, double lambda, const PotentialClass& pc);
TheoremReport theorem_report(const ExactPoly& q, double lambda, const PotentialClass& pc,
                             const SolverConfig& cfg = {});

}  // namespace ellipdecay
