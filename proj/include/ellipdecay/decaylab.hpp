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
#include <optional>
#include <string>
#include <vector>

#include "ellipdecay/unipoly.hpp"

namespace ellipdecay {

using real_t = long double;
using cplx_t = std::complex<long double>;

/// Periodic grid on [-L, L) with N nodes.
struct Grid1D {
  Grid1D() = default;
  Grid1D(real_t half_length, int points);

  real_t L = 0;
  int N = 0;
  real_t h = 0;

  real_t x(int n) const { return -L + static_cast<real_t>(n) * h; }
  real_t nyquist() const;
  /// Angular wavenumber of FFT slot m (standard FFT ordering).
  real_t wavenumber(int m) const;
};

struct FieldSample {
  FieldSample() = default;
  explicit FieldSample(Grid1D g) : grid(g), values(static_cast<std::size_t>(g.N)) {}
  Grid1D grid;
  std::vector<cplx_t> values;

  real_t norm() const;  // sqrt(h sum |v|^2)
  real_t max_abs() const;
  real_t max_imag() const;
  std::vector<real_t> real_part() const;
};

/// Reentrant in-place-free FFT of length n (forward: sum v_n e^{-2 pi i m n / N}, unnormalized).
std::vector<cplx_t> fft(const std::vector<cplx_t>& v, bool inverse = false);

/// Re[(i / 2k) e^{ik|x|}] with k the root of z0 in the upper half plane.
FieldSample resolvent_profile(std::complex<double> z0, const Grid1D& grid);
real_t resolvent_value(std::complex<double> z0, real_t x);

/// Largest Fourier amplitude in the top quarter of the band, relative to the peak.
real_t spectral_tail(const FieldSample& field);
/// G0(-d^2/dx^2) applied mode by mode. Throws ValidationError if check_tail and the
/// tail ratio exceeds 1e-12.
FieldSample spectral_apply(const UniPoly& g0, const FieldSample& field, bool check_tail = true);

/// exp(-1/t^2) glue: 1 for r <= a, 0 for r >= b, smooth in between.
real_t smooth_cutoff(real_t r, real_t a, real_t b);

/// Radius intervals (a, b) on which the profile for z0 is positive, up to x_max.
std::vector<std::pair<double, double>> positivity_windows(std::complex<double> z0, double x_max);
/// Cutoff radius with both transition radii R/2, 3R/4 inside a positivity window,
/// preferring the widest transition; requires e^{-Im k (L - R)} < 1e-10.
double auto_radius(std::complex<double> z0, double L);

struct PotentialBuild {
  FieldSample phi;
  FieldSample V;
  double R = 0;
  std::complex<double> z0;
  std::complex<double> k;
  double cutoff_inner = 0;  // R/2
  double cutoff_outer = 0;  // 3R/4
  double residual = 0;      // ||(G0(-D)+V-lambda) phi|| / ||phi||
  double max_imag_V = 0;
};

/// phi = chi + (1 - chi) phi~, V = -(G0(-D) phi - lambda phi) / phi on |x| <= 3R/4 and 0 outside.
/// A nonpositive R selects auto_radius.
PotentialBuild build_potential(const UniPoly& g0, double lambda, std::complex<double> z0, double R, const Grid1D& grid);

struct EigenOptions {
  int block = 3;
  int max_iterations = 60;
  double tol = 1e-9;      // iterate until below, or until the residual stagnates
  double accept = 1e-8;   // then require this
  int gmres_restart = 60;
  int gmres_max = 2000;
  double gmres_tol = 1e-14;
  double degeneracy = 1e-6;
};

struct EigenResult {
  double lambda_num = 0;
  FieldSample phi;
  double residual = 0;
  int iterations = 0;
  bool degenerate = false;
  std::vector<double> ritz;
};

/// Block shift-invert iteration with Rayleigh-Ritz; linear solves by GMRES with the
/// Fourier-diagonal preconditioner (G0(xi^2) - shift + i reg)^{-1}. Returns the pair
/// nearest to the shift. Throws ConvergenceError when no Ritz value is within
/// 0.05 (1 + |shift|) of the shift or the final residual exceeds opt.accept.
EigenResult eigen_solve(const UniPoly& g0, const FieldSample& V, double shift, const EigenOptions& opt = {});

struct DecayFit {
  enum class Mode { plain, r_eps };
  double sigma_hat = 0;
  Mode mode = Mode::plain;
  double eps = 0;
  double x_lo = 0, x_hi = 0;
  double rsq = 0;
  int points = 0;
  bool oscillatory = false;
};

/// Least-squares slope of log|phi| against -|x| (plain) or -(<x> - <x>^{1-eps}) on the
/// signed window [x_lo, x_hi], which must satisfy 0.2 L <= |x| <= 0.6 L. Sign-changing
/// samples are fitted on the envelope phi(x)^2 - phi(x-d) phi(x+d) (rate halved), with d
/// a quarter of the observed period.
DecayFit fit_decay(const FieldSample& phi, double x_lo, double x_hi, DecayFit::Mode mode = DecayFit::Mode::plain,
                   double eps = 0.5);

std::string to_string(DecayFit::Mode m);

struct LabConfig {
  int root_index = 0;
  double R = 0;  // 0: automatic
  double L = 40;
  int N = 4096;
  std::optional<double> eps;
  EigenOptions eigen;
};

struct LabResult {
  double lambda = 0;
  std::complex<double> z0;
  double R = 0;
  double build_residual = 0;
  double V_max = 0;
  double V_support = 0;  // largest |x| with V != 0
  EigenResult eigen;
  DecayFit fit_right, fit_left;
  std::optional<DecayFit> fit_reps;
  double sigma_hat = 0;
  double sigma_predicted = 0;
  double relative_error = 0;
  FieldSample V;
};

/// Zeros of G0 - lambda usable as z0: off [0, inf), one per conjugate pair (Im z0 >= 0),
/// ordered by Im sqrt(z0) then Re z0.
std::vector<std::complex<double>> lab_roots(const UniPoly& g0, double lambda);

LabResult run_lab(const UniPoly& g0, double lambda, const LabConfig& cfg = {});

/// "x,abs_phi,V" rows.
std::string lab_csv(const LabResult& r);

}  // namespace ellipdecay
