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

#include <cmath>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/spectra.hpp"

namespace ellipdecay {

namespace {

using cd = std::complex<double>;

double japanese(const std::vector<double>& x) {
  double s = 1;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Weight Weight::r_eps(double e) {
  if (!(e > 0 && e < 1)) throw ValidationError("r_eps requires 0 < eps < 1");
  Weight w;
  w.kind = Kind::r_eps;
  w.eps = e;
  return w;
}

double Weight::value(const std::vector<double>& x) const {
  const double rho = japanese(x);
  return kind == Kind::r1 ? rho : rho - std::pow(rho, 1 - eps) + 1;
}

std::vector<double> Weight::gradient(const std::vector<double>& x) const {
  const double rho = japanese(x);
  const double f1 = kind == Kind::r1 ? 1.0 : 1 - (1 - eps) * std::pow(rho, -eps);
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = f1 * x[j] / rho;
  return g;
}

std::vector<double> Weight::hessian(const std::vector<double>& x) const {
  // r = phi(rho): Hess r = phi'' grad rho grad rho^T + phi' Hess rho
  const double rho = japanese(x);
  const std::size_t d = x.size();
  double f1 = 1, f2 = 0;
  if (kind == Kind::r_eps) {
    f1 = 1 - (1 - eps) * std::pow(rho, -eps);
    f2 = eps * (1 - eps) * std::pow(rho, -1 - eps);
  }
  std::vector<double> h(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const double gj = x[j] / rho, gk = x[k] / rho;
      const double hess_rho = ((j == k ? 1.0 : 0.0) - gj * gk) / rho;
      h[j * d + k] = f2 * gj * gk + f1 * hess_rho;
    }
  return h;
}

ConjugatedSymbol::ConjugatedSymbol(const ExactPoly& q, double lambda, double sigma, Weight w)
    : q_(to_float(q)), lambda_(lambda), sigma_(sigma), w_(w) {
  if (!q.is_real()) throw ValidationError("symbol must have real coefficients");
  if (sigma < 0) throw ValidationError("sigma must be nonnegative");
  grad_ = gradient(q_);
}

namespace {

std::vector<cd> conjugated_point(const ConjugatedSymbol& cs, const std::vector<double>& x,
                                 const std::vector<double>& xi) {
  if (static_cast<int>(x.size()) != cs.dim() || static_cast<int>(xi.size()) != cs.dim())
    throw ValidationError("phase-space point has wrong dimension");
  auto w = cs.weight().gradient(x);
  std::vector<cd> z(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) z[j] = {xi[j], cs.sigma() * w[j]};
  return z;
}

}  // namespace

std::complex<double> ConjugatedSymbol::XY(const std::vector<double>& x, const std::vector<double>& xi) const {
  return q_(conjugated_point(*this, x, xi)) - lambda_;
}

std::vector<std::complex<double>> ConjugatedSymbol::grad_at(const std::vector<double>& x,
                                                             const std::vector<double>& xi) const {
  auto z = conjugated_point(*this, x, xi);
  std::vector<cd> g;
  for (const auto& p : grad_) g.push_back(p(z));
  return g;
}

XYValue conjugated_XY(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi) {
  cd v = cs.XY(x, xi);
  return {v.real(), v.imag()};
}

double bracket_XY(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi) {
  auto g = cs.grad_at(x, xi);
  auto h = cs.weight().hessian(x);
  const std::size_t d = g.size();
  double re = 0, im = 0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      re += g[j].real() * h[j * d + k] * g[k].real();
      im += g[j].imag() * h[j * d + k] * g[k].imag();
    }
  return cs.sigma() * (re + im);
}

double bracket_XY_fd(const ConjugatedSymbol& cs, const std::vector<double>& x, const std::vector<double>& xi,
                     double h) {
  const std::size_t d = x.size();
  double sum = 0;
  for (std::size_t j = 0; j < d; ++j) {
    auto xp = x, xm = x, kp = xi, km = xi;
    xp[j] += h;
    xm[j] -= h;
    kp[j] += h;
    km[j] -= h;
    cd dx = (cs.XY(xp, xi) - cs.XY(xm, xi)) / (2 * h);
    cd dk = (cs.XY(x, kp) - cs.XY(x, km)) / (2 * h);
    sum += dk.real() * dx.imag() - dx.real() * dk.imag();
  }
  return sum;
}

double FlowRhs::norm() const {
  double s = 0;
  for (double v : d_omega) s += v * v;
  for (double v : d_xi) s += v * v;
  return std::sqrt(s);
}

FlowRhs flow_rhs(const ExactPoly& q, double sigma, const std::vector<double>& omega, const std::vector<double>& xi) {
  if (!(sigma > 0)) throw ValidationError("flow requires sigma > 0");
  const std::size_t d = omega.size();
  if (static_cast<int>(d) != q.dim() || xi.size() != d) throw ValidationError("flow point has wrong dimension");
  double n2 = 0;
  for (double w : omega) n2 += w * w;
  if (std::abs(std::sqrt(n2) - 1) > 1e-12) throw ValidationError("omega is not a unit vector");
  std::vector<cd> z(d);
  for (std::size_t j = 0; j < d; ++j) z[j] = {xi[j], sigma * omega[j]};
  FloatPoly fq = to_float(q);
  std::vector<cd> g;
  for (int j = 0; j < q.dim(); ++j) g.push_back(fq.derivative(j)(z));
  // dX/dxi = Re grad Q, dY/dxi = Im grad Q
  double pr = 0, pi = 0;
  for (std::size_t j = 0; j < d; ++j) {
    pr += omega[j] * g[j].real();
    pi += omega[j] * g[j].imag();
  }
  FlowRhs out;
  for (std::size_t j = 0; j < d; ++j) {
    out.d_omega.push_back(g[j].real() - pr * omega[j]);
    out.d_xi.push_back(sigma * (g[j].imag() - pi * omega[j]));
  }
  return out;
}

}  // namespace ellipdecay
