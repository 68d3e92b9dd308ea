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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/parallel.hpp"
#include "ellipdecay/polyalg.hpp"
#include "ellipdecay/roots.hpp"
#include "ellipdecay/spectra.hpp"

namespace ellipdecay {

namespace {

using cd = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Q with gradient and Hessian, evaluated at complex points.
struct Jet {
  explicit Jet(const ExactPoly& exact) : q(to_float(exact)), d(exact.dim()) {
    for (int j = 0; j < d; ++j) g.push_back(q.derivative(j));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) h.push_back(g[static_cast<std::size_t>(j)].derivative(k));
  }

  struct Value {
    cd q;
    VectorXcd g;
    Eigen::MatrixXcd h;
  };

  Value operator()(const VectorXcd& z, bool with_hessian = true) const {
    std::vector<cd> pt(z.data(), z.data() + z.size());
    Value v{q(pt), VectorXcd(d), Eigen::MatrixXcd(d, d)};
    for (int j = 0; j < d; ++j) v.g[j] = g[static_cast<std::size_t>(j)](pt);
    if (with_hessian)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) v.h(j, k) = h[static_cast<std::size_t>(j * d + k)](pt);
    return v;
  }

  FloatPoly q;
  int d;
  std::vector<FloatPoly> g;
  std::vector<FloatPoly> h;
};

/// Orthonormal basis (columns) of the complement of a unit vector.
MatrixXd tangent_basis(const VectorXd& omega) {
  const auto d = omega.size();
  Eigen::HouseholderQR<MatrixXd> qr(omega);
  MatrixXd full = qr.householderQ() * MatrixXd::Identity(d, d);
  return full.rightCols(d - 1);
}

VectorXcd zeta_of(const VectorXd& xi, double sigma, const VectorXd& omega) {
  return xi.cast<cd>() + cd(0, sigma) * omega.cast<cd>();
}

/// Appends real and imaginary parts of a complex row block.
void put_complex_row(MatrixXd& J, VectorXd& r, int row, const Eigen::RowVectorXcd& jac, cd value) {
  J.row(row) = jac.real();
  J.row(row + 1) = jac.imag();
  r[row] = value.real();
  r[row + 1] = value.imag();
}

std::mt19937_64 start_rng(std::uint64_t seed, int index, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

VectorXd random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  VectorXd v(d);
  do {
    for (int j = 0; j < d; ++j) v[j] = n(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

double xi_scale(double lambda, int degree, int index) {
  static constexpr double kScales[3] = {0.5, 1.0, 2.0};
  double base = lambda == 0 ? 1.0 : std::pow(std::abs(lambda), 1.0 / std::max(degree, 1));
  return base * kScales[index % 3];
}

double projected_norm(const VectorXcd& g, const VectorXd& omega) {
  return (g - omega.cast<cd>() * omega.cast<cd>().dot(g)).norm();
}

struct NewtonState {
  VectorXd xi;
  VectorXd omega;
  double s = 0;  // log sigma
};

/// Damped Gauss-Newton with minimum-norm steps. `system` fills (J, r) for a state;
/// `apply` produces a trial state from a step. Returns the final residual norm.
template <class System, class Apply>
double gauss_newton(NewtonState& st, int max_iterations, double stop, const System& system, const Apply& apply) {
  MatrixXd J;
  VectorXd r;
  system(st, J, r);
  double norm = r.norm();
  for (int it = 0; it < max_iterations && norm > stop; ++it) {
    VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) break;
    bool accepted = false;
    for (double a = 1.0; a > 1e-4; a *= 0.5) {
      NewtonState trial = apply(st, step * a);
      MatrixXd Jt;
      VectorXd rt;
      system(trial, Jt, rt);
      if (rt.allFinite() && rt.norm() < norm) {
        st = std::move(trial);
        J = std::move(Jt);
        r = std::move(rt);
        norm = r.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return norm;
}

NewtonState tangent_update(const NewtonState& st, const VectorXd& step, bool has_s) {
  const auto d = st.xi.size();
  NewtonState out = st;
  out.xi += step.head(d);
  if (d > 1) {
    VectorXd w = st.omega + tangent_basis(st.omega) * step.segment(d, d - 1);
    out.omega = w / w.norm();
  }
  if (has_s) out.s += std::clamp(step[step.size() - 1], -2.0, 2.0);
  return out;
}

}  // namespace

std::string to_string(ExceptionalSet::Source s) {
  return s == ExceptionalSet::Source::radial_exact ? "radial_exact" : "generic_numeric";
}

double real_axis_tolerance(std::complex<double> zeta) { return 1e-10 * (1 + std::abs(zeta)); }

double exceptional_residual(const ExactPoly& q, double lambda, const ExceptionalPoint& p) {
  Jet jet(q);
  VectorXd xi = Eigen::Map<const VectorXd>(p.xi.data(), static_cast<Eigen::Index>(p.xi.size()));
  VectorXd om = Eigen::Map<const VectorXd>(p.omega.data(), static_cast<Eigen::Index>(p.omega.size()));
  auto v = jet(zeta_of(xi, p.sigma, om), false);
  return std::max(std::abs(v.q - lambda), projected_norm(v.g, om));
}

// ---- radial ------------------------------------------------------------------

namespace {

UniPoly shifted(const UniPoly& g0, double lambda) { return g0 - UniPoly::constant(rational_from_double(lambda)); }

}  // namespace

ExceptionalSet radial_exceptional(const RadialForm& form, double lambda) {
  UniPoly G = shifted(form.g0(), lambda);
  if (G.degree() < 1) throw ValidationError("G0 - lambda is constant");
  ExceptionalSet out;
  out.lambda = lambda;
  out.dim = form.dim();
  out.source = ExceptionalSet::Source::radial_exact;
  const ExactPoly q = form.expand();
  for (const auto& root : distinct_roots(G)) {
    cd k = upper_sqrt(root.z);
    if (k.imag() > real_axis_tolerance(k)) {
      ExceptionalPoint p;
      p.sigma = k.imag();
      p.omega.assign(static_cast<std::size_t>(form.dim()), 0.0);
      p.omega[0] = 1.0;
      p.xi.assign(static_cast<std::size_t>(form.dim()), 0.0);
      p.xi[0] = k.real();
      p.residual = exceptional_residual(q, lambda, p);
      out.discrete.push_back(std::move(p));
    } else {
      out.boundary.push_back(k);
    }
    if (root.multiplicity >= 2 && form.dim() >= 2)
      out.continua.push_back({std::max(0.0, k.imag()), root.z, root.multiplicity, false});
  }
  std::sort(out.discrete.begin(), out.discrete.end(), [](const auto& a, const auto& b) {
    return a.sigma != b.sigma ? a.sigma < b.sigma : a.residual < b.residual;
  });
  // conjugate zeros give the same sigma
  std::vector<ExceptionalPoint> merged;
  for (auto& p : out.discrete) {
    if (!merged.empty() && std::abs(p.sigma - merged.back().sigma) <= 1e-12 * p.sigma) continue;
    merged.push_back(std::move(p));
  }
  out.discrete = std::move(merged);
  std::sort(out.continua.begin(), out.continua.end(),
            [](const Continuum& a, const Continuum& b) { return a.sigma_lo < b.sigma_lo; });
  return out;
}

// ---- generic solver ------------------------------------------------------------

namespace {

std::optional<ExceptionalPoint> exceptional_from_start(const Jet& jet, double lambda, const SolverConfig& cfg,
                                                       int index, int degree) {
  const int d = jet.d;
  auto rng = start_rng(cfg.seed, index, 1);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  NewtonState st;
  const double scale = xi_scale(lambda, degree, index);
  st.xi = VectorXd(d);
  for (int j = 0; j < d; ++j) st.xi[j] = scale * normal(rng);
  st.omega = random_unit(rng, d);
  st.s = unif(rng) * std::log(10.0);

  auto system = [&](const NewtonState& x, MatrixXd& J, VectorXd& r) {
    const double sigma = std::exp(x.s);
    auto v = jet(zeta_of(x.xi, sigma, x.omega));
    const cd isg(0, sigma);
    const int rows = 2 * d;
    J.setZero(rows, 2 * d);
    r.setZero(rows);
    MatrixXd T = d > 1 ? tangent_basis(x.omega) : MatrixXd(d, 0);
    VectorXcd om = x.omega.cast<cd>();
    Eigen::RowVectorXcd row(2 * d);
    row.head(d) = v.g.transpose();
    for (int j = 0; j < d - 1; ++j) row[d + j] = isg * T.col(j).cast<cd>().dot(v.g);
    row[2 * d - 1] = isg * om.dot(v.g);
    put_complex_row(J, r, 0, row, v.q - lambda);
    for (int i = 0; i < d - 1; ++i) {
      VectorXcd ti = T.col(i).cast<cd>();
      row.head(d) = (v.h * ti).transpose();
      for (int j = 0; j < d - 1; ++j)
        row[d + j] = (i == j ? -om.dot(v.g) : cd(0)) + isg * ti.dot(v.h * T.col(j).cast<cd>());
      row[2 * d - 1] = isg * ti.dot(v.h * om);
      put_complex_row(J, r, 2 + 2 * i, row, ti.dot(v.g));
    }
  };
  auto apply = [&](const NewtonState& x, const VectorXd& step) { return tangent_update(x, step, true); };
  gauss_newton(st, cfg.max_iterations, 1e-14 * (1 + std::abs(lambda)), system, apply);

  ExceptionalPoint p;
  p.sigma = std::exp(st.s);
  if (!(p.sigma > cfg.sigma_min) || !std::isfinite(p.sigma)) return std::nullopt;
  p.omega.assign(st.omega.data(), st.omega.data() + d);
  p.xi.assign(st.xi.data(), st.xi.data() + d);
  auto v = jet(zeta_of(st.xi, p.sigma, st.omega), false);
  p.residual = std::max(std::abs(v.q - lambda), projected_norm(v.g, st.omega));
  if (!(p.residual < cfg.tol)) return std::nullopt;
  return p;
}

void require_elliptic(const ExactPoly& q) {
  if (q.is_zero()) throw ValidationError("zero polynomial");
  if (!q.is_real()) throw ValidationError("symbol must have real coefficients");
  if (is_elliptic(q).kind == Ellipticity::Kind::fail) throw ValidationError("symbol is not elliptic");
}

}  // namespace

std::vector<ExceptionalPoint> generic_exceptional(const ExactPoly& q, double lambda, const SolverConfig& cfg) {
  require_elliptic(q);
  Jet jet(q);
  const int degree = *q.degree();
  std::vector<std::optional<ExceptionalPoint>> slots(static_cast<std::size_t>(cfg.starts));
  parallel_for(cfg.starts, cfg.threads, [&](int i) {
    slots[static_cast<std::size_t>(i)] = exceptional_from_start(jet, lambda, cfg, i, degree);
  });
  std::vector<ExceptionalPoint> found;
  for (auto& s : slots)
    if (s) found.push_back(std::move(*s));
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.sigma != b.sigma ? a.sigma < b.sigma : a.residual < b.residual;
  });
  std::vector<ExceptionalPoint> out;
  double anchor = -1;
  for (auto& p : found) {
    if (!out.empty() && p.sigma <= anchor * (1 + 1e-6)) {
      if (p.residual < out.back().residual) out.back() = p;
      continue;
    }
    anchor = p.sigma;
    out.push_back(std::move(p));
  }
  return out;
}

// ---- Combes-Thomas bound -------------------------------------------------------

CtBound ct_bound(const RadialForm& form, double lambda) {
  UniPoly G = shifted(form.g0(), lambda);
  if (G.degree() < 1) throw ValidationError("G0 - lambda is constant");
  CtBound out;
  out.method = "radial_closed_form";
  double best = std::numeric_limits<double>::infinity();
  for (const auto& root : distinct_roots(G)) {
    cd k = upper_sqrt(root.z);
    best = std::min(best, k.imag() > real_axis_tolerance(k) ? k.imag() : 0.0);
  }
  out.value = out.lo = out.hi = best;
  out.in_range = best == 0.0;
  return out;
}

bool ct_feasible(const ExactPoly& q, double lambda, double sigma, const SolverConfig& cfg) {
  Jet jet(q);
  const int d = q.dim();
  const int degree = q.degree_or(1);
  const double accept = 1e-10 * (1 + std::abs(lambda));
  std::vector<char> ok(static_cast<std::size_t>(cfg.feasibility_starts), 0);
  parallel_for(cfg.feasibility_starts, cfg.threads, [&](int i) {
    auto rng = start_rng(cfg.seed, i, 2);
    std::normal_distribution<double> normal;
    NewtonState st;
    st.xi = VectorXd(d);
    const double scale = xi_scale(lambda, degree, i);
    for (int j = 0; j < d; ++j) st.xi[j] = scale * normal(rng);
    st.omega = random_unit(rng, d);
    auto system = [&](const NewtonState& x, MatrixXd& J, VectorXd& r) {
      auto v = jet(zeta_of(x.xi, sigma, x.omega), false);
      J.setZero(2, 2 * d - 1);
      r.setZero(2);
      Eigen::RowVectorXcd row(2 * d - 1);
      row.head(d) = v.g.transpose();
      if (d > 1) {
        MatrixXd T = tangent_basis(x.omega);
        for (int j = 0; j < d - 1; ++j) row[d + j] = cd(0, sigma) * T.col(j).cast<cd>().dot(v.g);
      }
      put_complex_row(J, r, 0, row, v.q - lambda);
    };
    auto apply = [&](const NewtonState& x, const VectorXd& step) { return tangent_update(x, step, false); };
    double res = gauss_newton(st, 4 * cfg.max_iterations, 1e-3 * accept, system, apply);
    ok[static_cast<std::size_t>(i)] = res < accept;
  });
  return std::any_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

CtBound ct_bound(const ExactPoly& q, double lambda, const SolverConfig& cfg) {
  require_elliptic(q);
  CtBound out;
  if (q.dim() == 1) {
    // zeta = xi +- i sigma ranges over all of C: the bound is the least |Im| of a zero
    std::vector<cd> c(static_cast<std::size_t>(*q.degree()) + 1);
    for (const auto& [a, v] : q.terms()) c[static_cast<std::size_t>(a[0])] = v.to_complex();
    c[0] -= lambda;
    double best = std::numeric_limits<double>::infinity();
    for (cd z : polynomial_roots(c)) best = std::min(best, std::abs(z.imag()) > real_axis_tolerance(z) ? std::abs(z.imag()) : 0.0);
    out.value = out.lo = out.hi = best;
    out.in_range = best == 0.0;
    out.method = "univariate_roots";
    return out;
  }
  out.method = "bisection";
  if (ct_feasible(q, lambda, 0.0, cfg)) {
    out.in_range = true;
    return out;
  }
  double lo = 0, hi = 0;
  for (double s = 1e-2; s <= cfg.sigma_max; s *= 2) {
    if (ct_feasible(q, lambda, s, cfg)) {
      hi = s;
      break;
    }
    lo = s;
  }
  if (hi == 0) throw ConvergenceError("no feasible sigma found below sigma_max");
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    (ct_feasible(q, lambda, mid, cfg) ? hi : lo) = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

// ---- critical values -----------------------------------------------------------

namespace {

void push_unique(std::vector<double>& values, double v) {
  for (double w : values)
    if (std::abs(w - v) <= 1e-9 * (1 + std::abs(v))) return;
  values.push_back(v);
}

}  // namespace

SpectrumGeometry spectrum_geometry(const RadialForm& form) {
  SpectrumGeometry out;
  out.certified = true;
  const UniPoly& g0 = form.g0();
  std::vector<double> values{g0(0.0)};
  UniPoly dg = g0.derivative();
  if (dg.degree() >= 1)
    for (const auto& r : distinct_roots(dg))
      if (std::abs(r.z.imag()) <= real_axis_tolerance(r.z) && r.z.real() > 0) push_unique(values, g0(r.z.real()));
  std::sort(values.begin(), values.end());
  out.critical_values = values;
  if (sgn(g0.leading()) > 0)
    out.range_min = values.front();
  else
    out.range_max = values.back();
  return out;
}

SpectrumGeometry spectrum_geometry(const ExactPoly& q, const SolverConfig& cfg) {
  require_elliptic(q);
  Jet jet(q);
  const int d = q.dim();
  const int degree = *q.degree();
  std::vector<std::optional<double>> slots(static_cast<std::size_t>(cfg.starts));
  parallel_for(cfg.starts, cfg.threads, [&](int i) {
    auto rng = start_rng(cfg.seed, i, 3);
    std::normal_distribution<double> normal;
    NewtonState st;
    st.xi = VectorXd(d);
    for (int j = 0; j < d; ++j) st.xi[j] = xi_scale(0, degree, i) * normal(rng);
    auto system = [&](const NewtonState& x, MatrixXd& J, VectorXd& r) {
      auto v = jet(x.xi.cast<cd>());
      J = v.h.real();
      r = v.g.real();
    };
    auto apply = [&](const NewtonState& x, const VectorXd& step) {
      NewtonState o = x;
      o.xi += step;
      return o;
    };
    double res = gauss_newton(st, cfg.max_iterations, 1e-14, system, apply);
    if (res < cfg.tol) slots[static_cast<std::size_t>(i)] = jet(st.xi.cast<cd>(), false).q.real();
  });
  std::vector<double> values;
  for (auto& s : slots)
    if (s) push_unique(values, *s);
  std::sort(values.begin(), values.end());
  SpectrumGeometry out;
  out.critical_values = values;
  out.certified = false;
  if (!values.empty()) {
    std::vector<cd> probe(static_cast<std::size_t>(d), cd(1.0 / std::sqrt(static_cast<double>(d))));
    double lead = to_float(q.homogeneous_part(degree))(probe).real();
    if (lead > 0)
      out.range_min = values.front();
    else
      out.range_max = values.back();
  }
  return out;
}

bool radial_in_range(const RadialForm& form, double lambda) { return ct_bound(form, lambda).in_range; }

bool radial_is_critical(const RadialForm& form, double lambda) {
  const UniPoly& g0 = form.g0();
  const Rational lam = rational_from_double(lambda);
  if (g0(Rational(0)) == lam) return true;
  UniPoly G = g0 - UniPoly::constant(lam);
  UniPoly common = gcd(G, g0.derivative());
  if (common.degree() < 1) return false;
  for (const auto& r : distinct_roots(common))
    if (std::abs(r.z.imag()) <= real_axis_tolerance(r.z) && r.z.real() > 0) return true;
  return false;
}

// ---- stationary system -----------------------------------------------------------

double stationary_residual(const ExactPoly& q, double lambda, double sigma, const std::vector<double>& omega,
                           const std::vector<double>& xi) {
  Jet jet(q);
  VectorXd x = Eigen::Map<const VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  VectorXd w = Eigen::Map<const VectorXd>(omega.data(), static_cast<Eigen::Index>(omega.size()));
  auto v = jet(zeta_of(x, sigma, w), false);
  return std::max(std::abs(v.q - lambda), v.g.norm());
}

StationaryResult stationary_check(const ExactPoly& q, double lambda, double sigma, const SolverConfig& cfg) {
  if (!(sigma > 0)) throw ValidationError("stationary_check requires sigma > 0");
  Jet jet(q);
  const int d = q.dim();
  const int degree = q.degree_or(1);
  struct Best {
    double res = std::numeric_limits<double>::infinity();
    NewtonState st;
  };
  std::vector<Best> slots(static_cast<std::size_t>(cfg.feasibility_starts));
  parallel_for(cfg.feasibility_starts, cfg.threads, [&](int i) {
    auto rng = start_rng(cfg.seed, i, 4);
    std::normal_distribution<double> normal;
    NewtonState st;
    st.xi = VectorXd(d);
    for (int j = 0; j < d; ++j) st.xi[j] = xi_scale(lambda, degree, i) * normal(rng);
    st.omega = random_unit(rng, d);
    auto system = [&](const NewtonState& x, MatrixXd& J, VectorXd& r) {
      auto v = jet(zeta_of(x.xi, sigma, x.omega));
      const int cols = 2 * d - 1;
      J.setZero(2 + 2 * d, cols);
      r.setZero(2 + 2 * d);
      MatrixXd T = d > 1 ? tangent_basis(x.omega) : MatrixXd(d, 0);
      Eigen::RowVectorXcd row(cols);
      row.head(d) = v.g.transpose();
      for (int j = 0; j < d - 1; ++j) row[d + j] = cd(0, sigma) * T.col(j).cast<cd>().dot(v.g);
      put_complex_row(J, r, 0, row, v.q - lambda);
      for (int m = 0; m < d; ++m) {
        row.head(d) = v.h.row(m);
        for (int j = 0; j < d - 1; ++j) row[d + j] = cd(0, sigma) * (v.h * T.col(j).cast<cd>())[m];
        put_complex_row(J, r, 2 + 2 * m, row, v.g[m]);
      }
    };
    auto apply = [&](const NewtonState& x, const VectorXd& step) { return tangent_update(x, step, false); };
    gauss_newton(st, 2 * cfg.max_iterations, 1e-15, system, apply);
    auto v = jet(zeta_of(st.xi, sigma, st.omega), false);
    slots[static_cast<std::size_t>(i)] = {std::max(std::abs(v.q - lambda), v.g.norm()), st};
  });
  auto best = std::min_element(slots.begin(), slots.end(), [](const Best& a, const Best& b) { return a.res < b.res; });
  StationaryResult out;
  out.method = "least_squares_multistart";
  out.best_residual = best->res;
  out.solvable = best->res < 1e-8;
  out.omega.assign(best->st.omega.data(), best->st.omega.data() + d);
  out.xi.assign(best->st.xi.data(), best->st.xi.data() + d);
  return out;
}

StationaryResult stationary_check(const RadialForm& form, double lambda, double sigma) {
  if (!(sigma > 0)) throw ValidationError("stationary_check requires sigma > 0");
  UniPoly G = shifted(form.g0(), lambda);
  UniPoly common = gcd(G, G.derivative());
  const ExactPoly q = form.expand();
  const int d = form.dim();
  if (common.degree() >= 1) {
    // zeta.zeta = z0 with zeta = xi + i sigma omega; G0'(z0) = 0 kills the gradient
    for (const auto& root : distinct_roots(common)) {
      cd k = upper_sqrt(root.z);
      const double t = k.imag(), s = k.real();
      const bool compatible = d >= 2 ? sigma >= t * (1 - 1e-12) : std::abs(sigma - t) <= 1e-12 * (1 + t);
      if (!compatible) continue;
      const double along = s * t / sigma;
      const double across2 = sigma * sigma + s * s - t * t - along * along;
      StationaryResult out;
      out.method = "radial_multiple_zero";
      out.z0 = root.z;
      out.omega.assign(static_cast<std::size_t>(d), 0.0);
      out.omega[0] = 1.0;
      out.xi.assign(static_cast<std::size_t>(d), 0.0);
      out.xi[0] = along;
      if (d >= 2) out.xi[1] = std::sqrt(std::max(across2, 0.0));
      out.best_residual = stationary_residual(q, lambda, sigma, out.omega, out.xi);
      out.solvable = out.best_residual < 1e-8;
      if (out.solvable) return out;
    }
  }
  SolverConfig cfg;
  StationaryResult out = stationary_check(q, lambda, sigma, cfg);
  out.method = "radial_no_multiple_zero";
  // G and G' share no admissible zero: the system has no solution whatever the minimizer reports
  out.solvable = false;
  return out;
}

}  // namespace ellipdecay
