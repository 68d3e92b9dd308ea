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

#include "ellipdecay/decaylab.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/roots.hpp"

namespace ellipdecay {

namespace {

using VecL = Eigen::Matrix<real_t, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<real_t, Eigen::Dynamic, Eigen::Dynamic>;

real_t to_ld(const Rational& q) {
  return static_cast<real_t>(q.get_num().get_d()) / static_cast<real_t>(q.get_den().get_d());
}

std::vector<real_t> ld_coefficients(const UniPoly& g0) {
  std::vector<real_t> c;
  for (const auto& q : g0.coefficients()) c.push_back(to_ld(q));
  return c;
}

real_t horner(const std::vector<real_t>& c, real_t z) {
  real_t v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

/// G0(xi_m^2) for every FFT slot.
std::vector<real_t> symbol_table(const UniPoly& g0, const Grid1D& g) {
  const auto c = ld_coefficients(g0);
  std::vector<real_t> out(static_cast<std::size_t>(g.N));
  for (int m = 0; m < g.N; ++m) {
    real_t xi = g.wavenumber(m);
    out[static_cast<std::size_t>(m)] = horner(c, xi * xi);
  }
  return out;
}

fftwl_plan plan_for(int n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, fftwl_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, inverse});
  if (it != cache.end()) return it->second;
  std::vector<cplx_t> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  fftwl_plan p = fftwl_plan_dft_1d(n, reinterpret_cast<fftwl_complex*>(a.data()), reinterpret_cast<fftwl_complex*>(b.data()),
                                   inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw Error("FFT plan creation failed");
  cache.emplace(std::make_pair(n, inverse), p);
  return p;
}

/// Applies a real Fourier multiplier to a real vector.
class DiagonalOp {
 public:
  DiagonalOp(std::vector<real_t> mult) : m_(std::move(mult)), n_(static_cast<int>(m_.size())) {}

  VecL apply(const VecL& v) const {
    std::vector<cplx_t> a(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) a[static_cast<std::size_t>(i)] = v[i];
    auto f = fft(a);
    for (int i = 0; i < n_; ++i) f[static_cast<std::size_t>(i)] *= m_[static_cast<std::size_t>(i)];
    auto b = fft(f, true);
    VecL out(n_);
    for (int i = 0; i < n_; ++i) out[i] = b[static_cast<std::size_t>(i)].real() / static_cast<real_t>(n_);
    return out;
  }

 private:
  std::vector<real_t> m_;
  int n_;
};

real_t wnorm(const VecL& v, real_t h) { return std::sqrt(h * v.squaredNorm()); }

/// Right-preconditioned restarted GMRES for A x = b. Returns the relative residual reached.
template <class ApplyA, class ApplyM>
real_t gmres(const ApplyA& A, const ApplyM& M, const VecL& b, VecL& x, int restart, int max_iter, real_t tol) {
  const int n = static_cast<int>(b.size());
  const real_t bnorm = b.norm();
  if (bnorm == 0) {
    x.setZero(n);
    return 0;
  }
  if (x.size() != n) x.setZero(n);
  int total = 0;
  real_t rel = 1;
  while (total < max_iter) {
    VecL r = b - A(M(x));
    real_t beta = r.norm();
    rel = beta / bnorm;
    if (rel < tol) break;
    const int m = std::min(restart, max_iter - total);
    MatL V(n, m + 1);
    MatL H = MatL::Zero(m + 1, m);
    std::vector<real_t> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
    VecL gvec = VecL::Zero(m + 1);
    gvec[0] = beta;
    V.col(0) = r / beta;
    int k = 0;
    for (; k < m; ++k) {
      VecL w = A(M(V.col(k)));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V.col(i).dot(w);
        w -= H(i, k) * V.col(i);
      }
      for (int i = 0; i <= k; ++i) {  // reorthogonalize
        real_t c = V.col(i).dot(w);
        H(i, k) += c;
        w -= c * V.col(i);
      }
      H(k + 1, k) = w.norm();
      if (H(k + 1, k) > 0) V.col(k + 1) = w / H(k + 1, k);
      for (int i = 0; i < k; ++i) {
        real_t t = cs[static_cast<std::size_t>(i)] * H(i, k) + sn[static_cast<std::size_t>(i)] * H(i + 1, k);
        H(i + 1, k) = -sn[static_cast<std::size_t>(i)] * H(i, k) + cs[static_cast<std::size_t>(i)] * H(i + 1, k);
        H(i, k) = t;
      }
      real_t den = std::hypot(H(k, k), H(k + 1, k));
      cs[static_cast<std::size_t>(k)] = H(k, k) / den;
      sn[static_cast<std::size_t>(k)] = H(k + 1, k) / den;
      H(k, k) = den;
      H(k + 1, k) = 0;
      gvec[k + 1] = -sn[static_cast<std::size_t>(k)] * gvec[k];
      gvec[k] = cs[static_cast<std::size_t>(k)] * gvec[k];
      ++total;
      if (std::abs(gvec[k + 1]) / bnorm < tol || H(k, k) == 0) {
        ++k;
        break;
      }
    }
    VecL y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(gvec.head(k));
    x += V.leftCols(k) * y;
    rel = std::abs(gvec[k]) / bnorm;
    if (rel < tol) break;
  }
  x = M(x);
  return rel;
}

void orthonormalize(MatL& W, real_t h) {
  for (int pass = 0; pass < 2; ++pass)
    for (int j = 0; j < W.cols(); ++j) {
      for (int i = 0; i < j; ++i) W.col(j) -= (h * W.col(i).dot(W.col(j))) * W.col(i);
      real_t nrm = wnorm(W.col(j), h);
      if (nrm == 0) throw ConvergenceError("shift-invert block collapsed");
      W.col(j) /= nrm;
    }
}

FieldSample to_field(const Grid1D& g, const VecL& v) {
  FieldSample f(g);
  for (int i = 0; i < g.N; ++i) f.values[static_cast<std::size_t>(i)] = v[i];
  return f;
}

VecL to_vec(const FieldSample& f) {
  VecL v(f.grid.N);
  for (int i = 0; i < f.grid.N; ++i) v[i] = f.values[static_cast<std::size_t>(i)].real();
  return v;
}

real_t psi(real_t t) { return t <= 0 ? 0 : std::exp(-1 / (t * t)); }

struct LinFit {
  double slope = 0, rsq = 0;
};

LinFit linear_fit(const std::vector<real_t>& t, const std::vector<real_t>& y) {
  const auto n = static_cast<real_t>(t.size());
  real_t mt = 0, my = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  real_t stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinFit f;
  f.slope = static_cast<double>(sty / stt);
  f.rsq = syy > 0 ? static_cast<double>(sty * sty / (stt * syy)) : 1.0;
  return f;
}

}  // namespace

Grid1D::Grid1D(real_t half_length, int points) : L(half_length), N(points) {
  if (!(half_length > 0)) throw ValidationError("grid half-length must be positive");
  if (points < 256 || (points & (points - 1)) != 0) throw ValidationError("grid size must be a power of two >= 256");
  h = 2 * L / static_cast<real_t>(N);
}

real_t Grid1D::nyquist() const { return std::acos(real_t(-1)) / h; }

real_t Grid1D::wavenumber(int m) const {
  int k = m < N / 2 ? m : m - N;
  return std::acos(real_t(-1)) * static_cast<real_t>(k) / L;
}

real_t FieldSample::norm() const {
  real_t s = 0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(grid.h * s);
}

real_t FieldSample::max_abs() const {
  real_t m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

real_t FieldSample::max_imag() const {
  real_t m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
  return m;
}

std::vector<real_t> FieldSample::real_part() const {
  std::vector<real_t> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.real());
  return out;
}

std::vector<cplx_t> fft(const std::vector<cplx_t>& v, bool inverse) {
  std::vector<cplx_t> out(v.size());
  fftwl_plan p = plan_for(static_cast<int>(v.size()), inverse);
  // new-array execution is thread safe; only planning is serialized
  fftwl_execute_dft(p, reinterpret_cast<fftwl_complex*>(const_cast<cplx_t*>(v.data())),
                    reinterpret_cast<fftwl_complex*>(out.data()));
  return out;
}

real_t resolvent_value(std::complex<double> z0, real_t x) {
  std::complex<double> kd = upper_sqrt(z0);
  cplx_t k(kd.real(), kd.imag());
  cplx_t v = cplx_t(0, 1) / (real_t(2) * k) * std::exp(cplx_t(0, 1) * k * std::abs(x));
  return v.real();
}

FieldSample resolvent_profile(std::complex<double> z0, const Grid1D& grid) {
  std::complex<double> k = upper_sqrt(z0);
  if (!(k.imag() > 1e-12 * (1 + std::abs(k)))) throw ValidationError("z0 lies on [0, inf): no decaying resolvent kernel");
  FieldSample f(grid);
  for (int n = 0; n < grid.N; ++n) f.values[static_cast<std::size_t>(n)] = resolvent_value(z0, grid.x(n));
  return f;
}

real_t spectral_tail(const FieldSample& field) {
  auto F = fft(field.values);
  const int N = field.grid.N;
  real_t peak = 0, tail = 0;
  for (int m = 0; m < N; ++m) {
    real_t a = std::abs(F[static_cast<std::size_t>(m)]);
    peak = std::max(peak, a);
    int k = m < N / 2 ? m : N - m;
    if (4 * k >= 3 * (N / 2)) tail = std::max(tail, a);
  }
  return peak > 0 ? tail / peak : 0;
}

FieldSample spectral_apply(const UniPoly& g0, const FieldSample& field, bool check_tail) {
  if (check_tail) {
    real_t t = spectral_tail(field);
    if (t > 1e-12L) throw ValidationError("field is not resolved by the grid (spectral tail " +
                                          std::to_string(static_cast<double>(t)) + ")");
  }
  const auto mult = symbol_table(g0, field.grid);
  auto F = fft(field.values);
  for (std::size_t m = 0; m < F.size(); ++m) F[m] *= mult[m];
  FieldSample out(field.grid);
  out.values = fft(F, true);
  for (auto& v : out.values) v /= static_cast<real_t>(field.grid.N);
  return out;
}

real_t smooth_cutoff(real_t r, real_t a, real_t b) {
  if (r <= a) return 1;
  if (r >= b) return 0;
  real_t t = (r - a) / (b - a);
  real_t p1 = psi(1 - t), p0 = psi(t);
  return p1 / (p1 + p0);
}

std::vector<std::pair<double, double>> positivity_windows(std::complex<double> z0, double x_max) {
  std::complex<double> k = upper_sqrt(z0);
  if (!(k.imag() > 1e-12 * (1 + std::abs(k)))) throw ValidationError("z0 lies on [0, inf)");
  // sign of the oscillating factor only; the e^{-Im k r} factor is dropped to avoid underflow
  const std::complex<double> c = std::complex<double>(0, 1) / (2.0 * k);
  auto s = [&](double r) { return (c * std::exp(std::complex<double>(0, k.real() * r))).real(); };
  const double step = std::min(1e-3, k.real() > 0 ? 1e-3 / k.real() : 1e-3);
  std::vector<std::pair<double, double>> out;
  double start = s(0) > 0 ? 0.0 : -1.0;
  double prev = 0;
  for (double r = step; r <= x_max; r += step) {
    bool pos_prev = s(prev) > 0, pos = s(r) > 0;
    if (pos != pos_prev) {
      double lo = prev, hi = r;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        ((s(mid) > 0) == pos_prev ? lo : hi) = mid;
      }
      double root = 0.5 * (lo + hi);
      if (pos) {
        start = root;
      } else if (start >= 0) {
        out.emplace_back(start, root);
        start = -1;
      }
    }
    prev = r;
  }
  if (start >= 0) out.emplace_back(start, std::numeric_limits<double>::infinity());
  return out;
}

double auto_radius(std::complex<double> z0, double L) {
  const double sigma = upper_sqrt(z0).imag();
  const double r_max = L - 10 * std::log(10.0) / sigma;
  double best = -1;
  for (const auto& [a, b] : positivity_windows(z0, L)) {
    double R;
    if (std::isinf(b)) {
      R = std::max(std::min(8 / sigma, L / 4), 3 * a);
    } else {
      if (b <= 1.5 * a) continue;
      double mu = (b - 1.5 * a) / 2.5;
      R = 2 * (a + mu);
    }
    if (R < r_max && R > best) best = R;
  }
  if (best <= 0) throw ValidationError("no cutoff radius fits a positivity window on this grid; enlarge L");
  return best;
}

PotentialBuild build_potential(const UniPoly& g0, double lambda, std::complex<double> z0, double R, const Grid1D& grid) {
  PotentialBuild b;
  b.z0 = z0;
  b.k = upper_sqrt(z0);
  const double sigma = b.k.imag();
  if (!(sigma > 1e-12 * (1 + std::abs(b.k)))) throw ValidationError("z0 lies on [0, inf): no decaying resolvent kernel");
  {
    const auto c = g0.complex_coefficients();
    std::complex<double> v = 0;
    double scale = std::abs(lambda);
    for (std::size_t j = c.size(); j-- > 0;) {
      v = v * z0 + c[j];
      scale += std::abs(c[j]) * std::pow(std::abs(z0), static_cast<double>(j));
    }
    if (std::abs(v - lambda) > 1e-8 * (1 + scale)) throw ValidationError("z0 is not a zero of G0 - lambda");
  }
  const double L = static_cast<double>(grid.L);
  if (R <= 0) R = auto_radius(z0, L);
  b.R = R;
  b.cutoff_inner = R / 2;
  b.cutoff_outer = 3 * R / 4;
  if (!(std::exp(-sigma * (L - R)) < 1e-10))
    throw ValidationError("insufficient grid: e^{-Im k (L - R)} >= 1e-10; enlarge L");
  for (double r = b.cutoff_inner; r <= b.cutoff_outer; r += static_cast<double>(grid.h) / 4)
    if (!(resolvent_value(z0, r) > 0))
      throw ValidationError("resolvent profile changes sign inside the cutoff transition at |x| = " + std::to_string(r) +
                            "; choose R with (R/2, 3R/4) inside a positivity window");

  FieldSample tilde = resolvent_profile(z0, grid);
  b.phi = FieldSample(grid);
  for (int n = 0; n < grid.N; ++n) {
    real_t chi = smooth_cutoff(std::abs(grid.x(n)), b.cutoff_inner, b.cutoff_outer);
    b.phi.values[static_cast<std::size_t>(n)] = chi + (1 - chi) * tilde.values[static_cast<std::size_t>(n)];
  }
  FieldSample gphi = spectral_apply(g0, b.phi);
  b.V = FieldSample(grid);
  real_t max_imag = 0;
  for (int n = 0; n < grid.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (std::abs(grid.x(n)) > b.cutoff_outer) continue;
    cplx_t v = -(gphi.values[i] - static_cast<real_t>(lambda) * b.phi.values[i]) / b.phi.values[i].real();
    max_imag = std::max(max_imag, std::abs(v.imag()));
    b.V.values[i] = v.real();
  }
  b.max_imag_V = static_cast<double>(max_imag);
  FieldSample r = spectral_apply(g0, b.phi, false);
  for (int n = 0; n < grid.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    r.values[i] += (b.V.values[i].real() - static_cast<real_t>(lambda)) * b.phi.values[i];
  }
  b.residual = static_cast<double>(r.norm() / b.phi.norm());
  return b;
}

EigenResult eigen_solve(const UniPoly& g0, const FieldSample& V, double shift, const EigenOptions& opt) {
  const Grid1D& g = V.grid;
  const int N = g.N;
  const auto G = symbol_table(g0, g);
  const VecL v = to_vec(V);
  const DiagonalOp G0op(G);
  const real_t s = static_cast<real_t>(shift);
  const real_t s_off = s + real_t(1e-3) * (1 + std::abs(s));
  const real_t reg = real_t(1e-2) * (1 + std::abs(s));
  std::vector<real_t> pm(G.size());
  for (std::size_t m = 0; m < G.size(); ++m) {
    real_t d = G[m] - s_off;
    pm[m] = d / (d * d + reg * reg);  // Re (G - s + i reg)^{-1}
  }
  const DiagonalOp P(pm);
  auto H = [&](const VecL& u) -> VecL { return G0op.apply(u) + v.cwiseProduct(u); };
  auto A = [&](const VecL& u) -> VecL { return H(u) - s_off * u; };
  auto M = [&](const VecL& u) -> VecL { return P.apply(u); };

  // initial block: even, odd and a wider even profile localized on the support of V
  real_t width = 1;
  for (int n = 0; n < N; ++n)
    if (v[n] != 0) width = std::max(width, std::abs(g.x(n)));
  const int b = std::max(1, opt.block);
  MatL U(N, b);
  for (int n = 0; n < N; ++n) {
    real_t x = g.x(n) / width;
    for (int j = 0; j < b; ++j) U(n, j) = std::pow(x, j) * std::exp(-x * x / real_t(j + 1));
  }
  orthonormalize(U, g.h);

  EigenResult res;
  real_t best_r = std::numeric_limits<real_t>::infinity();
  int stalled = 0;
  const real_t window = real_t(0.05) * (1 + std::abs(s));
  for (int it = 1; it <= opt.max_iterations; ++it) {
    MatL W(N, b);
    for (int j = 0; j < b; ++j) {
      VecL x;
      gmres(A, M, VecL(U.col(j)), x, opt.gmres_restart, opt.gmres_max, static_cast<real_t>(opt.gmres_tol));
      W.col(j) = x;
    }
    orthonormalize(W, g.h);
    MatL HW(N, b);
    for (int j = 0; j < b; ++j) HW.col(j) = H(W.col(j));
    MatL T = g.h * (W.transpose() * HW);
    T = (T + T.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<MatL> es(T);
    U = W * es.eigenvectors();
    MatL HU = HW * es.eigenvectors();
    int best = 0;
    for (int j = 1; j < b; ++j)
      if (std::abs(es.eigenvalues()[j] - s) < std::abs(es.eigenvalues()[best] - s)) best = j;
    const real_t theta = es.eigenvalues()[best];
    real_t r = wnorm(HU.col(best) - theta * U.col(best), g.h) / wnorm(U.col(best), g.h);
    res.iterations = it;
    res.lambda_num = static_cast<double>(theta);
    res.residual = static_cast<double>(r);
    res.ritz.clear();
    for (int j = 0; j < b; ++j) res.ritz.push_back(static_cast<double>(es.eigenvalues()[j]));
    res.degenerate = false;
    for (int j = 0; j < b; ++j)
      if (j != best && std::abs(es.eigenvalues()[j] - theta) < opt.degeneracy) res.degenerate = true;
    VecL phi = U.col(best);
    Eigen::Index imax;
    phi.cwiseAbs().maxCoeff(&imax);
    phi /= phi[imax];
    res.phi = to_field(g, phi);
    if (r < opt.tol) break;
    // stop once the residual has reached its rounding floor
    if (r < best_r / 2) {
      best_r = r;
      stalled = 0;
    } else if (++stalled >= 4) {
      break;
    }
  }
  if (std::abs(static_cast<real_t>(res.lambda_num) - s) > window)
    throw ConvergenceError("no eigenvalue near shift " + std::to_string(shift) + " (nearest Ritz value " +
                           std::to_string(res.lambda_num) + ")");
  if (!(res.residual < opt.accept)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "eigen iteration did not converge: residual %.3e", res.residual);
    throw ConvergenceError(buf);
  }
  return res;
}

std::string to_string(DecayFit::Mode m) { return m == DecayFit::Mode::plain ? "plain" : "r_eps"; }

DecayFit fit_decay(const FieldSample& phi, double x_lo, double x_hi, DecayFit::Mode mode, double eps) {
  const Grid1D& g = phi.grid;
  const double L = static_cast<double>(g.L);
  if (!(x_lo < x_hi) || (x_lo < 0 && x_hi > 0)) throw ValidationError("fit window must lie on one side of the origin");
  const double lo = std::min(std::abs(x_lo), std::abs(x_hi)), hi = std::max(std::abs(x_lo), std::abs(x_hi));
  if (lo < 0.2 * L * (1 - 1e-12) || hi > 0.6 * L * (1 + 1e-12)) throw ValidationError("fit window must satisfy 0.2 L <= |x| <= 0.6 L");
  if (mode == DecayFit::Mode::r_eps && !(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");

  DecayFit fit;
  fit.mode = mode;
  fit.eps = mode == DecayFit::Mode::r_eps ? eps : 0;
  fit.x_lo = x_lo;
  fit.x_hi = x_hi;
  auto coord = [&](real_t x) -> real_t {
    real_t ax = std::abs(x);
    if (mode == DecayFit::Mode::plain) return ax;
    real_t br = std::sqrt(1 + x * x);
    return br - std::pow(br, 1 - static_cast<real_t>(eps));
  };

  std::vector<int> idx;
  for (int n = 0; n < g.N; ++n) {
    real_t x = g.x(n);
    if (x >= x_lo && x <= x_hi) idx.push_back(n);
  }
  auto val = [&](int n) { return phi.values[static_cast<std::size_t>(((n % g.N) + g.N) % g.N)].real(); };
  std::vector<real_t> crossings;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    real_t a = val(idx[i - 1]), b = val(idx[i]);
    if ((a > 0) != (b > 0) && a != 0) crossings.push_back(g.x(idx[i - 1]) + g.h * a / (a - b));
  }
  std::vector<real_t> t, y;
  if (crossings.empty()) {
    for (int n : idx) {
      real_t a = std::abs(val(n));
      if (!(a > 1e-300L)) throw ValidationError("|phi| vanishes in the fit window");
      t.push_back(-coord(g.x(n)));
      y.push_back(std::log(a));
    }
  } else {
    fit.oscillatory = true;
    if (crossings.size() < 2) throw ValidationError("fewer than 8 envelope points in window: oscillation not resolved");
    real_t half_period = (crossings.back() - crossings.front()) / static_cast<real_t>(crossings.size() - 1);
    int dn = std::max(1, static_cast<int>(std::lround(static_cast<double>(half_period / 2 / g.h))));
    for (int n : idx) {
      real_t w = val(n) * val(n) - val(n - dn) * val(n + dn);
      if (!(w > 1e-300L)) continue;
      t.push_back(-coord(g.x(n)));
      y.push_back(std::log(w) / 2);
    }
  }
  fit.points = static_cast<int>(t.size());
  if (fit.points < 8) throw ValidationError("fewer than 8 envelope points in window");
  LinFit lf = linear_fit(t, y);
  fit.sigma_hat = lf.slope;
  fit.rsq = lf.rsq;
  return fit;
}

std::vector<std::complex<double>> lab_roots(const UniPoly& g0, double lambda) {
  UniPoly p = g0 - UniPoly::constant(rational_from_double(lambda));
  if (p.degree() < 1) throw ValidationError("G0 - lambda must be nonconstant");
  std::vector<std::complex<double>> out;
  for (const auto& r : distinct_roots(p)) {
    std::complex<double> k = upper_sqrt(r.z);
    if (!(k.imag() > 1e-10 * (1 + std::abs(k)))) continue;
    if (r.z.imag() < -1e-12 * std::abs(r.z)) continue;
    out.push_back(std::abs(r.z.imag()) <= 1e-12 * std::abs(r.z) ? std::complex<double>(r.z.real(), 0) : r.z);
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    double sa = upper_sqrt(a).imag(), sb = upper_sqrt(b).imag();
    if (sa != sb) return sa < sb;
    return a.real() < b.real();
  });
  return out;
}

LabResult run_lab(const UniPoly& g0, double lambda, const LabConfig& cfg) {
  Grid1D grid(cfg.L, cfg.N);
  auto roots = lab_roots(g0, lambda);
  if (roots.empty()) throw ValidationError("G0 - lambda has no zero off [0, inf)");
  if (cfg.root_index < 0 || cfg.root_index >= static_cast<int>(roots.size()))
    throw ValidationError("root index out of range (" + std::to_string(roots.size()) + " usable zeros)");
  LabResult out;
  out.lambda = lambda;
  out.z0 = roots[static_cast<std::size_t>(cfg.root_index)];
  PotentialBuild b = build_potential(g0, lambda, out.z0, cfg.R, grid);
  out.R = b.R;
  out.build_residual = b.residual;
  out.V = b.V;
  out.V_max = static_cast<double>(b.V.max_abs());
  for (int n = 0; n < grid.N; ++n)
    if (b.V.values[static_cast<std::size_t>(n)].real() != 0)
      out.V_support = std::max(out.V_support, static_cast<double>(std::abs(grid.x(n))));
  out.eigen = eigen_solve(g0, b.V, lambda, cfg.eigen);
  out.fit_right = fit_decay(out.eigen.phi, 0.2 * cfg.L, 0.4 * cfg.L);
  out.fit_left = fit_decay(out.eigen.phi, -0.4 * cfg.L, -0.2 * cfg.L);
  if (cfg.eps) out.fit_reps = fit_decay(out.eigen.phi, 0.2 * cfg.L, 0.4 * cfg.L, DecayFit::Mode::r_eps, *cfg.eps);
  out.sigma_hat = out.fit_right.sigma_hat;
  out.sigma_predicted = b.k.imag();
  out.relative_error = std::abs(out.sigma_hat - out.sigma_predicted) / out.sigma_predicted;
  return out;
}

std::string lab_csv(const LabResult& r) {
  std::string out = "x,abs_phi,V\n";
  const Grid1D& g = r.eigen.phi.grid;
  char buf[128];
  for (int n = 0; n < g.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", static_cast<double>(g.x(n)),
                  static_cast<double>(std::abs(r.eigen.phi.values[i])), static_cast<double>(r.V.values[i].real()));
    out += buf;
  }
  return out;
}

}  // namespace ellipdecay
