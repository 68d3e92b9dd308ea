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
#include <cstdio>
#include <limits>

#include "ellipdecay/spectra.hpp"

namespace ellipdecay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// Is a declared exponent e enough for o(|x|^{-r})?
bool little_o_ok(const PotentialClass& pc, double e, double r) { return e > r || (e == r && pc.little_o); }

bool v_is_o1(const PotentialClass& pc) {
  return pc.compact_support || (little_o_ok(pc, pc.v1_exponent(0), 0) && little_o_ok(pc, pc.v2_exponent(), 0));
}

/// d^alpha V1 = o(|x|^{-|alpha|}) for all alpha, checked through `orders`.
bool v1_derivatives_ok(const PotentialClass& pc, int orders) {
  for (int k = 0; k <= orders; ++k)
    if (!little_o_ok(pc, pc.v1_exponent(k), k)) return false;
  return true;
}

bool is_pure_power_of_laplacian(const ExactPoly& q, int j) {
  ExactPoly lap(q.dim());
  for (int m = 0; m < q.dim(); ++m) lap += ExactPoly::variable(q.dim(), m).pow(2);
  return q == lap.pow(j);
}

struct Facts {
  double lambda;
  int degree;
  bool in_range;
  bool critical;
  bool stationary;
};

void fill_checks(TheoremReport& rep, const ExactPoly& q, const Facts& f) {
  const PotentialClass& pc = rep.potential;
  const int qd = f.degree;
  const int orders = static_cast<int>(pc.v1.size()) + qd + 1;
  auto add = [&](std::string name, bool ok, std::string req, std::string note = {}) {
    rep.applicable.push_back({std::move(name), ok, std::move(req), std::move(note)});
  };

  add("positive_rate.off_range", !f.in_range && v_is_o1(pc), "lambda not in Ran Q; V = o(1)",
      f.in_range ? "lambda lies in Ran Q" : "");
  add("positive_rate.noncritical", f.in_range && !f.critical && v1_derivatives_ok(pc, orders) && little_o_ok(pc, pc.v2_exponent(), 1),
      "lambda in Ran Q, not critical; d^alpha V1 = o(|x|^-|alpha|); V2 = o(|x|^-1)",
      f.critical ? "lambda is a critical value" : "");
  add("rate_equation.feasible", v_is_o1(pc), "V = o(1)", "conditional on 0 < sigma_c < infinity; sigma_c solves Q(xi + i sigma omega) = lambda");
  add("rate_equation.exceptional", v1_derivatives_ok(pc, orders) && little_o_ok(pc, pc.v2_exponent(), 0.5),
      "d^alpha V1 = o(|x|^-|alpha|); V2 = o(|x|^-1/2)", "conditional on 0 < sigma_c < infinity; sigma_c in Sigma_exc");

  double delta1 = kInf;
  for (int k = 0; k <= orders; ++k) delta1 = std::min(delta1, pc.v1_exponent(k) - k);
  const double delta2 = pc.v2_exponent() - 0.5;
  const bool refined = delta1 > 0 && delta2 > 0;
  const double eps_max = std::min({delta1, 2 * delta2, 1.0});
  const std::string refined_req = "d^alpha V1 = O(|x|^-(|alpha|+delta1)); V2 = O(|x|^-(1/2+delta2)); delta1, delta2 > 0";
  add("refined.stationary", refined && f.stationary, refined_req, "stationary system solvable at some sigma in Sigma_exc");
  add("refined.r_eps", refined && !f.stationary, refined_req,
      refined ? "e^{sigma_c(|x| - |x|^{1-eps})} phi in L^2 for eps in (0, " + num(eps_max) + ")" : "");
  rep.refined_branch = f.stationary ? "stationary" : "r_eps";

  double delta4 = pc.v2_exponent() - qd / 2.0;
  for (int k = 1; k <= qd; ++k) delta4 = std::min(delta4, 2 * pc.v1_exponent(k) - qd - k);
  const double dshow = pc.delta;
  add("finite_rate", delta4 > 0,
      "V2 = O(|x|^-" + num(qd / 2.0 + dshow) + "); d^alpha V1 = O(|x|^-((" + num(dshow + qd) +
          "+|alpha|)/2)) for 1 <= |alpha| <= " + std::to_string(qd) + " (delta = " + num(dshow) + ")",
      "sigma_c < infinity unless phi = 0");

  int j5 = 0;
  for (int j : {1, 2})
    if (is_pure_power_of_laplacian(q, j)) j5 = j;
  if (j5 == 0) {
    add("finite_rate.laplacian_power", false, "Q = |xi|^{2j}, j = 1 or 2", "symbol is not |xi|^2 or |xi|^4");
  } else {
    double delta5 = pc.v2_exponent() - j5 / 2.0;
    for (int k = 1; k <= j5; ++k) delta5 = std::min(delta5, 2 * pc.v1_exponent(k) - j5 - k);
    add("finite_rate.laplacian_power", delta5 > 0,
        "V2 = O(|x|^-" + num(j5 / 2.0 + dshow) + "); d^alpha V1 = O(|x|^-((" + num(dshow + j5) +
            "+|alpha|)/2)) for 1 <= |alpha| <= " + std::to_string(j5) + " (delta = " + num(dshow) + ")",
        "j = " + std::to_string(j5));
  }
}

}  // namespace

double PotentialClass::v1_exponent(int order) const {
  if (compact_support) return kInf;
  if (v1.empty()) return kInf;
  if (order < static_cast<int>(v1.size())) return v1[static_cast<std::size_t>(order)];
  return v1.back() + (order - static_cast<int>(v1.size()) + 1);
}

double PotentialClass::v2_exponent() const { return compact_support ? kInf : v2; }

TheoremReport theorem_report(const RadialForm& form, double lambda, const PotentialClass& pc) {
  TheoremReport rep;
  rep.lambda = lambda;
  rep.degree = form.degree();
  rep.potential = pc;
  rep.sigma_exc = radial_exceptional(form, lambda);
  rep.ct = ct_bound(form, lambda);
  rep.lambda_in_range = rep.ct.in_range;
  rep.lambda_critical = radial_is_critical(form, lambda);
  double best = kInf;
  for (const auto& p : rep.sigma_exc.discrete) {
    auto st = stationary_check(form, lambda, p.sigma);
    rep.stationary_solvable = rep.stationary_solvable || st.solvable;
    best = std::min(best, st.best_residual);
  }
  for (const auto& c : rep.sigma_exc.continua) {
    auto st = stationary_check(form, lambda, c.sigma_lo + 1.0);
    rep.stationary_solvable = rep.stationary_solvable || st.solvable;
    best = std::min(best, st.best_residual);
  }
  rep.stationary_residual = std::isfinite(best) ? best : 0.0;
  fill_checks(rep, form.expand(), {lambda, rep.degree, rep.lambda_in_range, rep.lambda_critical, rep.stationary_solvable});
  return rep;
}

TheoremReport theorem_report(const ExactPoly& q, double lambda, const PotentialClass& pc, const SolverConfig& cfg) {
  TheoremReport rep;
  rep.heuristic = true;
  rep.lambda = lambda;
  rep.degree = q.degree_or(0);
  rep.potential = pc;
  rep.sigma_exc.lambda = lambda;
  rep.sigma_exc.dim = q.dim();
  rep.sigma_exc.source = ExceptionalSet::Source::generic_numeric;
  rep.sigma_exc.discrete = generic_exceptional(q, lambda, cfg);
  rep.ct = ct_bound(q, lambda, cfg);
  rep.lambda_in_range = rep.ct.in_range;
  for (double v : spectrum_geometry(q, cfg).critical_values)
    if (std::abs(v - lambda) <= 1e-9 * (1 + std::abs(lambda))) rep.lambda_critical = true;
  double best = kInf;
  for (const auto& p : rep.sigma_exc.discrete) {
    auto st = stationary_check(q, lambda, p.sigma, cfg);
    rep.stationary_solvable = rep.stationary_solvable || st.solvable;
    best = std::min(best, st.best_residual);
  }
  rep.stationary_residual = std::isfinite(best) ? best : 0.0;
  fill_checks(rep, q, {lambda, rep.degree, rep.lambda_in_range, rep.lambda_critical, rep.stationary_solvable});
  return rep;
}

}  // namespace ellipdecay
