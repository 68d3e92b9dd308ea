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

#include "ellipdecay/nccalc.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "ellipdecay/errors.hpp"
#include "ellipdecay/polyalg.hpp"

namespace ellipdecay {

// ---- symbols -------------------------------------------------------------------

CoeffSymbol CoeffSymbol::p(int j, int k, MultiIndex gamma) {
  // p_jk = 2 sigma d_j d_k r, so D^gamma p_jk depends only on tau = gamma + e_j + e_k;
  // the representative takes j <= k as the two lowest slots of tau.
  const int d = gamma.dim();
  MultiIndex tau = gamma + MultiIndex::unit(d, j) + MultiIndex::unit(d, k);
  CoeffSymbol s;
  s.kind = Kind::P;
  int a = 0;
  while (tau[a] == 0) ++a;
  tau[a] -= 1;
  int b = 0;
  while (tau[b] == 0) ++b;
  tau[b] -= 1;
  s.j = a;
  s.k = b;
  s.gamma = std::move(tau);
  return s;
}

CoeffSymbol CoeffSymbol::v1(MultiIndex gamma) {
  CoeffSymbol s;
  s.kind = Kind::V1;
  s.gamma = std::move(gamma);
  return s;
}

CoeffSymbol CoeffSymbol::constant(int dim, int id) {
  CoeffSymbol s;
  s.kind = Kind::Const;
  s.gamma = MultiIndex(dim);
  s.id = id;
  return s;
}

std::strong_ordering operator<=>(const CoeffSymbol& a, const CoeffSymbol& b) {
  if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
  if (auto c = a.j <=> b.j; c != 0) return c;
  if (auto c = a.k <=> b.k; c != 0) return c;
  if (auto c = a.gamma <=> b.gamma; c != 0) return c;
  return a.id <=> b.id;
}

std::string to_string(const CoeffSymbol& s) {
  std::string prefix = s.gamma.is_zero() ? "" : "D" + to_string(s.gamma);
  switch (s.kind) {
    case CoeffSymbol::Kind::P: return prefix + "p" + std::to_string(s.j + 1) + std::to_string(s.k + 1);
    case CoeffSymbol::Kind::V1: return prefix + "V1";
    case CoeffSymbol::Kind::Const: return "c" + std::to_string(s.id);
  }
  return "?";
}

CoeffMonomial multiply(const CoeffMonomial& a, const CoeffMonomial& b) {
  CoeffMonomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<CoeffMonomial> derive(const CoeffMonomial& m, int j) {
  std::vector<CoeffMonomial> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].kind == CoeffSymbol::Kind::Const) continue;
    CoeffMonomial r = m;
    if (r[i].kind == CoeffSymbol::Kind::P)
      r[i] = CoeffSymbol::p(r[i].j, r[i].k, r[i].gamma + MultiIndex::unit(r[i].gamma.dim(), j));
    else
      r[i].gamma[j] += 1;
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
  }
  return out;
}

// ---- expressions ---------------------------------------------------------------

std::strong_ordering operator<=>(const NCExpr::Key& x, const NCExpr::Key& y) {
  if (auto c = x.astar <=> y.astar; c != 0) return c;
  if (auto c = x.a <=> y.a; c != 0) return c;
  return std::lexicographical_compare_three_way(x.coeff.begin(), x.coeff.end(), y.coeff.begin(), y.coeff.end());
}

NCExpr NCExpr::scalar(int dim, const GaussianRational& c) {
  NCExpr e(dim);
  e.add({MultiIndex(dim), MultiIndex(dim), {}}, c);
  return e;
}

NCExpr NCExpr::a(int dim, int j) {
  NCExpr e(dim);
  e.add({MultiIndex(dim), MultiIndex::unit(dim, j), {}}, 1);
  return e;
}

NCExpr NCExpr::astar(int dim, int j) {
  NCExpr e(dim);
  e.add({MultiIndex::unit(dim, j), MultiIndex(dim), {}}, 1);
  return e;
}

NCExpr NCExpr::symbol(int dim, const CoeffSymbol& s) {
  if (s.gamma.dim() != dim) throw ValidationError("symbol dimension mismatch");
  NCExpr e(dim);
  e.add({MultiIndex(dim), MultiIndex(dim), {s}}, 1);
  return e;
}

NCExpr NCExpr::term(const GaussianRational& c, CoeffMonomial coeff, MultiIndex astar, MultiIndex a) {
  NCExpr e(astar.dim());
  std::sort(coeff.begin(), coeff.end());
  e.add({std::move(astar), std::move(a), std::move(coeff)}, c);
  return e;
}

void NCExpr::add(const Key& key, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (key.astar.dim() != dim_ || key.a.dim() != dim_) throw ValidationError("NC term dimension mismatch");
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCExpr& NCExpr::operator+=(const NCExpr& o) {
  if (o.dim_ != dim_) throw ValidationError("NC dimension mismatch");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

NCExpr& NCExpr::operator-=(const NCExpr& o) {
  if (o.dim_ != dim_) throw ValidationError("NC dimension mismatch");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

NCExpr& NCExpr::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

NCExpr lmul_astar(int j, const NCExpr& e) {
  NCExpr out(e.dim());
  const MultiIndex ej = MultiIndex::unit(e.dim(), j);
  for (const auto& [key, c] : e.terms()) {
    out.add({key.astar + ej, key.a, key.coeff}, c);
    for (auto& m : derive(key.coeff, j)) out.add({key.astar, key.a, std::move(m)}, c);
  }
  return out;
}

namespace {

/// Normal form of a_j (a*)^alpha.
const NCExpr& basic(int j, const MultiIndex& alpha) {
  thread_local std::map<std::pair<int, MultiIndex>, NCExpr> cache;
  auto key = std::make_pair(j, alpha);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const int d = alpha.dim();
  NCExpr r(d);
  if (alpha.is_zero()) {
    r = NCExpr::a(d, j);
  } else {
    int k = 0;
    while (alpha[k] == 0) ++k;
    MultiIndex rest = alpha - MultiIndex::unit(d, k);
    // a_j a*_k W = a*_k (a_j W) + p_jk W
    r = lmul_astar(k, basic(j, rest));
    r.add({rest, MultiIndex(d), {CoeffSymbol::p(j, k, MultiIndex(d))}}, 1);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace

NCExpr lmul_a(int j, const NCExpr& e) {
  NCExpr out(e.dim());
  for (const auto& [key, c] : e.terms()) {
    for (const auto& [k2, c2] : basic(j, key.astar).terms())
      out.add({k2.astar, k2.a + key.a, multiply(key.coeff, k2.coeff)}, c * c2);
    for (auto& m : derive(key.coeff, j)) out.add({key.astar, key.a, std::move(m)}, c);
  }
  return out;
}

NCExpr operator*(const NCExpr& x, const NCExpr& y) {
  if (x.dim() != y.dim()) throw ValidationError("NC dimension mismatch");
  const int d = x.dim();
  NCExpr out(d);
  for (const auto& [key, c] : x.terms()) {
    NCExpr w = y;
    for (int j = 0; j < d; ++j)
      for (int n = 0; n < key.a[j]; ++n) w = lmul_a(j, w);
    for (int j = 0; j < d; ++j)
      for (int n = 0; n < key.astar[j]; ++n) w = lmul_astar(j, w);
    for (const auto& [k2, c2] : w.terms()) out.add({k2.astar, k2.a, multiply(key.coeff, k2.coeff)}, c * c2);
  }
  return out;
}

std::string to_string(const NCExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : e.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c);
    for (const auto& s : key.coeff) out += "*" + to_string(s);
    for (int j = 0; j < e.dim(); ++j)
      if (key.astar[j]) out += "*as" + std::to_string(j + 1) + (key.astar[j] > 1 ? "^" + std::to_string(key.astar[j]) : "");
    for (int j = 0; j < e.dim(); ++j)
      if (key.a[j]) out += "*a" + std::to_string(j + 1) + (key.a[j] > 1 ? "^" + std::to_string(key.a[j]) : "");
  }
  return out;
}

// ---- trees -----------------------------------------------------------------------

NCNode NCNode::sum(std::vector<NCNode> c) {
  NCNode n;
  n.kind = Kind::Sum;
  n.children = std::move(c);
  return n;
}
NCNode NCNode::product(std::vector<NCNode> c) {
  NCNode n;
  n.kind = Kind::Product;
  n.children = std::move(c);
  return n;
}
NCNode NCNode::a(int j) {
  NCNode n;
  n.kind = Kind::A;
  n.index = j;
  return n;
}
NCNode NCNode::astar(int j) {
  NCNode n;
  n.kind = Kind::AStar;
  n.index = j;
  return n;
}
NCNode NCNode::sym(CoeffSymbol s) {
  NCNode n;
  n.kind = Kind::Symbol;
  n.symbol = std::move(s);
  return n;
}
NCNode NCNode::number(GaussianRational c) {
  NCNode n;
  n.kind = Kind::Scalar;
  n.scalar = std::move(c);
  return n;
}

NCExpr nc_normalize(const NCNode& tree, int dim) {
  switch (tree.kind) {
    case NCNode::Kind::Sum: {
      NCExpr out(dim);
      for (const auto& c : tree.children) out += nc_normalize(c, dim);
      return out;
    }
    case NCNode::Kind::Product: {
      NCExpr out = NCExpr::scalar(dim, 1);
      for (const auto& c : tree.children) out = out * nc_normalize(c, dim);
      return out;
    }
    case NCNode::Kind::A:
    case NCNode::Kind::AStar:
      if (tree.index < 0 || tree.index >= dim) throw ValidationError("generator index out of range");
      return tree.kind == NCNode::Kind::A ? NCExpr::a(dim, tree.index) : NCExpr::astar(dim, tree.index);
    case NCNode::Kind::Symbol: return NCExpr::symbol(dim, tree.symbol);
    case NCNode::Kind::Scalar: return NCExpr::scalar(dim, tree.scalar);
  }
  return NCExpr(dim);
}

NCExpr nc_commutator(const NCExpr& x, const NCExpr& y) { return x * y - y * x; }

// ---- the formulas --------------------------------------------------------------

NCExpr q_of_a(const ExactPoly& q, bool conjugated) {
  const int d = q.dim();
  NCExpr out(d);
  for (const auto& [alpha, c] : q.terms())
    out.add({conjugated ? alpha : MultiIndex(d), conjugated ? MultiIndex(d) : alpha, {}}, c);
  return out;
}

NCExpr ad_a(int j, const NCExpr& c) {
  NCExpr right(c.dim());
  const MultiIndex ej = MultiIndex::unit(c.dim(), j);
  for (const auto& [key, v] : c.terms()) right.add({key.astar, key.a + ej, key.coeff}, v);
  return lmul_a(j, c) - right;
}

NCExpr ad_a(const MultiIndex& alpha, const NCExpr& c) {
  NCExpr out = c;
  for (int j = 0; j < alpha.dim(); ++j)
    for (int n = 0; n < alpha[j]; ++n) out = ad_a(j, out);
  return out;
}

namespace {

GaussianRational inverse_factorial(const MultiIndex& alpha) { return GaussianRational(Rational(1) / Rational(alpha.factorial())); }

void check_dim(const ExactPoly& q, int dim) {
  if (q.dim() != dim) throw ValidationError("polynomial dimension does not match d");
}

}  // namespace

NCExpr taylor_commutator(const ExactPoly& q, const NCExpr& c, Side side) {
  check_dim(q, c.dim());
  NCExpr out(c.dim());
  for (const auto& alpha : multi_indices_up_to(q.dim(), q.degree_or(0))) {
    if (alpha.is_zero()) continue;
    ExactPoly dq = q.derivative(alpha);
    if (dq.is_zero()) continue;
    NCExpr ad = ad_a(alpha, c);
    if (side == Side::right) {
      out += ad * q_of_a(dq, false) * inverse_factorial(alpha);
    } else {
      GaussianRational sign = alpha.total() % 2 == 1 ? GaussianRational(1) : GaussianRational(-1);
      out += q_of_a(dq, false) * ad * (sign * inverse_factorial(alpha));
    }
  }
  return out;
}

NCExpr leibniz_expand(const MultiIndex& alpha, const NCExpr& c, const NCExpr& e) {
  NCExpr out(c.dim());
  for (const auto& gamma : sub_indices(alpha))
    out += ad_a(alpha - gamma, c) * ad_a(gamma, e) * GaussianRational(Rational(binomial(alpha, gamma)));
  return out;
}

NCExpr normalize_sandwich(const std::vector<SandwichTerm>& terms, int dim) {
  NCExpr out(dim);
  for (const auto& t : terms) {
    NCExpr w = NCExpr::term(t.coeff, t.symbols, MultiIndex(dim), MultiIndex(dim));
    for (int j = 0; j < dim; ++j)
      for (int n = 0; n < t.astar[j]; ++n) w = lmul_astar(j, w);
    for (const auto& [key, c] : w.terms()) out.add({key.astar, key.a + t.a, key.coeff}, c);
  }
  return out;
}

namespace {

/// (derivative index on the a* side, symbols, derivative index on the a side) -> coefficient.
using SandwichMap = std::map<std::tuple<MultiIndex, CoeffMonomial, MultiIndex>, GaussianRational>;

std::vector<SandwichTerm> expand_sandwich(const SandwichMap& groups, const ExactPoly& q) {
  std::map<std::tuple<MultiIndex, CoeffMonomial, MultiIndex>, GaussianRational> merged;
  for (const auto& [key, c] : groups) {
    if (c.is_zero()) continue;
    const auto& [A, syms, B] = key;
    ExactPoly left = q.derivative(A), right = q.derivative(B);
    for (const auto& [al, cl] : left.terms())
      for (const auto& [ar, cr] : right.terms()) merged[{al, syms, ar}] += c * cl * cr;
  }
  std::vector<SandwichTerm> out;
  for (auto& [key, c] : merged)
    if (!c.is_zero()) out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  return out;
}

/// Calls fn for every m-tuple of indices in [0, d).
void for_each_tuple(int m, int d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(static_cast<std::size_t>(m), 0);
  for (;;) {
    fn(t);
    int pos = m - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == d) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
  }
}

/// Calls fn for every m-tuple of multi-indices with total degree <= budget.
void for_each_index_tuple(int m, int d, int budget, const std::function<void(const std::vector<MultiIndex>&)>& fn) {
  std::vector<MultiIndex> cur;
  std::vector<std::vector<MultiIndex>> by_budget;
  for (int b = 0; b <= budget; ++b) by_budget.push_back(multi_indices_up_to(d, b));
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == m) {
      fn(cur);
      return;
    }
    for (const auto& mi : by_budget[static_cast<std::size_t>(left)]) {
      cur.push_back(mi);
      rec(left - mi.total());
      cur.pop_back();
    }
  };
  rec(budget);
}

}  // namespace

NCExpr commutator_general(const ExactPoly& q, int dim) {
  check_dim(q, dim);
  const int qd = q.degree_or(0);
  const int d = dim;
  SandwichMap groups;
  for (int m = 1; m <= qd; ++m) {
    for_each_tuple(m, d, [&](const std::vector<int>& J) {
      for_each_tuple(m, d, [&](const std::vector<int>& K) {
        MultiIndex eJ(d), eK(d);
        for (int l = 0; l < m; ++l) {
          eJ[J[static_cast<std::size_t>(l)]] += 1;
          eK[K[static_cast<std::size_t>(l)]] += 1;
        }
        if (q.derivative(eK).is_zero() || q.derivative(eJ).is_zero()) return;
        for_each_index_tuple(m, d, qd - m, [&](const std::vector<MultiIndex>& Bt) {
          MultiIndex A = eK;
          for (const auto& b : Bt) A += b;
          if (q.derivative(A).is_zero()) return;
          for_each_index_tuple(m, d, qd - m, [&](const std::vector<MultiIndex>& Gt) {
            MultiIndex B = eJ;
            for (const auto& g : Gt) B += g;
            if (q.derivative(B).is_zero()) return;
            // C = prod d(beta_l + e_{k_l}) / gamma_l! * prod (gamma_l + S_{l+1})! d(S_l),
            // S_l = sum_{k >= l} (gamma_k + e_{j_k})
            Rational C = 1;
            std::vector<MultiIndex> S(static_cast<std::size_t>(m) + 1, MultiIndex(d));
            for (int l = m - 1; l >= 0; --l)
              S[static_cast<std::size_t>(l)] =
                  S[static_cast<std::size_t>(l) + 1] + Gt[static_cast<std::size_t>(l)] +
                  MultiIndex::unit(d, J[static_cast<std::size_t>(l)]);
            int sym_order = 0;
            CoeffMonomial syms;
            for (int l = 0; l < m; ++l) {
              const auto ul = static_cast<std::size_t>(l);
              C *= dcoef(Bt[ul] + MultiIndex::unit(d, K[ul]));
              C /= Rational(Gt[ul].factorial());
              C *= Rational((Gt[ul] + S[ul + 1]).factorial());
              C *= dcoef(S[ul]);
              MultiIndex g = Bt[ul] + Gt[ul];
              sym_order += g.total();
              syms.push_back(CoeffSymbol::p(J[ul], K[ul], g));
            }
            std::sort(syms.begin(), syms.end());
            // (D^A Q)(a)^* = i^|A| (d^A Q)(a*), (D^B Q)(a) = (-i)^|B| (d^B Q)(a),
            // d^g p = i^|g| D^g p
            GaussianRational phase = GaussianRational::i_pow(A.total() - B.total() + sym_order);
            groups[{A, syms, B}] += phase * GaussianRational(C);
          });
        });
      });
    });
  }
  return normalize_sandwich(expand_sandwich(groups, q), d);
}

std::vector<SandwichTerm> commutator_F_terms(const ExactPoly& q, int dim) {
  check_dim(q, dim);
  const int qd = q.degree_or(0);
  const int d = dim;
  SandwichMap groups;
  Rational inv_fact = 1;
  for (int m = 1; m <= qd; ++m) {
    inv_fact /= m;
    for_each_tuple(m, d, [&](const std::vector<int>& J) {
      for_each_tuple(m, d, [&](const std::vector<int>& K) {
        MultiIndex eJ(d), eK(d);
        CoeffMonomial syms;
        for (int l = 0; l < m; ++l) {
          eJ[J[static_cast<std::size_t>(l)]] += 1;
          eK[K[static_cast<std::size_t>(l)]] += 1;
          syms.push_back(CoeffSymbol::p(J[static_cast<std::size_t>(l)], K[static_cast<std::size_t>(l)], MultiIndex(d)));
        }
        if (q.derivative(eJ).is_zero() || q.derivative(eK).is_zero()) return;
        std::sort(syms.begin(), syms.end());
        groups[{eJ, syms, eK}] += GaussianRational(inv_fact);
      });
    });
  }
  return expand_sandwich(groups, q);
}

NCExpr commutator_F(const ExactPoly& q, int dim) { return normalize_sandwich(commutator_F_terms(q, dim), dim); }

NCExpr commutator_E(const ExactPoly& q, int dim) {
  NCExpr e = commutator_general(q, dim) - commutator_F(q, dim);
  for (const auto& [key, c] : e.terms())
    if (std::none_of(key.coeff.begin(), key.coeff.end(), [](const CoeffSymbol& s) { return s.differentiated(); }))
      throw Error("E term without a differentiated symbol: " + to_string(NCExpr::term(c, key.coeff, key.astar, key.a)));
  return e;
}

NCExpr commutator_brute(const ExactPoly& q, int dim) {
  check_dim(q, dim);
  return nc_commutator(q_of_a(q, false), q_of_a(q, true));
}

Rational perm_coefficient(const std::vector<int>& J) {
  if (J.empty()) throw ValidationError("perm_coefficient needs a nonempty tuple");
  const int d = *std::max_element(J.begin(), J.end());
  if (*std::min_element(J.begin(), J.end()) < 1) throw ValidationError("tuple entries are 1-based");
  MultiIndex tail(d);
  Rational c = 1;
  for (std::size_t l = J.size(); l-- > 0;) {
    tail[J[l] - 1] += 1;
    c *= zeta(tail);
  }
  c /= Rational(tail.factorial());
  return c;
}

NCExpr v1_symbol(int dim, bool v1_constant) {
  return NCExpr::symbol(dim, v1_constant ? CoeffSymbol::constant(dim) : CoeffSymbol::v1(MultiIndex(dim)));
}

NCExpr qv1_expand(const ExactPoly& q, int dim, bool v1_constant) {
  check_dim(q, dim);
  NCExpr out(dim);
  if (v1_constant) return out;
  for (const auto& alpha : multi_indices_up_to(dim, q.degree_or(0))) {
    if (alpha.is_zero()) continue;
    ExactPoly dq = q.derivative(alpha);
    if (dq.is_zero()) continue;
    out += NCExpr::symbol(dim, CoeffSymbol::v1(alpha)) * q_of_a(dq, false) * inverse_factorial(alpha);
  }
  return out;
}

std::vector<int> p_degrees(const NCExpr& e) {
  std::vector<int> out;
  for (const auto& [key, c] : e.terms())
    out.push_back(static_cast<int>(
        std::count_if(key.coeff.begin(), key.coeff.end(), [](const CoeffSymbol& s) { return s.kind == CoeffSymbol::Kind::P; })));
  return out;
}

}  // namespace ellipdecay
