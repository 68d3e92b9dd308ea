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

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ellipdecay/multi_index.hpp"
#include "ellipdecay/multipoly.hpp"
#include "ellipdecay/rational.hpp"

namespace ellipdecay {

/// Commutative coefficient symbol: D^gamma p_{jk} (j <= k), D^gamma V1, or a constant
/// whose derivatives vanish. D = -i d/dx.
struct CoeffSymbol {
  enum class Kind { P, V1, Const };
  Kind kind = Kind::P;
  int j = 0;
  int k = 0;
  MultiIndex gamma;
  int id = 0;

  static CoeffSymbol p(int j, int k, MultiIndex gamma);
  static CoeffSymbol v1(MultiIndex gamma);
  static CoeffSymbol constant(int dim, int id = 0);

  /// True for D^gamma p with gamma != 0 (and likewise for V1).
  bool differentiated() const { return !gamma.is_zero(); }

  friend bool operator==(const CoeffSymbol&, const CoeffSymbol&) = default;
  friend std::strong_ordering operator<=>(const CoeffSymbol& a, const CoeffSymbol& b);
};

std::string to_string(const CoeffSymbol& s);

/// Sorted multiset of symbols.
using CoeffMonomial = std::vector<CoeffSymbol>;

CoeffMonomial multiply(const CoeffMonomial& a, const CoeffMonomial& b);

/// D_j of a monomial by the product rule; empty when the monomial is constant.
std::vector<CoeffMonomial> derive(const CoeffMonomial& m, int j);

/// Canonical normal-ordered expression: sum of c * (coeff monomial) * (a*)^alpha * a^beta.
class NCExpr {
 public:
  struct Key {
    MultiIndex astar;
    MultiIndex a;
    CoeffMonomial coeff;
    friend bool operator==(const Key&, const Key&) = default;
    friend std::strong_ordering operator<=>(const Key& x, const Key& y);
  };
  using TermMap = std::map<Key, GaussianRational>;

  NCExpr() = default;
  explicit NCExpr(int dim) : dim_(dim) {}

  static NCExpr scalar(int dim, const GaussianRational& c);
  static NCExpr a(int dim, int j);
  static NCExpr astar(int dim, int j);
  static NCExpr symbol(int dim, const CoeffSymbol& s);
  /// c * P * (a*)^alpha a^beta, already in normal order.
  static NCExpr term(const GaussianRational& c, CoeffMonomial coeff, MultiIndex astar, MultiIndex a);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Key& key, const GaussianRational& c);

  NCExpr& operator+=(const NCExpr& o);
  NCExpr& operator-=(const NCExpr& o);
  NCExpr& operator*=(const GaussianRational& s);
  friend NCExpr operator+(NCExpr x, const NCExpr& y) { return x += y; }
  friend NCExpr operator-(NCExpr x, const NCExpr& y) { return x -= y; }
  friend NCExpr operator*(NCExpr x, const GaussianRational& s) { return x *= s; }
  friend NCExpr operator*(const GaussianRational& s, NCExpr x) { return x *= s; }
  /// Noncommutative product, renormalized.
  friend NCExpr operator*(const NCExpr& x, const NCExpr& y);
  friend bool operator==(const NCExpr& x, const NCExpr& y) { return x.dim_ == y.dim_ && x.terms_ == y.terms_; }

 private:
  int dim_ = 1;
  TermMap terms_;
};

std::string to_string(const NCExpr& e);

/// Left multiplication by single generators (the rewriting steps).
NCExpr lmul_a(int j, const NCExpr& e);
NCExpr lmul_astar(int j, const NCExpr& e);

/// Raw expression tree for nc_normalize.
struct NCNode {
  enum class Kind { Sum, Product, A, AStar, Symbol, Scalar };
  Kind kind = Kind::Scalar;
  std::vector<NCNode> children;
  int index = 0;
  CoeffSymbol symbol;
  GaussianRational scalar{1};

  static NCNode sum(std::vector<NCNode> c);
  static NCNode product(std::vector<NCNode> c);
  static NCNode a(int j);
  static NCNode astar(int j);
  static NCNode sym(CoeffSymbol s);
  static NCNode number(GaussianRational c);
};

NCExpr nc_normalize(const NCNode& tree, int dim);
NCExpr nc_commutator(const NCExpr& x, const NCExpr& y);

/// Q(a) or Q(a*).
NCExpr q_of_a(const ExactPoly& q, bool conjugated);

/// ad_{a_j}(c) = [a_j, c] and ad_a^alpha.
NCExpr ad_a(int j, const NCExpr& c);
NCExpr ad_a(const MultiIndex& alpha, const NCExpr& c);

enum class Side { right, left };
/// [Q(a), c] via sum_{alpha != 0} (alpha!)^-1 ad_a^alpha(c) d^alpha Q(a) (right), or the
/// mirrored form with sign (-1)^{|alpha|+1} and derivatives on the left.
NCExpr taylor_commutator(const ExactPoly& q, const NCExpr& c, Side side);

/// sum_gamma binom(alpha, gamma) ad^{alpha-gamma}(c) ad^gamma(e).
NCExpr leibniz_expand(const MultiIndex& alpha, const NCExpr& c, const NCExpr& e);

/// A product c * (a*)^astar * P * a^a, not in normal order.
struct SandwichTerm {
  GaussianRational coeff;
  MultiIndex astar;
  CoeffMonomial symbols;
  MultiIndex a;
};

NCExpr normalize_sandwich(const std::vector<SandwichTerm>& terms, int dim);

/// [Q(a), Q(a*)] assembled from the multi-level coefficient formula.
NCExpr commutator_general(const ExactPoly& q, int dim);
/// The leading part F, term by term in its literal operator ordering.
std::vector<SandwichTerm> commutator_F_terms(const ExactPoly& q, int dim);
NCExpr commutator_F(const ExactPoly& q, int dim);
/// general - F. Throws if a term lacks a differentiated symbol.
NCExpr commutator_E(const ExactPoly& q, int dim);
/// Brute force [Q(a), Q(a*)].
NCExpr commutator_brute(const ExactPoly& q, int dim);

/// C_J = ((sum e_{j_k})!)^-1 prod_l zeta(sum_{k>=l} e_{j_k}); entries 1-based.
Rational perm_coefficient(const std::vector<int>& J);

/// [Q(a), V1] = sum_{alpha != 0} (alpha!)^-1 (D^alpha V1) d^alpha Q(a).
NCExpr qv1_expand(const ExactPoly& q, int dim, bool v1_constant = false);
/// The V1 symbol itself (or the declared constant).
NCExpr v1_symbol(int dim, bool v1_constant = false);

/// Number of P symbols in each term (sigma-degree).
std::vector<int> p_degrees(const NCExpr& e);

}  // namespace ellipdecay
