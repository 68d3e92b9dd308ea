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

#include "ellipdecay/poly_text.hpp"

#include <algorithm>
#include <cctype>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

namespace {

RawTerms raw_mul(const RawTerms& a, const RawTerms& b) {
  RawTerms out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e = ea;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      auto& slot = out[e];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(e);
    }
  return out;
}

void raw_add(RawTerms& a, const RawTerms& b, int sign) {
  for (const auto& [e, c] : b) {
    auto& slot = a[e];
    slot += sign > 0 ? c : -c;
    if (slot.is_zero()) a.erase(e);
  }
}

class Parser {
 public:
  Parser(const std::string& text, int nvars, const VariableResolver& resolve)
      : s_(text), n_(nvars), resolve_(resolve) {}

  RawTerms parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ValidationError("empty polynomial text");
    RawTerms r = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RawTerms constant(const GaussianRational& c) const {
    RawTerms t;
    if (!c.is_zero()) t.emplace(std::vector<int>(static_cast<std::size_t>(n_), 0), c);
    return t;
  }

  RawTerms sum() {
    RawTerms acc;
    int sign = 1;
    if (peek('+') || peek('-')) sign = s_[pos_++] == '-' ? -1 : 1;
    raw_add(acc, product(), sign);
    while (peek('+') || peek('-')) {
      sign = s_[pos_++] == '-' ? -1 : 1;
      raw_add(acc, product(), sign);
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  RawTerms product() {
    RawTerms acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = raw_mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        RawTerms den = power();
        if (den.size() != 1 || std::any_of(den.begin()->first.begin(), den.begin()->first.end(), [](int e) { return e != 0; }))
          fail("division only by a nonzero constant");
        GaussianRational inv = GaussianRational(1) / den.begin()->second;
        for (auto& [e, c] : acc) c *= inv;
      } else if (starts_factor()) {
        acc = raw_mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  RawTerms power() {
    RawTerms base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("malformed exponent");
      int k = std::stoi(s_.substr(start, pos_ - start));
      RawTerms out = constant(GaussianRational(1));
      for (int j = 0; j < k; ++j) out = raw_mul(out, base);
      return out;
    }
    return base;
  }

  RawTerms atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a term");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RawTerms inner = sum();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto slot = resolve_(name)) {
        std::vector<int> e(static_cast<std::size_t>(n_), 0);
        e[static_cast<std::size_t>(*slot)] = 1;
        RawTerms t;
        t.emplace(std::move(e), GaussianRational(1));
        return t;
      }
      if (name == "i" || name == "I") return constant(GaussianRational::i());
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }

  GaussianRational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    // exponent only when followed by a digit (optionally signed)
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    Rational v = parse_rational(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) fail("malformed rational");
      Rational den = parse_rational(s_.substr(ds, pos_ - ds));
      if (sgn(den) == 0) fail("zero denominator");
      v /= den;
    }
    return GaussianRational(v);
  }

  const std::string& s_;
  int n_;
  const VariableResolver& resolve_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const std::vector<int>& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[j];
    if (e[j] > 1) out += "^" + std::to_string(e[j]);
  }
  return out;
}

}  // namespace

RawTerms parse_expression(const std::string& text, int nvars, const VariableResolver& resolve) {
  return Parser(text, nvars, resolve).parse();
}

VariableResolver indexed_variables(std::string prefix, int dim, int slot_offset) {
  return [prefix = std::move(prefix), dim, slot_offset](const std::string& name) -> std::optional<int> {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    std::string digits = name.substr(prefix.size());
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    int idx = std::stoi(digits);
    if (idx < 1 || idx > dim)
      throw ValidationError("variable '" + name + "' out of range for dimension " + std::to_string(dim));
    return slot_offset + idx - 1;
  };
}

ExactPoly parse_poly(const std::string& text, int dim) {
  ExactPoly p(dim);
  for (auto& [e, c] : parse_expression(text, dim, indexed_variables("x", dim))) p.add_term(MultiIndex(e), c);
  return p;
}

std::string format_terms(const RawTerms& terms, const std::vector<std::string>& names) {
  if (terms.empty()) return "0";
  // graded order, highest first
  std::vector<std::pair<MultiIndex, GaussianRational>> sorted;
  for (const auto& [e, c] : terms) sorted.emplace_back(MultiIndex(e), c);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    std::string mono = monomial_text(m.entries(), names);
    bool negative = false;
    std::string coeff;
    if (c.is_real()) {
      negative = sgn(c.re) < 0;
      Rational a = abs(c.re);
      coeff = to_string(a);
      if (a == 1 && !mono.empty()) coeff.clear();
    } else if (sgn(c.re) == 0) {
      negative = sgn(c.im) < 0;
      Rational a = abs(c.im);
      coeff = (a == 1 ? std::string() : to_string(a)) + "i";
    } else {
      coeff = to_string(c);
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (coeff.empty()) {
      out += mono;
    } else if (mono.empty()) {
      out += coeff;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

std::string format_poly(const ExactPoly& p, const std::string& prefix) {
  RawTerms raw;
  for (const auto& [a, c] : p.terms()) raw.emplace(a.entries(), c);
  std::vector<std::string> names;
  for (int j = 1; j <= p.dim(); ++j) names.push_back(prefix + std::to_string(j));
  return format_terms(raw, names);
}

UniPoly parse_unipoly(const std::string& text, const std::string& var) {
  VariableResolver r = [&var](const std::string& name) -> std::optional<int> {
    if (name == var) return 0;
    return std::nullopt;
  };
  std::vector<Rational> c;
  for (auto& [e, v] : parse_expression(text, 1, r)) {
    if (!v.is_real()) throw ValidationError("univariate polynomial must have real coefficients");
    auto k = static_cast<std::size_t>(e[0]);
    if (c.size() <= k) c.resize(k + 1);
    c[k] = v.re;
  }
  return UniPoly(std::move(c));
}

std::string format_unipoly(const UniPoly& p, const std::string& var) {
  RawTerms raw;
  for (int k = 0; k <= p.degree(); ++k)
    if (sgn(p.coefficient(k)) != 0) raw.emplace(std::vector<int>{k}, GaussianRational(p.coefficient(k)));
  return format_terms(raw, {var});
}

nlohmann::json poly_to_json(const ExactPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : p.terms())
    terms.push_back({{"alpha", a.entries()}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return {{"dim", p.dim()}, {"terms", terms}};
}

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_null()) return 0;
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return rational_from_double(v.get<double>());
  throw ValidationError("coefficient must be a number or a rational string");
}

}  // namespace

ExactPoly poly_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j.contains("terms")) throw ValidationError("polynomial JSON needs 'dim' and 'terms'");
  const int dim = j.at("dim").get<int>();
  ExactPoly p(dim);
  for (const auto& t : j.at("terms")) {
    auto alpha = t.at("alpha").get<std::vector<int>>();
    if (static_cast<int>(alpha.size()) != dim) throw ValidationError("term alpha has wrong length");
    for (int v : alpha)
      if (v < 0) throw ValidationError("negative exponent in JSON term");
    p.add_term(MultiIndex(alpha), GaussianRational(json_rational(t.value("re", nlohmann::json())),
                                                   json_rational(t.value("im", nlohmann::json()))));
  }
  return p;
}

}  // namespace ellipdecay
