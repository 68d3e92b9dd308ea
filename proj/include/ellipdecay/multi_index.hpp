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
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "ellipdecay/rational.hpp"

namespace ellipdecay {

/// A d-tuple of nonnegative exponents. Ordered graded-lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : e_(static_cast<std::size_t>(dim), 0) {}
  MultiIndex(std::initializer_list<int> entries) : e_(entries) {}
  explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {}

  static MultiIndex unit(int dim, int k) {
    MultiIndex m(dim);
    m.e_[static_cast<std::size_t>(k)] = 1;
    return m;
  }

  int dim() const { return static_cast<int>(e_.size()); }
  int operator[](int j) const { return e_[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return e_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& entries() const { return e_; }

  int total() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  bool is_zero() const { return total() == 0; }
  /// Number of strictly positive entries.
  int support_size() const;
  /// alpha! = product of entry factorials.
  mpz_class factorial() const;

  /// Componentwise <=.
  bool divides(const MultiIndex& other) const;

  MultiIndex& operator+=(const MultiIndex& o);
  MultiIndex& operator-=(const MultiIndex& o);
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return a.e_ <=> b.e_;
  }

 private:
  std::vector<int> e_;
};

/// binom(alpha, gamma) = prod_j binom(alpha_j, gamma_j); zero unless gamma <= alpha.
mpz_class binomial(const MultiIndex& alpha, const MultiIndex& gamma);

/// Every multi-index of dimension dim with total degree <= max_total, in graded order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total);

/// Every gamma with gamma <= alpha componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha);

std::string to_string(const MultiIndex& m);

}  // namespace ellipdecay
