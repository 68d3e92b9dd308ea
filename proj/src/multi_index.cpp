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

#include "ellipdecay/multi_index.hpp"

#include <algorithm>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

int MultiIndex::support_size() const {
  int n = 0;
  for (int v : e_) n += v > 0 ? 1 : 0;
  return n;
}

mpz_class MultiIndex::factorial() const {
  mpz_class f = 1;
  for (int v : e_) {
    mpz_class part;
    mpz_fac_ui(part.get_mpz_t(), static_cast<unsigned long>(v));
    f *= part;
  }
  return f;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  for (std::size_t j = 0; j < e_.size(); ++j)
    if (e_[j] > other.e_[j]) return false;
  return true;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& o) {
  if (o.e_.size() != e_.size()) throw ValidationError("multi-index dimension mismatch");
  for (std::size_t j = 0; j < e_.size(); ++j) e_[j] += o.e_[j];
  return *this;
}

MultiIndex& MultiIndex::operator-=(const MultiIndex& o) {
  if (o.e_.size() != e_.size()) throw ValidationError("multi-index dimension mismatch");
  for (std::size_t j = 0; j < e_.size(); ++j) {
    e_[j] -= o.e_[j];
    if (e_[j] < 0) throw ValidationError("negative multi-index entry");
  }
  return *this;
}

mpz_class binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  if (!gamma.divides(alpha)) return 0;
  mpz_class b = 1;
  for (int j = 0; j < alpha.dim(); ++j) {
    mpz_class part;
    mpz_bin_uiui(part.get_mpz_t(), static_cast<unsigned long>(alpha[j]),
                 static_cast<unsigned long>(gamma[j]));
    b *= part;
  }
  return b;
}

namespace {

void fill_indices(int dim, int slot, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (slot == dim) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[slot] = v;
    fill_indices(dim, slot + 1, remaining - v, cur, out);
  }
  cur[slot] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total) {
  std::vector<MultiIndex> out;
  if (max_total < 0) return out;
  MultiIndex cur(dim);
  fill_indices(dim, 0, max_total, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  for (auto& g : multi_indices_up_to(alpha.dim(), alpha.total()))
    if (g.divides(alpha)) out.push_back(g);
  return out;
}

std::string to_string(const MultiIndex& m) {
  std::string s = "(";
  for (int j = 0; j < m.dim(); ++j) {
    if (j) s += ",";
    s += std::to_string(m[j]);
  }
  return s + ")";
}

}  // namespace ellipdecay
