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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellipdecay/multipoly.hpp"
#include "ellipdecay/unipoly.hpp"

namespace ellipdecay {

/// Maps an identifier such as "x2" to a variable slot, or nullopt if unknown.
/// May throw ValidationError for recognized-but-invalid names (index out of range).
using VariableResolver = std::function<std::optional<int>(const std::string&)>;

/// Generic parse result: exponent vector over `nvars` slots -> exact coefficient.
using RawTerms = std::map<std::vector<int>, GaussianRational>;

/// Parses a polynomial expression: sums, products (explicit '*' or juxtaposition),
/// nonnegative integer powers, parentheses, rational/decimal coefficients and the
/// imaginary unit `i`.
RawTerms parse_expression(const std::string& text, int nvars, const VariableResolver& resolve);

/// Resolver for names `<prefix>1 .. <prefix>dim`.
VariableResolver indexed_variables(std::string prefix, int dim, int slot_offset = 0);

/// Polynomial in x1..xd.
ExactPoly parse_poly(const std::string& text, int dim);
/// Canonical text: highest graded term first, `x<i>^<k>` factors joined by '*'.
std::string format_poly(const ExactPoly& p, const std::string& prefix = "x");

/// Real univariate polynomial in one named variable (default z).
UniPoly parse_unipoly(const std::string& text, const std::string& var = "z");
std::string format_unipoly(const UniPoly& p, const std::string& var = "z");

/// Formats raw terms with one variable name per slot.
std::string format_terms(const RawTerms& terms, const std::vector<std::string>& names);

/// {"dim": d, "terms": [{"alpha": [...], "re": "p/q", "im": "p/q"}]}
nlohmann::json poly_to_json(const ExactPoly& p);
/// Accepts re/im as numbers (converted exactly from double) or rational strings.
ExactPoly poly_from_json(const nlohmann::json& j);

}  // namespace ellipdecay
