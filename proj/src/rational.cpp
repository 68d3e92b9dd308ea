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

#include "ellipdecay/rational.hpp"

#include <cctype>
#include <cmath>

#include "ellipdecay/errors.hpp"

namespace ellipdecay {

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw ValidationError("non-finite value cannot be made exact");
  Rational r(v);  // mpq_set_d is exact
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty number");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (sgn(den) == 0) throw ValidationError("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  mpz_class digits = 0;
  long frac_digits = 0;
  bool any = false, dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (dot) ++frac_digits;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw ValidationError("malformed number '" + text + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    try {
      exponent = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw ValidationError("malformed exponent in '" + text + "'");
    }
    pos += used;
  }
  if (pos != text.size()) throw ValidationError("malformed number '" + text + "'");
  exponent -= frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational norm = o.re * o.re + o.im * o.im;
  if (sgn(norm) == 0) throw ValidationError("division by zero");
  Rational r = (re * o.re + im * o.im) / norm;
  im = (im * o.re - re * o.im) / norm;
  re = std::move(r);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re);
  std::string imag;
  if (z.im == 1) {
    imag = "i";
  } else if (z.im == -1) {
    imag = "-i";
  } else {
    imag = to_string(z.im) + "i";
  }
  if (sgn(z.re) == 0) return imag;
  return "(" + to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + imag + ")";
}

}  // namespace ellipdecay
