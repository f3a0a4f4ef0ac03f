// Copyright 2025 The quditzx Authors
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

#include "quditzx/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace quditzx {

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::domain_error("Rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::mod1() const {
  int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Rational(r, den_);
}

Rational Rational::operator+(const Rational& o) const {
  int64_t l = std::lcm(den_, o.den_);
  return Rational(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("Rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

bool snap_rational(double x, int64_t den, double tol, Rational& out) {
  double k = std::round(x * double(den));
  if (std::abs(x - k / double(den)) > tol) return false;
  out = Rational(int64_t(k), den);
  return true;
}

}  // namespace quditzx
