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

#include "quditzx/phase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace quditzx {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kCanonTol = 1e-12;

double canon_radians(double r) {
  double x = std::fmod(r, kTwoPi);
  if (x < 0) x += kTwoPi;
  if (x >= kTwoPi - kCanonTol) x = 0.0;
  return x;
}

}  // namespace

Turn Turn::exact(const Rational& turns) {
  Turn t;
  t.exact_ = true;
  t.q_ = turns.mod1();
  return t;
}

Turn Turn::approx(double radians) {
  if (!std::isfinite(radians))
    throw std::invalid_argument("non-finite phase angle");
  Turn t;
  t.exact_ = false;
  t.rad_ = canon_radians(radians);
  return t;
}

Turn Turn::from_radians(double radians) {
  if (radians == 0.0) return Turn();
  return approx(radians);
}

bool Turn::is_zero() const {
  return exact_ ? q_.num() == 0 : rad_ == 0.0;
}

const Rational& Turn::turns() const {
  if (!exact_) throw std::logic_error("approximate turn has no exact value");
  return q_;
}

double Turn::radians() const { return exact_ ? q_.to_double() * kTwoPi : rad_; }

Turn Turn::operator+(const Turn& o) const {
  if (exact_ && o.exact_) return exact(q_ + o.q_);
  return approx(radians() + o.radians());
}

Turn Turn::operator-() const {
  if (exact_) return exact(-q_);
  return approx(-rad_);
}

bool Turn::operator==(const Turn& o) const {
  if (exact_ != o.exact_) return false;
  return exact_ ? q_ == o.q_ : rad_ == o.rad_;
}

bool Turn::same_angle(const Turn& o, double tol) const {
  if (exact_ && o.exact_) return q_ == o.q_;
  double d = std::abs(radians() - o.radians());
  return std::min(d, kTwoPi - d) <= tol;
}

std::string Turn::str() const {
  if (exact_) return q_.str();
  std::ostringstream os;
  os.precision(17);
  os << rad_ << "rad";
  return os.str();
}

PhaseVector::PhaseVector(unsigned D) : dim_(D), entries_(D > 0 ? D - 1 : 0) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
}

PhaseVector::PhaseVector(unsigned D, std::vector<Turn> entries)
    : dim_(D), entries_(std::move(entries)) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  if (entries_.size() != D - 1)
    throw DimensionMismatch(
        "phase vector for D=" + std::to_string(D) + " needs " +
        std::to_string(D - 1) + " entries, got " +
        std::to_string(entries_.size()));
}

PhaseVector PhaseVector::from_turns(unsigned D, const std::vector<Rational>& t) {
  std::vector<Turn> e;
  for (const auto& r : t) e.push_back(Turn::exact(r));
  return PhaseVector(D, std::move(e));
}

PhaseVector PhaseVector::from_radians(unsigned D, const std::vector<double>& r) {
  std::vector<Turn> e;
  for (double x : r) e.push_back(Turn::from_radians(x));
  return PhaseVector(D, std::move(e));
}

PhaseVector PhaseVector::shift(unsigned D, int64_t s) {
  std::vector<Turn> e;
  for (unsigned k = 1; k < D; ++k) e.push_back(Turn::exact(s * int64_t(k), D));
  return PhaseVector(D, std::move(e));
}

Turn PhaseVector::alpha(unsigned k) const {
  if (k >= dim_) throw std::out_of_range("phase index out of range");
  return k == 0 ? Turn() : entries_[k - 1];
}

bool PhaseVector::is_exact() const {
  for (const auto& t : entries_)
    if (!t.is_exact()) return false;
  return true;
}

bool PhaseVector::is_zero() const {
  for (const auto& t : entries_)
    if (!t.is_zero()) return false;
  return true;
}

std::optional<unsigned> PhaseVector::shift_index() const {
  if (!is_exact()) return std::nullopt;
  const Rational& a1 = entries_[0].turns();
  if ((a1 * Rational(dim_)).den() != 1) return std::nullopt;
  int64_t s = (a1 * Rational(dim_)).num();
  if (*this != shift(dim_, s)) return std::nullopt;
  return unsigned(s);
}

std::string PhaseVector::str() const {
  std::string s = "(";
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].str();
  }
  return s + ")";
}

PhaseVector phase_add(const PhaseVector& a, const PhaseVector& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("phase_add on different dimensions");
  std::vector<Turn> e;
  for (size_t i = 0; i < a.entries().size(); ++i)
    e.push_back(a.entries()[i] + b.entries()[i]);
  return PhaseVector(a.dim(), std::move(e));
}

PhaseVector phase_invert(const PhaseVector& a) {
  std::vector<Turn> e;
  for (const auto& t : a.entries()) e.push_back(-t);
  return PhaseVector(a.dim(), std::move(e));
}

PhaseVector phase_neg_transform(const PhaseVector& a, unsigned k) {
  const unsigned D = a.dim();
  if (k >= D)
    throw std::out_of_range("Neg index " + std::to_string(k) +
                            " outside 0.." + std::to_string(D - 1));
  std::vector<Turn> e;
  Turn ak = a.alpha(k);
  for (unsigned r = 1; r < D; ++r) e.push_back(a.alpha((r + k) % D) - ak);
  return PhaseVector(D, std::move(e));
}

json turn_to_json(const Turn& t) {
  if (t.is_exact()) return {{"exact", {t.turns().num(), t.turns().den()}}};
  return {{"approx", t.radians()}};
}

Turn turn_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("turn must be an object");
  if (j.contains("exact")) {
    const auto& e = j.at("exact");
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("exact turn must be [num, den]");
    int64_t den = e[1].get<int64_t>();
    if (den <= 0) throw std::invalid_argument("exact turn needs den > 0");
    return Turn::exact(e[0].get<int64_t>(), den);
  }
  if (j.contains("approx")) return Turn::approx(j.at("approx").get<double>());
  throw std::invalid_argument("turn needs \"exact\" or \"approx\"");
}

json phase_to_json(const PhaseVector& p) {
  json a = json::array();
  for (const auto& t : p.entries()) a.push_back(turn_to_json(t));
  return a;
}

PhaseVector phase_from_json(unsigned D, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("phase must be an array");
  std::vector<Turn> e;
  for (const auto& t : j) e.push_back(turn_from_json(t));
  return PhaseVector(D, std::move(e));
}

}  // namespace quditzx
