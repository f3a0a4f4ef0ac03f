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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "quditzx/rational.hpp"

namespace quditzx {

using json = nlohmann::json;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * One phase angle. Exact turns are reduced fractions in [0,1); approximate
 * turns are radians in [0,2pi).
 */
class Turn {
 public:
  Turn() = default;
  static Turn exact(const Rational& turns);
  static Turn exact(int64_t num, int64_t den) {
    return exact(Rational(num, den));
  }
  static Turn approx(double radians);
  /** Radians, but an exact zero when the input is exactly 0. */
  static Turn from_radians(double radians);

  bool is_exact() const { return exact_; }
  bool is_zero() const;
  /** Throws std::logic_error for approximate turns. */
  const Rational& turns() const;
  double radians() const;

  Turn operator+(const Turn& o) const;
  Turn operator-() const;
  Turn operator-(const Turn& o) const { return *this + (-o); }

  /** Structural equality: exactness and value must both agree. */
  bool operator==(const Turn& o) const;
  /** Equality of angles regardless of representation. */
  bool same_angle(const Turn& o, double tol = 1e-12) const;

  std::string str() const;

 private:
  bool exact_ = true;
  Rational q_{0};
  double rad_ = 0.0;
};

/** The D-1 phases alpha_1..alpha_{D-1} of a spider. */
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(unsigned D);
  PhaseVector(unsigned D, std::vector<Turn> entries);

  static PhaseVector from_turns(unsigned D, const std::vector<Rational>& t);
  static PhaseVector from_radians(unsigned D, const std::vector<double>& r);
  /** alpha_k = s*k/D turns. */
  static PhaseVector shift(unsigned D, int64_t s);

  unsigned dim() const { return dim_; }
  const std::vector<Turn>& entries() const { return entries_; }
  /** alpha_k for k in 0..D-1, with alpha_0 = 0. */
  Turn alpha(unsigned k) const;

  bool is_exact() const;
  bool is_zero() const;
  /** s when every alpha_k equals s*k/D exactly. */
  std::optional<unsigned> shift_index() const;

  bool operator==(const PhaseVector& o) const {
    return dim_ == o.dim_ && entries_ == o.entries_;
  }
  bool operator!=(const PhaseVector& o) const { return !(*this == o); }

  std::string str() const;

 private:
  unsigned dim_ = 0;
  std::vector<Turn> entries_;
};

PhaseVector phase_add(const PhaseVector& a, const PhaseVector& b);
PhaseVector phase_invert(const PhaseVector& a);
/** Neg_k(a)_r = a_{(r+k) mod D} - a_k; k = 0 is the identity. */
PhaseVector phase_neg_transform(const PhaseVector& a, unsigned k);

json turn_to_json(const Turn& t);
Turn turn_from_json(const json& j);
json phase_to_json(const PhaseVector& p);
PhaseVector phase_from_json(unsigned D, const json& j);

}  // namespace quditzx
