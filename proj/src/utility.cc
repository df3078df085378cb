// Copyright 2026 The ucoop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ucoop/utility.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "ucoop/errors.h"

namespace ucoop {

AffineUtility AffineUtility::Identity() { return AffineUtility(Kind::kIdentity); }

AffineUtility AffineUtility::Percapita() {
  return AffineUtility(Kind::kPercapita);
}

AffineUtility AffineUtility::ReciprocalPercapita() {
  return AffineUtility(Kind::kReciprocalPercapita);
}

AffineUtility AffineUtility::Shift(Rational c) {
  AffineUtility u(Kind::kShift);
  u.shift_ = std::move(c);
  return u;
}

AffineUtility AffineUtility::QWeighted(std::map<Coalition, Rational> weights,
                                       std::optional<Rational> default_weight) {
  for (const auto& [s, q] : weights) {
    if (q <= 0) {
      throw InvalidUtility("q(" + s.ToString() + ") = " + ToString(q) +
                           " is not positive");
    }
  }
  if (default_weight && *default_weight <= 0) {
    throw InvalidUtility("default weight must be positive");
  }
  AffineUtility u(Kind::kQWeighted);
  u.weights_ = std::move(weights);
  u.default_weight_ = std::move(default_weight);
  return u;
}

AffineCoefficients AffineUtility::Coefficients(Coalition s) const {
  switch (kind_) {
    case Kind::kIdentity:
      return {1, 0};
    case Kind::kPercapita:
      return {Rational(1, s.size()), 0};
    case Kind::kReciprocalPercapita:
      return {s.size(), 0};
    case Kind::kShift:
      return {1, shift_};
    case Kind::kQWeighted: {
      auto it = weights_.find(s);
      if (it != weights_.end()) return {1 / it->second, 0};
      if (!default_weight_) {
        throw InvalidUtility("no weight for coalition " + s.ToString());
      }
      return {1 / *default_weight_, 0};
    }
  }
  throw InternalError("unknown affine utility kind");
}

std::string AffineUtility::Name() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "identity";
    case Kind::kPercapita:
      return "percapita";
    case Kind::kReciprocalPercapita:
      return "reciprocal-percapita";
    case Kind::kShift:
      return "shift";
    case Kind::kQWeighted:
      return "q-weighted";
  }
  return "affine";
}

const char* ToString(RangeClass rc) {
  switch (rc) {
    case RangeClass::kContainsZero:
      return "contains-zero";
    case RangeClass::kNegative:
      return "negative";
    case RangeClass::kPositive:
      return "positive";
  }
  return "unknown";
}

GeneralUtility::GeneralUtility(std::string name, Evaluator forward,
                               Evaluator inverse, double range_lo,
                               double range_hi,
                               const std::vector<Coalition>& probe_coalitions)
    : name_(std::move(name)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      lo_(range_lo),
      hi_(range_hi) {
  if (!(lo_ < hi_)) throw InvalidUtility("empty range for " + name_);
  std::vector<Coalition> probes = probe_coalitions;
  if (probes.empty()) probes.push_back(Coalition(1));
  constexpr double kSamples[] = {-3.0, -1.0, -0.25, 0.0, 0.25, 1.0, 3.0};
  for (Coalition s : probes) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : kSamples) {
      const double y = forward_(s, t);
      if (!(y > prev)) {
        throw InvalidUtility(name_ + " is not strictly increasing on " +
                             s.ToString());
      }
      if (!InRange(y)) {
        throw InvalidUtility(name_ + " leaves its declared range");
      }
      const double back = inverse_(s, y);
      if (std::abs(back - t) > kInverseTolerance * std::max(1.0, std::abs(t))) {
        throw InvalidUtility(name_ + " inverse does not round-trip");
      }
      prev = y;
    }
  }
}

GeneralUtility GeneralUtility::Named(const std::string& function,
                                     const std::string& inner,
                                     const std::vector<Coalition>& probes) {
  std::function<double(double)> f, finv;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  if (function == "arctan") {
    f = [](double t) { return std::atan(t); };
    finv = [](double y) { return std::tan(y); };
    lo = -std::numbers::pi / 2;
    hi = std::numbers::pi / 2;
  } else if (function == "tanh") {
    f = [](double t) { return std::tanh(t); };
    finv = [](double y) { return std::atanh(y); };
    lo = -1;
    hi = 1;
  } else if (function == "cubic") {
    f = [](double t) { return t * t * t; };
    finv = [](double y) { return std::cbrt(y); };
  } else if (function == "exp") {
    f = [](double t) { return std::exp(t); };
    finv = [](double y) { return std::log(y); };
    lo = 0;
  } else if (function == "negexp") {
    f = [](double t) { return -std::exp(-t); };
    finv = [](double y) { return -std::log(-y); };
    hi = 0;
  } else {
    throw InvalidUtility("unknown general utility function \"" + function +
                         "\"");
  }
  Evaluator fwd, inv;
  if (inner == "identity") {
    fwd = [f](Coalition, double t) { return f(t); };
    inv = [finv](Coalition, double y) { return finv(y); };
  } else if (inner == "percapita") {
    fwd = [f](Coalition s, double t) { return f(t / s.size()); };
    inv = [finv](Coalition s, double y) { return finv(y) * s.size(); };
  } else {
    throw InvalidUtility("unknown inner transform \"" + inner + "\"");
  }
  return GeneralUtility(function + "(" + inner + ")", std::move(fwd),
                        std::move(inv), lo, hi, probes);
}

RangeClass GeneralUtility::range_class() const {
  if (hi_ <= 0) return RangeClass::kNegative;
  if (lo_ >= 0) return RangeClass::kPositive;
  return RangeClass::kContainsZero;
}

UtilityFamily::UtilityFamily(AffineUtility affine) : u_(std::move(affine)) {}
UtilityFamily::UtilityFamily(GeneralUtility general) : u_(std::move(general)) {}

const AffineUtility& UtilityFamily::affine() const {
  if (!is_affine()) {
    throw GeneralUtilityUnsupported("operation requires an affine utility");
  }
  return std::get<AffineUtility>(u_);
}

const GeneralUtility& UtilityFamily::general() const {
  return std::get<GeneralUtility>(u_);
}

RangeClass UtilityFamily::range_class() const {
  return is_affine() ? RangeClass::kContainsZero : general().range_class();
}

std::string UtilityFamily::Name() const {
  return is_affine() ? affine().Name() : general().name();
}

Rational UtilityFamily::Apply(Coalition s, const Rational& t) const {
  if (is_affine()) {
    const auto [a, b] = affine().Coefficients(s);
    return a * t + b;
  }
  const double y = general().Forward(s, ToDouble(t));
  if (!std::isfinite(y)) throw OutOfRange("utility value overflowed");
  return FromDouble(y);
}

Rational UtilityFamily::Inverse(Coalition s, const Rational& y) const {
  if (is_affine()) {
    const auto [a, b] = affine().Coefficients(s);
    return (y - b) / a;
  }
  const double yd = ToDouble(y);
  if (!general().InRange(yd)) {
    throw OutOfRange(ToString(y) + " is outside the utility range");
  }
  const double t = general().Inverse(s, yd);
  if (!std::isfinite(t)) throw OutOfRange("inverse overflowed");
  return FromDouble(t);
}

Rational UExcess(const UtilityFamily& u, const Game& game, Coalition s,
                 const Payoff& x) {
  if (s.empty() || s == game.grand()) {
    throw TrivialCoalition(s.ToString() + " has no utility");
  }
  return u.Apply(s, game.Excess(s, x));
}

LpRow LinearizedConstraint(const AffineUtility& u, const Game& game,
                           Coalition s, bool t_is_variable,
                           const std::optional<Rational>& t_value) {
  const int n = game.num_players();
  const auto [a, b] = u.Coefficients(s);
  LpRow row;
  row.relation = Relation::kGreaterEqual;
  row.coeffs.assign(t_is_variable ? n + 1 : n, Rational(0));
  if (t_is_variable) {
    for (int i = 0; i < n; ++i) {
      if (s.Contains(i)) row.coeffs[i] = a;
    }
    row.coeffs[n] = 1;
    row.rhs = a * game.Value(s) + b;
  } else {
    if (!t_value) throw InvalidUtility("fixed t requires a value");
    for (int i = 0; i < n; ++i) {
      if (s.Contains(i)) row.coeffs[i] = 1;
    }
    row.rhs = game.Value(s) - (*t_value - b) / a;
  }
  return row;
}

}  // namespace ucoop
