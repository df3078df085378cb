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

// Utility families u = (u_S) applied to coalition excesses.
//
// Affine families u_S(t) = a_S t + b_S with a_S > 0 are handled exactly.
// General families are strictly increasing black boxes evaluated in double
// precision; values crossing into the library are converted to the exact
// rational of the double, and results built on them are flagged approximate.

#ifndef UCOOP_UTILITY_H_
#define UCOOP_UTILITY_H_

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "ucoop/game.h"
#include "ucoop/lp.h"
#include "ucoop/rational.h"

namespace ucoop {

// Round-trip tolerance for general-mode inverses.
inline constexpr double kInverseTolerance = 1e-12;

struct AffineCoefficients {
  Rational scale;  // a_S > 0
  Rational shift;  // b_S
};

class AffineUtility {
 public:
  enum class Kind { kIdentity, kPercapita, kReciprocalPercapita, kShift, kQWeighted };

  static AffineUtility Identity();
  // u_S(t) = t / |S|.
  static AffineUtility Percapita();
  // u_S(t) = |S| t.
  static AffineUtility ReciprocalPercapita();
  // u_S(t) = t + c.
  static AffineUtility Shift(Rational c);
  // u_S(t) = t / q(S); coalitions absent from `weights` use `default_weight`.
  // Throws InvalidUtility on a non-positive weight.
  static AffineUtility QWeighted(std::map<Coalition, Rational> weights,
                                 std::optional<Rational> default_weight);

  Kind kind() const { return kind_; }
  const Rational& shift_constant() const { return shift_; }
  const std::map<Coalition, Rational>& weights() const { return weights_; }
  const std::optional<Rational>& default_weight() const {
    return default_weight_;
  }

  AffineCoefficients Coefficients(Coalition s) const;
  std::string Name() const;

 private:
  explicit AffineUtility(Kind kind) : kind_(kind) {}

  Kind kind_;
  Rational shift_;
  std::map<Coalition, Rational> weights_;
  std::optional<Rational> default_weight_;
};

// Common range R_u relative to zero.
enum class RangeClass { kContainsZero, kNegative, kPositive };

const char* ToString(RangeClass rc);

class GeneralUtility {
 public:
  using Evaluator = std::function<double(Coalition, double)>;

  // Range (lo, hi) is declared, not inferred; endpoints may be infinite.
  // Spot-checks strict monotonicity and the inverse round trip on a few
  // coalitions and throws InvalidUtility on failure.
  GeneralUtility(std::string name, Evaluator forward, Evaluator inverse,
                 double range_lo, double range_hi,
                 const std::vector<Coalition>& probe_coalitions = {});

  // Built-in transforms f applied to t (inner "identity") or t/|S| (inner
  // "percapita"): "arctan", "tanh", "cubic", "exp", "negexp" (= -exp(-t)).
  static GeneralUtility Named(const std::string& function,
                              const std::string& inner,
                              const std::vector<Coalition>& probes = {});

  const std::string& name() const { return name_; }
  double range_lo() const { return lo_; }
  double range_hi() const { return hi_; }
  bool InRange(double y) const { return y > lo_ && y < hi_; }
  double Forward(Coalition s, double t) const { return forward_(s, t); }
  double Inverse(Coalition s, double y) const { return inverse_(s, y); }
  RangeClass range_class() const;

 private:
  std::string name_;
  Evaluator forward_;
  Evaluator inverse_;
  double lo_;
  double hi_;
};

class UtilityFamily {
 public:
  UtilityFamily(AffineUtility affine);    // NOLINT: implicit by intent
  UtilityFamily(GeneralUtility general);  // NOLINT

  bool is_affine() const { return std::holds_alternative<AffineUtility>(u_); }
  // Throws GeneralUtilityUnsupported for general families.
  const AffineUtility& affine() const;
  const GeneralUtility& general() const;
  RangeClass range_class() const;
  std::string Name() const;

  // u_S(t).
  Rational Apply(Coalition s, const Rational& t) const;
  // u_S^{-1}(y); throws OutOfRange if y is outside R_u.
  Rational Inverse(Coalition s, const Rational& y) const;

 private:
  std::variant<AffineUtility, GeneralUtility> u_;
};

// u_S(v(S) - x(S)). Throws TrivialCoalition for ∅ and N.
Rational UExcess(const UtilityFamily& u, const Game& game, Coalition s,
                 const Payoff& x);

// Row over (x_1..x_n[, t]) encoding u_S(v(S) - x(S)) <= t:
//   t variable:  a_S x(S) + t >= a_S v(S) + b_S
//   t fixed:     x(S) >= v(S) - (t - b_S) / a_S
LpRow LinearizedConstraint(const AffineUtility& u, const Game& game,
                           Coalition s, bool t_is_variable,
                           const std::optional<Rational>& t_value = {});

}  // namespace ucoop

#endif  // UCOOP_UTILITY_H_
