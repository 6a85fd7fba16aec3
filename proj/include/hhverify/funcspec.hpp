#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hhverify/theorem.hpp"

namespace hhv {

using ScalarFn = std::function<double(double)>;

namespace family {
struct Power {
  int n;  // >= 1
};
struct Exp {
  double c;  // > 0
};
struct PolyNonneg {
  std::vector<double> coeffs;  // c0 + c1 x + ..., all >= 0
};
struct Affine {
  double m;
  double k;
};
struct Constant {
  double k;
};
/// Hand-built test handle: `eval(x, order)` for order 0..3. Not parseable and
/// never produced by the generator.
struct Custom {
  std::string label;
  std::function<double(double, int)> eval;
};
}  // namespace family

/// A thrice-differentiable test function with closed-form derivatives.
class FunctionSpec {
 public:
  using Family = std::variant<family::Power, family::Exp, family::PolyNonneg, family::Affine,
                              family::Constant, family::Custom>;

  static FunctionSpec power(int n);
  static FunctionSpec exp(double c);
  static FunctionSpec poly(std::vector<double> coeffs);
  static FunctionSpec affine(double m, double k);
  static FunctionSpec constant(double k);
  static FunctionSpec custom(std::string label, std::function<double(double, int)> eval);

  /// Parses the canonical forms `pow:n`, `exp:c`, `poly:c0,c1,...`,
  /// `affine:m,k`, `const:k` (case-insensitive, no trailing garbage).
  static FunctionSpec parse(std::string_view text);

  const Family& family() const noexcept { return family_; }
  bool is_custom() const noexcept;

  /// Canonical string; numbers use the shortest round-trip representation.
  std::string to_string() const;
  /// Family tag only (`pow`, `exp`, ...).
  std::string family_name() const;
  /// Parameter list of `to_string()` without the tag.
  std::string params_string() const;

 private:
  explicit FunctionSpec(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// f^(order)(x) for order in 0..3.
double eval_deriv(const FunctionSpec& spec, double x, int order);

/// Binds one derivative order into a scalar function.
ScalarFn derivative_fn(const FunctionSpec& spec, int order);

enum class Positivity { Any, NonnegA, StrictlyPositive };

/// Closed interval [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b, Positivity positivity = Positivity::Any);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  Positivity positivity() const noexcept { return positivity_; }

 private:
  double a_;
  double b_;
  Positivity positivity_;
};

inline constexpr int kDefaultGridPoints = 201;
inline constexpr double kGridEpsilon = 1e-9;

/// Centered second differences over a uniform grid are all >= -eps * scale,
/// scale = max(1, max |g|).
bool check_convex_on_grid(const ScalarFn& g, const Interval& iv, int points = kDefaultGridPoints);

/// Consecutive grid values never drop by more than eps * scale.
bool check_increasing_on_grid(const ScalarFn& g, const Interval& iv,
                              int points = kDefaultGridPoints);

struct HypothesisCheck {
  std::string name;
  bool passed;
  /// Recorded for information but excluded from `overall`.
  bool advisory = false;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool overall = true;
  /// Whether a >= 0 held (for theorems whose argument needs |t| increasing).
  std::optional<bool> a_nonnegative;

  bool passed(std::string_view name) const;
};

struct HypothesisOptions {
  int grid_points = kDefaultGridPoints;
  /// Keeps the a >= 0 check in the report but drops it from `overall`.
  bool allow_negative_a = false;
};

HypothesisReport hypotheses_for(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                                const BoundParams& params, const HypothesisOptions& options = {});

}  // namespace hhv
