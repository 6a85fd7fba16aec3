#pragma once

#include "hhverify/funcspec.hpp"

namespace hhv {

inline constexpr double kDefaultAbsTol = 1e-11;
inline constexpr int kDefaultMaxDepth = 60;

struct QuadResult {
  double value = 0.0;
  /// Sum of the per-panel Richardson error estimates (absolute).
  double est_error = 0.0;
  int evaluations = 0;
  /// Tolerance actually targeted; equals the requested one unless it sits
  /// below the rounding floor of the integral's magnitude.
  double tolerance = 0.0;
};

/// Adaptive Simpson with bisection and the |S2 - S| <= 15 tol acceptance
/// test; the returned value includes the Richardson correction.
///
/// A panel is also accepted once |S2 - S| falls within 64 eps of its own
/// magnitude, so large-magnitude integrands terminate instead of chasing
/// rounding noise. Throws ToleranceNotReached when `max_depth`
/// bisections do not suffice and NonFiniteValue on NaN/inf samples.
QuadResult integrate(const ScalarFn& g, const Interval& iv, double abs_tol = kDefaultAbsTol,
                     int max_depth = kDefaultMaxDepth);

/// (1/(b-a)) int_a^b f - (b f(b) - a f(a))/(b-a)
double deviation_d1(const FunctionSpec& spec, const Interval& iv);

enum class SignConvention {
  PlusDerived,    // D1 + (b f'(b) + a f'(a))/2, forced by integration by parts
  MinusAsPrinted  // D1 - (b f'(b) + a f'(a))/2
};

std::string_view to_string(SignConvention sign) noexcept;

double deviation_d2(const FunctionSpec& spec, const Interval& iv,
                    SignConvention sign = SignConvention::PlusDerived);

/// Kernel form of the plus-sign D2:
/// ((b-a)^2/2) [2 int_0^1 t(1-t) f''(x_t) dt + int_0^1 t(1-t) F(x_t) dt]
/// with x_t = t a + (1-t) b and F(x) = x f'''(x).
double deviation_d2_kernel(const FunctionSpec& spec, const Interval& iv);

/// F(x) = x f'''(x).
double composite_f3(const FunctionSpec& spec, double x);

struct IdentitySides {
  double lhs;
  double rhs;
};

/// lhs = (f(a)+f(b))/2 - mean of f; rhs = ((b-a)^2/2) int_0^1 t(1-t) f''(x_t) dt.
IdentitySides lemma11_identity(const FunctionSpec& spec, const Interval& iv);

/// Jensen under the normalized uniform measure on [a, b]:
/// lhs = mean of phi(f(t)), rhs = phi(mean of f).
IdentitySides jensen_check(const ScalarFn& phi, const ScalarFn& f, const Interval& iv);

}  // namespace hhv
