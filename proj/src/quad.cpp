#include "hhverify/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hhverify/error.hpp"

namespace hhv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Simpson {
  const ScalarFn& g;
  int max_depth;
  int evaluations = 0;
  double est_error = 0.0;
  bool hit_floor = false;

  double sample(double x) {
    const double v = g(x);
    ++evaluations;
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteValue, "integrand not finite at x=" + std::to_string(x));
    }
    return v;
  }

  double panel(double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    if (!(a < lm && lm < m && m < rm && rm < b)) {
      throw Error(ErrorKind::ToleranceNotReached, "panel width underflowed");
    }
    const double flm = sample(lm);
    const double frm = sample(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const double floor = 64.0 * kEps * (std::abs(left) + std::abs(right));
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
      if (std::abs(delta) > 15.0 * tol) hit_floor = true;
      est_error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      throw Error(ErrorKind::ToleranceNotReached,
                  "recursion depth " + std::to_string(max_depth) + " exhausted");
    }
    return panel(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           panel(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

const Interval kUnit(0.0, 1.0);

}  // namespace

QuadResult integrate(const ScalarFn& g, const Interval& iv, double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw Error(ErrorKind::DomainError, "abs_tol must be positive");
  Simpson s{g, max_depth};
  const double a = iv.a();
  const double b = iv.b();
  const double m = 0.5 * (a + b);
  const double fa = s.sample(a);
  const double fm = s.sample(m);
  const double fb = s.sample(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  QuadResult r;
  r.value = s.panel(a, b, fa, fm, fb, whole, abs_tol, 0);
  r.est_error = s.est_error;
  r.evaluations = s.evaluations;
  r.tolerance = s.hit_floor ? std::max(abs_tol, s.est_error) : abs_tol;
  return r;
}

std::string_view to_string(SignConvention sign) noexcept {
  return sign == SignConvention::PlusDerived ? "plus" : "minus";
}

namespace {

double mean_of(const FunctionSpec& spec, const Interval& iv) {
  // Tighter than the default on short intervals so the division by (b - a)
  // does not amplify the absolute error past 1e-11.
  const double tol = kDefaultAbsTol * std::min(1.0, iv.length());
  return integrate(derivative_fn(spec, 0), iv, tol).value / iv.length();
}

}  // namespace

double deviation_d1(const FunctionSpec& spec, const Interval& iv) {
  const double a = iv.a();
  const double b = iv.b();
  const double fa = eval_deriv(spec, a, 0);
  const double fb = eval_deriv(spec, b, 0);
  return mean_of(spec, iv) - (b * fb - a * fa) / (b - a);
}

double deviation_d2(const FunctionSpec& spec, const Interval& iv, SignConvention sign) {
  const double a = iv.a();
  const double b = iv.b();
  const double endpoint = 0.5 * (b * eval_deriv(spec, b, 1) + a * eval_deriv(spec, a, 1));
  const double d1 = deviation_d1(spec, iv);
  return sign == SignConvention::PlusDerived ? d1 + endpoint : d1 - endpoint;
}

double composite_f3(const FunctionSpec& spec, double x) { return x * eval_deriv(spec, x, 3); }

double deviation_d2_kernel(const FunctionSpec& spec, const Interval& iv) {
  const double a = iv.a();
  const double b = iv.b();
  auto kernel = [&](double t) {
    const double x = t * a + (1.0 - t) * b;
    return t * (1.0 - t) * (2.0 * eval_deriv(spec, x, 2) + composite_f3(spec, x));
  };
  const double h = 0.5 * (b - a) * (b - a);
  return h * integrate(kernel, kUnit).value;
}

IdentitySides lemma11_identity(const FunctionSpec& spec, const Interval& iv) {
  const double a = iv.a();
  const double b = iv.b();
  const double lhs = 0.5 * (eval_deriv(spec, a, 0) + eval_deriv(spec, b, 0)) - mean_of(spec, iv);
  auto kernel = [&](double t) {
    return t * (1.0 - t) * eval_deriv(spec, t * a + (1.0 - t) * b, 2);
  };
  const double rhs = 0.5 * (b - a) * (b - a) * integrate(kernel, kUnit).value;
  return {lhs, rhs};
}

IdentitySides jensen_check(const ScalarFn& phi, const ScalarFn& f, const Interval& iv) {
  const double len = iv.length();
  const double tol = kDefaultAbsTol * std::min(1.0, len);
  const double mean_phi_f = integrate([&](double t) { return phi(f(t)); }, iv, tol).value / len;
  const double mean_f = integrate(f, iv, tol).value / len;
  return {mean_phi_f, phi(mean_f)};
}

}  // namespace hhv
