#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>

#include "hhverify/bounds.hpp"
#include "hhverify/error.hpp"
#include "hhverify/harness.hpp"
#include "hhverify/quad.hpp"
#include "hhverify/special.hpp"

using namespace hhv;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

// Beta by quadrature of its defining integral (integer-ish exponents only).
double beta_integral(double x, double y) {
  return integrate([&](double t) { return std::pow(t, x - 1) * std::pow(1 - t, y - 1); },
                   Interval(0.0, 1.0), 1e-14)
      .value;
}

const Interval unit(0.0, 1.0);

}  // namespace

TEST_CASE("gamma against references") {
  CHECK(rel(hhv::gamma(5.0), 24.0) <= 1e-12);
  CHECK(rel(hhv::gamma(0.5), std::sqrt(pi)) <= 1e-12);
  CHECK(rel(hhv::gamma(2.5), 0.75 * std::sqrt(pi)) <= 1e-12);
  using Big = boost::multiprecision::cpp_dec_float_50;
  for (double x = 0.5; x <= 30.0; x += 0.37) {
    const double ref = static_cast<double>(boost::math::tgamma(Big(x)));
    CHECK_MESSAGE(rel(hhv::gamma(x), ref) <= 1e-12, x);
    CHECK(rel(hhv::gamma(x), std::tgamma(x)) <= 1e-12);
  }
  CHECK(kind_of([] { hhv::gamma(0.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { hhv::gamma(-1.0); }) == ErrorKind::DomainError);
  CHECK(std::abs(log_gamma(100.0) - std::lgamma(100.0)) <= 1e-12 * std::lgamma(100.0));
}

TEST_CASE("beta and duplication") {
  CHECK(rel(beta(1, 1), 1.0) <= 1e-12);
  CHECK(rel(beta(2, 2), 1.0 / 6) <= 1e-12);
  CHECK(rel(beta(2.5, 2.5), 3 * pi / 128) <= 1e-11);
  CHECK(rel(beta(3, 4), beta_integral(3, 4)) <= 1e-11);
  CHECK(kind_of([] { beta(0.0, 1.0); }) == ErrorKind::DomainError);
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 7.5}) {
    const auto d = beta_duplication_check(p);
    CHECK(rel(d.lhs, d.rhs) <= 1e-10);
  }
  CHECK(rel(beta_duplication_check(1).lhs, 1.0 / 6) <= 1e-12);
  CHECK(rel(beta_duplication_check(2).lhs, 1.0 / 30) <= 1e-12);
  CHECK(rel(beta_duplication_check(0.5).lhs, pi / 8) <= 1e-12);
}

TEST_CASE("exponent pairs") {
  CHECK(kind_of([] { ExponentPair::independent(1.0, 1.0); }) == ErrorKind::InvalidExponents);
  CHECK(kind_of([] { ExponentPair::independent(2.0, 0.5); }) == ErrorKind::InvalidExponents);
  CHECK(kind_of([] { ExponentPair::conjugate(2.0, 3.0); }) == ErrorKind::InvalidExponents);
  CHECK(ExponentPair::conjugate_of(3.0).q() == doctest::Approx(1.5));
  CHECK(kind_of([] { thm26_rhs(FunctionSpec::power(3), unit, ExponentPair::independent(2, 2)); }) ==
        ErrorKind::InvalidExponents);
}

TEST_CASE("first-derivative bound evaluators") {
  CHECK(thm21_rhs(FunctionSpec::power(2), unit) == doctest::Approx(1.0));
  CHECK(thm21_rhs(FunctionSpec::power(1), unit) == doctest::Approx(0.5));
  CHECK(thm21_rhs(FunctionSpec::constant(7), Interval(1, 2)) == 0.0);

  const auto p2q1 = ExponentPair::independent(2, 1);
  const auto p2q2 = ExponentPair::independent(2, 2);
  CHECK(thm22_rhs(FunctionSpec::power(1), unit, p2q1) == doctest::Approx(0.5));
  CHECK(thm22_rhs(FunctionSpec::constant(3), unit, p2q2) == 0.0);
  CHECK(thm22_rhs(FunctionSpec::power(2), unit, p2q2) == doctest::Approx(1 / std::sqrt(2.0)));

  const Interval pos(1.0, 2.0, Positivity::StrictlyPositive);
  CHECK(thm23_rhs(FunctionSpec::power(1), pos, p2q1) == doctest::Approx(std::sqrt(10.0) / (2 * std::sqrt(2.0))));
  CHECK(thm23_rhs(FunctionSpec::constant(3), pos, ExponentPair::independent(3, 2)) == 0.0);
  // Substitution of f'(1) = 2, f'(2) = 4 with p = 2, q = 1.
  CHECK(thm23_rhs(FunctionSpec::power(2), pos, p2q1) ==
        doctest::Approx(std::sqrt(6.0) * std::sqrt(4 * 4 + 1 * 2.0) / std::pow(2, 1.5)));
  CHECK(kind_of([&] { thm23_rhs(FunctionSpec::power(2), unit, p2q1); }) == ErrorKind::DomainError);

  CHECK(remark21_rhs(unit, p2q2, {0.0}) == 0.0);
  CHECK(remark21_rhs(unit, p2q1, {1.0}) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(remark21_rhs(Interval(1, 2), p2q1, {2.0}) == doctest::Approx(14.0));
}

TEST_CASE("second-derivative bound evaluators") {
  const auto aff = FunctionSpec::affine(2, 1);
  const auto p2 = ExponentPair::conjugate(2, 2);
  CHECK(thm24_rhs(FunctionSpec::power(3), unit, 1) == doctest::Approx(0.75));
  CHECK(thm24_rhs(FunctionSpec::power(2), unit, 1) == doctest::Approx(1.0 / 3));
  CHECK(thm24_rhs(aff, Interval(-1, 3), 2) == 0.0);
  CHECK(thm25_rhs(FunctionSpec::power(3), unit, 1) == doctest::Approx(0.75));
  CHECK(thm25_rhs(aff, unit, 2) == 0.0);
  CHECK(thm26_rhs(aff, unit, p2) == 0.0);
  CHECK(thm26_rhs(FunctionSpec::power(3), unit, p2) ==
        doctest::Approx(9 * std::sqrt(2.0) / (2 * std::sqrt(30.0))));
  CHECK(thm27_rhs(aff, unit, p2) == 0.0);
  CHECK(thm27_rhs(FunctionSpec::power(3), unit, p2) == doctest::Approx(9 / (2 * std::sqrt(3.0))));

  // The Beta factor in 2.6 is int t^p (1-t)^p; check it against quadrature
  // through the ratio of two evaluations that differ only in that factor.
  const auto p3 = ExponentPair::conjugate_of(3.0);
  const auto x3 = FunctionSpec::power(3);
  const double r = thm26_rhs(x3, unit, p3) / thm26_rhs(x3, unit, p2);
  const double b3 = std::pow(beta_integral(4, 4), 1 / 3.0);
  const double b2 = std::pow(beta_integral(3, 3), 1 / 2.0);
  // Endpoint factor for f = x^3 on [0,1]: ((|2f''(1)|^q + |f'''(1)|^q) ...)
  auto endpoint = [](double q) {
    return std::pow(std::pow(12.0, q) / 2, 1 / q) + std::pow(std::pow(6.0, q) / 2, 1 / q);
  };
  CHECK(r == doctest::Approx((b3 * endpoint(1.5)) / (b2 * endpoint(2.0))).epsilon(1e-9));
}

TEST_CASE("q = 1 collapse of 2.5 onto 2.4") {
  TrialConfig config;
  config.suites = {SuiteId::Thm24};
  for (int i = 0; i < 200; ++i) {
    TrialRng rng(99, SuiteId::Thm24, i);
    const auto inst = generate_instance(rng, config, SuiteId::Thm24);
    CHECK(rel(thm25_rhs(inst.spec, inst.iv, 1.0), thm24_rhs(inst.spec, inst.iv, 1.0)) <= 1e-12);
  }
}

TEST_CASE("evaluate_bound") {
  const auto r21 = evaluate_bound(TheoremId::Thm21, FunctionSpec::power(2), unit, {});
  CHECK(r21.lhs_abs == doctest::Approx(2.0 / 3));
  CHECK(r21.rhs == doctest::Approx(1.0));
  CHECK(r21.margin == r21.rhs - r21.lhs_abs);
  CHECK_FALSE(r21.sign.has_value());

  BoundParams q1;
  q1.q = 1.0;
  const auto r24 = evaluate_bound(TheoremId::Thm24, FunctionSpec::power(3), unit, q1);
  CHECK(std::abs(r24.margin) <= 1e-10);
  CHECK(r24.sign == SignConvention::PlusDerived);

  const auto c = evaluate_bound(TheoremId::Thm21, FunctionSpec::constant(5), unit, {});
  CHECK(std::abs(c.lhs_abs) <= 1e-12);
  CHECK(c.rhs == 0.0);

  BoundParams wrong;
  wrong.pq = ExponentPair::independent(2, 2);
  CHECK(kind_of([&] { evaluate_bound(TheoremId::Thm21, FunctionSpec::power(2), unit, wrong); }) ==
        ErrorKind::ParameterMismatch);
}

TEST_CASE("right-hand sides are nonnegative") {
  TrialConfig config;
  const SuiteId suites[] = {SuiteId::Thm21, SuiteId::Thm22, SuiteId::Thm23, SuiteId::Remark21,
                            SuiteId::Thm24, SuiteId::Thm25, SuiteId::Thm26, SuiteId::Thm27};
  for (SuiteId s : suites) {
    for (int i = 0; i < 100; ++i) {
      TrialRng rng(5, s, i);
      const auto inst = generate_instance(rng, config, s);
      CHECK(bound_rhs(*theorem_of(s), inst.spec, inst.iv, inst.params) >= 0.0);
    }
  }
}

namespace {

// Bounds re-derived from the power-mean step with the endpoint weights kept
// intact: the 2^{2-1/p} denominator becomes 2, and in the a > 0 variant the
// endpoint sums are averaged and the middle factor is the mean of t^p.
double derived22(const FunctionSpec& s, const Interval& iv, double p, double q) {
  const double a = iv.a(), b = iv.b();
  const double fa = std::abs(eval_deriv(s, a, 1)), fb = std::abs(eval_deriv(s, b, 1));
  const double ap = std::pow(std::abs(a), p), bp = std::pow(std::abs(b), p);
  return std::pow(fa + fb, (p - 1) / p) * std::pow(ap + bp, (q - 1) / (q * p)) *
         std::pow(bp * std::pow(fb, q) + ap * std::pow(fa, q), 1 / (q * p)) / 2;
}

double derived23(const FunctionSpec& s, const Interval& iv, double p, double q) {
  const double a = iv.a(), b = iv.b();
  const double fa = std::abs(eval_deriv(s, a, 1)), fb = std::abs(eval_deriv(s, b, 1));
  const double mean_tp = (std::pow(b, p + 1) - std::pow(a, p + 1)) / ((p + 1) * (b - a));
  const double weighted = (std::pow(b, p) * std::pow(fb, q) + std::pow(a, p) * std::pow(fa, q)) / 2;
  return std::pow((fa + fb) / 2, (p - 1) / p) * std::pow(mean_tp, (q - 1) / (q * p)) *
         std::pow(weighted, 1 / (q * p));
}

}  // namespace

TEST_CASE("thm2.2 and thm2.3 bounds fail as stated and hold re-derived") {
  // The minimal witness: f = x on [1, 2], p = 2, q = 1 has |D1| = 3/2.
  const Interval iv(1.0, 2.0, Positivity::StrictlyPositive);
  const auto pq = ExponentPair::independent(2, 1);
  const double lhs = std::abs(deviation_d1(FunctionSpec::power(1), iv));
  CHECK(lhs == doctest::Approx(1.5));
  CHECK(thm22_rhs(FunctionSpec::power(1), iv, pq) < lhs);
  CHECK(thm23_rhs(FunctionSpec::power(1), iv, pq) < lhs);
  CHECK(derived22(FunctionSpec::power(1), iv, 2, 1) >= lhs);
  CHECK(derived23(FunctionSpec::power(1), iv, 2, 1) >= lhs);

  TrialConfig config;
  std::size_t stated_fail = 0;
  std::size_t derived_fail = 0;
  for (SuiteId s : {SuiteId::Thm22, SuiteId::Thm23}) {
    for (int i = 0; i < 1000; ++i) {
      TrialRng rng(42, s, i);
      const auto inst = generate_instance(rng, config, s);
      const double p = inst.params.pq->p(), q = inst.params.pq->q();
      const double d1 = std::abs(deviation_d1(inst.spec, inst.iv));
      const double stated = bound_rhs(*theorem_of(s), inst.spec, inst.iv, inst.params);
      const double derived = s == SuiteId::Thm22 ? derived22(inst.spec, inst.iv, p, q)
                                                 : derived23(inst.spec, inst.iv, p, q);
      stated_fail += stated - d1 < -1e-9 * std::max(1.0, d1);
      derived_fail += derived - d1 < -1e-9 * std::max(1.0, d1);
    }
  }
  CHECK(stated_fail > 0);
  CHECK(derived_fail == 0);
}
