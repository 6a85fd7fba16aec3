#include "hhverify/means.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hhverify/error.hpp"
#include "hhverify/special.hpp"

namespace hhv {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double powz(double x, double e) { return e == 0.0 ? 1.0 : std::pow(x, e); }

void require_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainError, "endpoints must be finite");
  }
  if (!(a < b)) throw Error(ErrorKind::DegenerateInterval, "means need a < b");
}

void require_order3(MeanOrder n) {
  if (n.n() < 3) {
    throw Error(ErrorKind::InvalidOrder, "order n = " + std::to_string(n.n()) + " below 3");
  }
}

void require_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw Error(ErrorKind::InvalidExponents, "q must be >= 1");
}

void require_conjugate(const ExponentPair& pq) {
  if (pq.mode() != ExponentMode::Conjugate) {
    throw Error(ErrorKind::InvalidExponents, "conjugate exponents required");
  }
}

// |a|^{(n-2)q} and |b|^{(n-2)q}
std::pair<double, double> k_powers(double a, double b, MeanOrder n, double q) {
  const double e = (n.n() - 2) * q;
  return {std::pow(std::abs(a), e), std::pow(std::abs(b), e)};
}

}  // namespace

MeanOrder::MeanOrder(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "mean order must be >= 1");
}

double arithmetic_mean(double x, double y) noexcept { return (x + y) / 2.0; }

double log_mean_pow(double a, double b, MeanOrder n) {
  require_interval(a, b);
  double sum = 0.0;
  for (int k = 0; k <= n.n(); ++k) sum += ipow(a, k) * ipow(b, n.n() - k);
  return sum / (n.n() + 1);
}

double generalized_log_mean(double a, double b, MeanOrder n) {
  const double radicand = log_mean_pow(a, b, n);
  if (!(radicand > 0.0)) throw Error(ErrorKind::DomainError, "L_n^n is not positive");
  return std::pow(radicand, 1.0 / n.n());
}

double k1(double a, double b, MeanOrder n, double q) {
  require_order3(n);
  require_q(q);
  auto [pa, pb] = k_powers(a, b, n, q);
  return std::pow(arithmetic_mean(pa, pb), 1.0 / q) / 3.0;
}

double k2(double a, double b, MeanOrder n, double q) {
  require_order3(n);
  require_q(q);
  auto [pa, pb] = k_powers(a, b, n, q);
  return std::pow(4.0 / ((q + 1.0) * (q + 2.0) * (q + 3.0)), 1.0 / q) *
         std::pow(arithmetic_mean(2.0 * pa, (q + 1.0) * pb), 1.0 / q);
}

double k3(double a, double b, MeanOrder n, const ExponentPair& pq) {
  require_order3(n);
  require_conjugate(pq);
  const double p = pq.p();
  const double q = pq.q();
  auto [pa, pb] = k_powers(a, b, n, q);
  const double beta_factor = std::sqrt(std::numbers::pi) * gamma(p + 1.0) /
                             (std::pow(2.0, 1.0 + 2.0 * p) * gamma(p + 1.5));
  return std::pow(beta_factor, 1.0 / p) * std::pow(arithmetic_mean(pa, pb), 1.0 / q);
}

double k4(double a, double b, MeanOrder n, const ExponentPair& pq) {
  require_order3(n);
  require_conjugate(pq);
  const double p = pq.p();
  const double q = pq.q();
  auto [pa, pb] = k_powers(a, b, n, q);
  return std::pow(1.0 / (p + 1.0), 1.0 / p) * std::pow(2.0 / ((q + 1.0) * (q + 2.0)), 1.0 / q) *
         std::pow(arithmetic_mean(pa, (q + 1.0) * pb), 1.0 / q);
}

PropCheck prop31_check(double a, double b, MeanOrder n) {
  const double lhs = log_mean_pow(a, b, n);
  const double rhs = arithmetic_mean(ipow(std::abs(a), n.n()), ipow(std::abs(b), n.n()));
  return {lhs, rhs, lhs <= rhs + kPropSlack};
}

PropCheck prop32_check(double a, double b, MeanOrder n, const ExponentPair& pq) {
  require_interval(a, b);
  require_order3(n);
  if (pq.mode() != ExponentMode::Independent) {
    throw Error(ErrorKind::InvalidExponents, "prop3.2 takes independent exponents");
  }
  const double p = pq.p();
  const double q = pq.q();
  const double nn = n.n();
  const double lhs = std::abs(log_mean_pow(a, b, n));
  const double aa = std::abs(a);
  const double ab = std::abs(b);
  const double top = nn * (p + q) - q;
  const double rhs = 2.0 * std::pow(nn, (1.0 - q) / (p * q)) *
                     powz(arithmetic_mean(std::pow(aa, nn - 1.0), std::pow(ab, nn - 1.0)), (p - 1.0) / p) *
                     powz(arithmetic_mean(std::pow(aa, nn), std::pow(ab, nn)), (q - 1.0) / (q * p)) *
                     powz(arithmetic_mean(std::pow(aa, top), std::pow(ab, top)), 1.0 / (p * q));
  return {lhs, rhs, lhs <= rhs + kPropSlack};
}

namespace {

PropPairCheck pair_check(double a, double b, MeanOrder n, double k_first, double k_second,
                         double sum_divisor, double plain_divisor) {
  PropPairCheck r{};
  r.k_first = k_first;
  r.k_second = k_second;
  const double nn = n.n();
  const double kmin = std::min(k_first, k_second);
  const double spread = nn * (nn - 1.0) * (b - a) * (b - a);
  const double lmean = log_mean_pow(a, b, n);
  r.lhs_sum = std::abs(lmean + arithmetic_mean(ipow(a, n.n()), ipow(b, n.n())));
  r.rhs_sum = kmin * spread / sum_divisor;
  r.holds_sum = r.lhs_sum <= r.rhs_sum + kPropSlack;
  if (a > 0.0 && b > 0.0) {
    r.lhs_plain = std::abs(lmean);
    r.rhs_plain = kmin * spread / plain_divisor;
    r.holds_plain = *r.lhs_plain <= *r.rhs_plain + kPropSlack;
  }
  return r;
}

}  // namespace

PropPairCheck prop33_check(double a, double b, MeanOrder n, double q) {
  require_interval(a, b);
  return pair_check(a, b, n, k1(a, b, n, q), k2(a, b, n, q), 4.0, 8.0);
}

PropPairCheck prop34_check(double a, double b, MeanOrder n, const ExponentPair& pq) {
  require_interval(a, b);
  return pair_check(a, b, n, k3(a, b, n, pq), k4(a, b, n, pq), 2.0, 4.0);
}

}  // namespace hhv
