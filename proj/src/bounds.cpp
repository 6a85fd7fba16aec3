#include "hhverify/bounds.hpp"

#include <cmath>
#include <numbers>

#include "hhverify/error.hpp"
#include "hhverify/special.hpp"

namespace hhv {

namespace {

// x^e for x >= 0 with x^0 = 1 (including 0^0).
double powz(double x, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(x, e);
}

void require_mode(const ExponentPair& pq, ExponentMode mode, TheoremId id) {
  if (pq.mode() != mode) {
    throw Error(ErrorKind::InvalidExponents,
                std::string(to_string(id)) +
                    (mode == ExponentMode::Conjugate ? " needs conjugate exponents"
                                                     : " needs independent exponents"));
  }
}

void require_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw Error(ErrorKind::InvalidExponents, "q must be >= 1");
}

struct Endpoints {
  double a, b;
  double d1a, d1b;  // |f'|
  double d2a, d2b;  // |2 f''|
  double fa3, fb3;  // |a f'''(a)|, |b f'''(b)|
};

Endpoints endpoints(const FunctionSpec& spec, const Interval& iv) {
  const double a = iv.a();
  const double b = iv.b();
  return {a,
          b,
          std::abs(eval_deriv(spec, a, 1)),
          std::abs(eval_deriv(spec, b, 1)),
          std::abs(2.0 * eval_deriv(spec, a, 2)),
          std::abs(2.0 * eval_deriv(spec, b, 2)),
          std::abs(composite_f3(spec, a)),
          std::abs(composite_f3(spec, b))};
}

double half_square(const Interval& iv) { return 0.5 * iv.length() * iv.length(); }

// Shared prefix of the two first-deviation power-mean bounds.
double first_and_last_factors(const Endpoints& e, double p, double q) {
  const double slope_sum = powz(e.d1b + e.d1a, (p - 1.0) / p);
  const double weighted = std::pow(std::abs(e.b), p) * std::pow(e.d1b, q) +
                          std::pow(std::abs(e.a), p) * std::pow(e.d1a, q);
  return slope_sum * powz(weighted, 1.0 / (q * p));
}

}  // namespace

double thm21_rhs(const FunctionSpec& spec, const Interval& iv) {
  const auto e = endpoints(spec, iv);
  return 0.5 * (std::abs(e.a) * e.d1a + std::abs(e.b) * e.d1b);
}

double thm22_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq) {
  require_mode(pq, ExponentMode::Independent, TheoremId::Thm22);
  const double p = pq.p();
  const double q = pq.q();
  const auto e = endpoints(spec, iv);
  const double power_sum = std::pow(std::abs(e.b), p) + std::pow(std::abs(e.a), p);
  return first_and_last_factors(e, p, q) * powz(power_sum, (q - 1.0) / (q * p)) /
         std::pow(2.0, 2.0 - 1.0 / p);
}

double thm23_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq) {
  if (!(iv.a() > 0.0)) throw Error(ErrorKind::DomainError, "thm2.3 requires a > 0");
  require_mode(pq, ExponentMode::Independent, TheoremId::Thm23);
  const double p = pq.p();
  const double q = pq.q();
  const auto e = endpoints(spec, iv);
  const double mid_exp = (q - 1.0) / (q * p);
  const double power_gap = std::pow(e.b, p + 1.0) - std::pow(e.a, p + 1.0);
  return first_and_last_factors(e, p, q) * powz(power_gap, mid_exp) /
         (std::pow(2.0, 2.0 - 1.0 / p) * powz(p + 1.0, mid_exp));
}

double remark21_rhs(const Interval& iv, const ExponentPair& pq, DerivativeCap cap) {
  if (!(iv.a() >= 0.0)) throw Error(ErrorKind::DomainError, "remark2.1 requires a >= 0");
  if (!(cap.M >= 0.0)) throw Error(ErrorKind::DomainError, "derivative cap M must be >= 0");
  require_mode(pq, ExponentMode::Independent, TheoremId::Remark21);
  const double p = pq.p();
  const double q = pq.q();
  const double a = iv.a();
  const double b = iv.b();
  return std::pow(cap.M, (p - 1.0 + p * q) / p) * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) /
         (std::pow(2.0, 1.0 / p) * (b - a));
}

double thm24_rhs(const FunctionSpec& spec, const Interval& iv, double q) {
  require_q(q);
  const auto e = endpoints(spec, iv);
  const double second = std::pow((std::pow(e.d2a, q) + std::pow(e.d2b, q)) / 12.0, 1.0 / q);
  const double third = std::pow((std::pow(e.fa3, q) + std::pow(e.fb3, q)) / 12.0, 1.0 / q);
  return half_square(iv) * powz(1.0 / 6.0, (q - 1.0) / q) * (second + third);
}

double thm25_rhs(const FunctionSpec& spec, const Interval& iv, double q) {
  require_q(q);
  const auto e = endpoints(spec, iv);
  const double scale =
      powz(0.5, 1.0 - 1.0 / q) * std::pow(1.0 / ((q + 1.0) * (q + 2.0) * (q + 3.0)), 1.0 / q);
  const double second = std::pow(2.0 * std::pow(e.d2a, q) + (q + 1.0) * std::pow(e.d2b, q), 1.0 / q);
  const double third = std::pow(2.0 * std::pow(e.fa3, q) + (q + 1.0) * std::pow(e.fb3, q), 1.0 / q);
  return half_square(iv) * scale * (second + third);
}

double thm26_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq) {
  require_mode(pq, ExponentMode::Conjugate, TheoremId::Thm26);
  const double p = pq.p();
  const double q = pq.q();
  const auto e = endpoints(spec, iv);
  const double beta_factor = std::sqrt(std::numbers::pi) * gamma(p + 1.0) /
                             (std::pow(2.0, 1.0 + 2.0 * p) * gamma(p + 1.5));
  const double second = std::pow((std::pow(e.d2a, q) + std::pow(e.d2b, q)) / 2.0, 1.0 / q);
  const double third = std::pow((std::pow(e.fa3, q) + std::pow(e.fb3, q)) / 2.0, 1.0 / q);
  return half_square(iv) * std::pow(beta_factor, 1.0 / p) * (second + third);
}

double thm27_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq) {
  require_mode(pq, ExponentMode::Conjugate, TheoremId::Thm27);
  const double p = pq.p();
  const double q = pq.q();
  const auto e = endpoints(spec, iv);
  const double denom = (q + 1.0) * (q + 2.0);
  const double second = std::pow((std::pow(e.d2a, q) + (q + 1.0) * std::pow(e.d2b, q)) / denom, 1.0 / q);
  const double third = std::pow((std::pow(e.fa3, q) + (q + 1.0) * std::pow(e.fb3, q)) / denom, 1.0 / q);
  return half_square(iv) * std::pow(1.0 / (p + 1.0), 1.0 / p) * (second + third);
}

namespace {

[[noreturn]] void mismatch(TheoremId id, const char* what) {
  throw Error(ErrorKind::ParameterMismatch, std::string(to_string(id)) + " " + what);
}

const ExponentPair& need_pair(TheoremId id, const BoundParams& params, ExponentMode mode) {
  if (!params.pq) mismatch(id, "needs a (p, q) pair");
  if (params.q) mismatch(id, "takes q only through the (p, q) pair");
  if (params.pq->mode() != mode) {
    mismatch(id, mode == ExponentMode::Conjugate ? "needs conjugate exponents"
                                                 : "needs independent exponents");
  }
  return *params.pq;
}

void forbid_cap(TheoremId id, const BoundParams& params) {
  if (params.cap) mismatch(id, "takes no derivative cap");
}

}  // namespace

double bound_rhs(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                 const BoundParams& params) {
  switch (id) {
    case TheoremId::Thm21:
      if (params.pq || params.q) mismatch(id, "takes no exponents");
      forbid_cap(id, params);
      return thm21_rhs(spec, iv);
    case TheoremId::Thm22:
      forbid_cap(id, params);
      return thm22_rhs(spec, iv, need_pair(id, params, ExponentMode::Independent));
    case TheoremId::Thm23:
      forbid_cap(id, params);
      return thm23_rhs(spec, iv, need_pair(id, params, ExponentMode::Independent));
    case TheoremId::Remark21:
      if (!params.cap) mismatch(id, "needs the derivative cap M");
      return remark21_rhs(iv, need_pair(id, params, ExponentMode::Independent), *params.cap);
    case TheoremId::Thm24:
    case TheoremId::Thm25: {
      forbid_cap(id, params);
      if (params.pq) mismatch(id, "takes a single q");
      if (!params.q) mismatch(id, "needs q");
      return id == TheoremId::Thm24 ? thm24_rhs(spec, iv, *params.q) : thm25_rhs(spec, iv, *params.q);
    }
    case TheoremId::Thm26:
      forbid_cap(id, params);
      return thm26_rhs(spec, iv, need_pair(id, params, ExponentMode::Conjugate));
    case TheoremId::Thm27:
      forbid_cap(id, params);
      return thm27_rhs(spec, iv, need_pair(id, params, ExponentMode::Conjugate));
  }
  mismatch(id, "is unknown");
}

BoundReport evaluate_bound(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                           const BoundParams& params, SignConvention sign,
                           const HypothesisOptions& options) {
  BoundReport r;
  r.theorem = id;
  r.rhs = bound_rhs(id, spec, iv, params);
  if (bounds_second_deviation(id)) {
    r.lhs_abs = std::abs(deviation_d2(spec, iv, sign));
    r.sign = sign;
  } else {
    r.lhs_abs = std::abs(deviation_d1(spec, iv));
  }
  r.margin = r.rhs - r.lhs_abs;
  r.hypotheses = hypotheses_for(id, spec, iv, params, options);
  r.function = spec.to_string();
  r.a = iv.a();
  r.b = iv.b();
  if (params.pq) {
    r.p = params.pq->p();
    r.q = params.pq->q();
  } else if (params.q) {
    r.q = *params.q;
  }
  if (params.cap) r.M = params.cap->M;
  return r;
}

}  // namespace hhv
