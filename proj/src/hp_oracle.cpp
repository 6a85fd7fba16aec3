#include "hhverify/hp_oracle.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <variant>

#include "hhverify/error.hpp"

namespace hhv::hp {

namespace {

using Real = boost::multiprecision::cpp_dec_float_50;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Real rpow(const Real& x, const Real& e) {
  if (e == 0) return Real(1);
  if (x == 0) return Real(0);
  return boost::multiprecision::pow(x, e);
}

Real ipow(const Real& x, int n) {
  Real r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::string render(const Real& v) { return v.str(kDigits, std::ios_base::scientific); }

Confirmation make(const Real& lhs, const Real& rhs) {
  return {render(lhs), render(rhs), static_cast<double>(Real(rhs - lhs)), lhs > rhs};
}

Real falling(int n, int d) {
  Real r = 1;
  for (int i = 0; i < d; ++i) r *= (n - i);
  return r;
}

// d-th derivative of a closed-form family.
Real deriv(const FunctionSpec::Family& fam, const Real& x, int d) {
  return std::visit(
      overloaded{
          [&](const family::Power& f) -> Real {
            return d > f.n ? Real(0) : falling(f.n, d) * ipow(x, f.n - d);
          },
          [&](const family::Exp& f) -> Real {
            const Real c = f.c;
            return ipow(c, d) * boost::multiprecision::exp(c * x);
          },
          [&](const family::PolyNonneg& f) -> Real {
            Real s = 0;
            for (int i = d; i < static_cast<int>(f.coeffs.size()); ++i) {
              s += Real(f.coeffs[i]) * falling(i, d) * ipow(x, i - d);
            }
            return s;
          },
          [&](const family::Affine& f) -> Real {
            if (d == 0) return Real(f.m) * x + Real(f.k);
            return d == 1 ? Real(f.m) : Real(0);
          },
          [&](const family::Constant& f) -> Real { return d == 0 ? Real(f.k) : Real(0); },
          [&](const family::Custom&) -> Real {
            throw Error(ErrorKind::DomainError, "no closed form for custom handles");
          },
      },
      fam);
}

// (1/(b-a)) int_a^b f via antiderivatives.
Real mean_value(const FunctionSpec::Family& fam, const Real& a, const Real& b) {
  const Real len = b - a;
  return std::visit(
      overloaded{
          [&](const family::Power& f) -> Real {
            return (ipow(b, f.n + 1) - ipow(a, f.n + 1)) / ((f.n + 1) * len);
          },
          [&](const family::Exp& f) -> Real {
            const Real c = f.c;
            return (boost::multiprecision::exp(c * b) - boost::multiprecision::exp(c * a)) / (c * len);
          },
          [&](const family::PolyNonneg& f) -> Real {
            Real s = 0;
            for (int i = 0; i < static_cast<int>(f.coeffs.size()); ++i) {
              s += Real(f.coeffs[i]) * (ipow(b, i + 1) - ipow(a, i + 1)) / ((i + 1) * len);
            }
            return s;
          },
          [&](const family::Affine& f) -> Real { return Real(f.m) * (a + b) / 2 + Real(f.k); },
          [&](const family::Constant& f) -> Real { return Real(f.k); },
          [&](const family::Custom&) -> Real {
            throw Error(ErrorKind::DomainError, "no closed form for custom handles");
          },
      },
      fam);
}

Real beta_factor(const Real& p) {
  using boost::math::tgamma;
  const Real pi = boost::math::constants::pi<Real>();
  return boost::multiprecision::sqrt(pi) * tgamma(Real(p + 1)) /
         (rpow(Real(2), 1 + 2 * p) * tgamma(Real(p + Real(3) / 2)));
}

Real lmean_pow(const Real& a, const Real& b, int n) {
  return (ipow(b, n + 1) - ipow(a, n + 1)) / ((b - a) * (n + 1));
}

Real amean(const Real& x, const Real& y) { return (x + y) / 2; }

}  // namespace

std::optional<Confirmation> confirm_bound(TheoremId id, const FunctionSpec& spec,
                                         const Interval& iv, const BoundParams& params,
                                         SignConvention sign) {
  if (spec.is_custom()) return std::nullopt;
  const auto& fam = spec.family();
  const Real a = iv.a();
  const Real b = iv.b();
  using boost::multiprecision::abs;

  const Real fa = deriv(fam, a, 0);
  const Real fb = deriv(fam, b, 0);
  const Real d1 = mean_value(fam, a, b) - (b * fb - a * fa) / (b - a);
  const Real A1 = abs(deriv(fam, a, 1));
  const Real B1 = abs(deriv(fam, b, 1));

  Real lhs = abs(d1);
  if (bounds_second_deviation(id)) {
    const Real endpoint = (b * deriv(fam, b, 1) + a * deriv(fam, a, 1)) / 2;
    lhs = abs(sign == SignConvention::PlusDerived ? Real(d1 + endpoint) : Real(d1 - endpoint));
  }

  const Real h = (b - a) * (b - a) / 2;
  const Real A2 = abs(2 * deriv(fam, a, 2));
  const Real B2 = abs(2 * deriv(fam, b, 2));
  const Real A3 = abs(a * deriv(fam, a, 3));
  const Real B3 = abs(b * deriv(fam, b, 3));

  Real p = 0;
  Real q = 0;
  if (params.pq) {
    p = params.pq->p();
    q = params.pq->q();
  } else if (params.q) {
    q = *params.q;
  }

  Real rhs;
  switch (id) {
    case TheoremId::Thm21: rhs = (abs(a) * A1 + abs(b) * B1) / 2; break;
    case TheoremId::Thm22:
    case TheoremId::Thm23: {
      Real middle;
      Real denom = rpow(Real(2), 2 - 1 / p);
      if (id == TheoremId::Thm22) {
        middle = rpow(rpow(abs(b), p) + rpow(abs(a), p), (q - 1) / (q * p));
      } else {
        middle = rpow(rpow(b, p + 1) - rpow(a, p + 1), (q - 1) / (q * p));
        denom *= rpow(p + 1, (q - 1) / (q * p));
      }
      rhs = rpow(B1 + A1, (p - 1) / p) * middle *
            rpow(rpow(abs(b), p) * rpow(B1, q) + rpow(abs(a), p) * rpow(A1, q), 1 / (q * p)) / denom;
      break;
    }
    case TheoremId::Remark21: {
      const Real M = params.cap ? params.cap->M : 0.0;
      rhs = rpow(M, (p - 1 + p * q) / p) * (rpow(b, p + 1) - rpow(a, p + 1)) /
            (rpow(Real(2), 1 / p) * (b - a));
      break;
    }
    case TheoremId::Thm24:
      rhs = h * rpow(Real(1) / 6, (q - 1) / q) *
            (rpow((rpow(A2, q) + rpow(B2, q)) / 12, 1 / q) + rpow((rpow(A3, q) + rpow(B3, q)) / 12, 1 / q));
      break;
    case TheoremId::Thm25:
      rhs = h * rpow(Real(1) / 2, 1 - 1 / q) * rpow(1 / ((q + 1) * (q + 2) * (q + 3)), 1 / q) *
            (rpow(2 * rpow(A2, q) + (q + 1) * rpow(B2, q), 1 / q) +
             rpow(2 * rpow(A3, q) + (q + 1) * rpow(B3, q), 1 / q));
      break;
    case TheoremId::Thm26:
      rhs = h * rpow(beta_factor(p), 1 / p) *
            (rpow((rpow(A2, q) + rpow(B2, q)) / 2, 1 / q) + rpow((rpow(A3, q) + rpow(B3, q)) / 2, 1 / q));
      break;
    case TheoremId::Thm27: {
      const Real den = (q + 1) * (q + 2);
      rhs = h * rpow(1 / (p + 1), 1 / p) *
            (rpow((rpow(A2, q) + (q + 1) * rpow(B2, q)) / den, 1 / q) +
             rpow((rpow(A3, q) + (q + 1) * rpow(B3, q)) / den, 1 / q));
      break;
    }
  }
  return make(lhs, rhs);
}

Confirmation confirm_prop31(double a_, double b_, int n) {
  const Real a = a_;
  const Real b = b_;
  using boost::multiprecision::abs;
  return make(lmean_pow(a, b, n), amean(ipow(abs(a), n), ipow(abs(b), n)));
}

Confirmation confirm_prop32(double a_, double b_, int n, double p_, double q_) {
  const Real a = a_;
  const Real b = b_;
  const Real p = p_;
  const Real q = q_;
  using boost::multiprecision::abs;
  const Real nn = n;
  const Real top = nn * (p + q) - q;
  const Real rhs = 2 * rpow(nn, (1 - q) / (p * q)) *
                   rpow(amean(rpow(abs(a), nn - 1), rpow(abs(b), nn - 1)), (p - 1) / p) *
                   rpow(amean(rpow(abs(a), nn), rpow(abs(b), nn)), (q - 1) / (q * p)) *
                   rpow(amean(rpow(abs(a), top), rpow(abs(b), top)), 1 / (p * q));
  return make(abs(lmean_pow(a, b, n)), rhs);
}

namespace {

Confirmation pair_confirm(const Real& a, const Real& b, int n, const Real& kmin, int sum_div,
                          int plain_div, bool plain) {
  using boost::multiprecision::abs;
  const Real spread = Real(n) * (n - 1) * (b - a) * (b - a);
  const Real lm = lmean_pow(a, b, n);
  if (plain) return make(abs(lm), kmin * spread / plain_div);
  return make(abs(lm + amean(ipow(a, n), ipow(b, n))), kmin * spread / sum_div);
}

}  // namespace

Confirmation confirm_prop33(double a_, double b_, int n, double q_, bool plain) {
  const Real a = a_;
  const Real b = b_;
  const Real q = q_;
  using boost::multiprecision::abs;
  const Real e = Real(n - 2) * q;
  const Real pa = rpow(abs(a), e);
  const Real pb = rpow(abs(b), e);
  const Real K1 = rpow(amean(pa, pb), 1 / q) / 3;
  const Real K2 = rpow(4 / ((q + 1) * (q + 2) * (q + 3)), 1 / q) * rpow(amean(2 * pa, (q + 1) * pb), 1 / q);
  return pair_confirm(a, b, n, std::min(K1, K2), 4, 8, plain);
}

Confirmation confirm_prop34(double a_, double b_, int n, double p_, double q_, bool plain) {
  const Real a = a_;
  const Real b = b_;
  const Real p = p_;
  const Real q = q_;
  using boost::multiprecision::abs;
  const Real e = Real(n - 2) * q;
  const Real pa = rpow(abs(a), e);
  const Real pb = rpow(abs(b), e);
  const Real K3 = rpow(beta_factor(p), 1 / p) * rpow(amean(pa, pb), 1 / q);
  const Real K4 = rpow(1 / (p + 1), 1 / p) * rpow(2 / ((q + 1) * (q + 2)), 1 / q) *
                  rpow(amean(pa, (q + 1) * pb), 1 / q);
  return pair_confirm(a, b, n, std::min(K3, K4), 2, 4, plain);
}

}  // namespace hhv::hp
