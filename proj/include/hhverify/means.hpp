#pragma once

#include <optional>

#include "hhverify/theorem.hpp"

namespace hhv {

/// Order n >= 1 of the generalized logarithmic mean.
class MeanOrder {
 public:
  explicit MeanOrder(int n);
  int n() const noexcept { return n_; }

 private:
  int n_;
};

double arithmetic_mean(double x, double y) noexcept;

/// L_n^n(a, b) = (b^{n+1} - a^{n+1}) / ((b - a)(n + 1)), the mean of x^n over
/// [a, b]. Evaluated as (1/(n+1)) sum_k a^k b^{n-k}, free of the a -> b
/// cancellation. Throws DegenerateInterval unless a < b.
double log_mean_pow(double a, double b, MeanOrder n);

/// L_n(a, b) itself; DomainError when L_n^n is not positive.
double generalized_log_mean(double a, double b, MeanOrder n);

// Proposition constants, evaluated as stated. InvalidOrder for n < 3.
double k1(double a, double b, MeanOrder n, double q);
double k2(double a, double b, MeanOrder n, double q);
double k3(double a, double b, MeanOrder n, const ExponentPair& pq);
double k4(double a, double b, MeanOrder n, const ExponentPair& pq);

struct PropCheck {
  double lhs;
  double rhs;
  bool holds;
};

inline constexpr double kPropSlack = 1e-12;

/// L_n^n <= A(|a|^n, |b|^n).
PropCheck prop31_check(double a, double b, MeanOrder n);

/// |L_n^n| <= 2 n^{(1-q)/(pq)} A(|a|^{n-1},|b|^{n-1})^{(p-1)/p} A(|a|^n,|b|^n)^{(q-1)/(qp)}
///            A(|a|^{n(p+q)-q}, |b|^{n(p+q)-q})^{1/(pq)}
PropCheck prop32_check(double a, double b, MeanOrder n, const ExponentPair& pq);

/// Two-part record shared by the min{K, K'} propositions. The `plain` part
/// exists only for a, b > 0.
struct PropPairCheck {
  double k_first;
  double k_second;
  double lhs_sum;  // |L_n^n + A(a^n, b^n)|
  double rhs_sum;
  bool holds_sum;
  std::optional<double> lhs_plain;  // |L_n^n|
  std::optional<double> rhs_plain;
  std::optional<bool> holds_plain;
};

/// min{K1, K2} n(n-1)(b-a)^2 / 4 and / 8.
PropPairCheck prop33_check(double a, double b, MeanOrder n, double q);

/// min{K3, K4} n(n-1)(b-a)^2 / 2 and / 4; conjugate exponents only.
PropPairCheck prop34_check(double a, double b, MeanOrder n, const ExponentPair& pq);

}  // namespace hhv
