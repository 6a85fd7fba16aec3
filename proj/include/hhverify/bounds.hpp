#pragma once

#include <optional>
#include <string>

#include "hhverify/funcspec.hpp"
#include "hhverify/quad.hpp"
#include "hhverify/theorem.hpp"

namespace hhv {

// Right-hand sides, evaluated exactly as stated. All evaluators are total:
// they do not check hypotheses, only parameter domains. x^0 is 1 for every
// x >= 0, so q = 1 collapses the (q-1) exponents.

/// (|a| |f'(a)| + |b| |f'(b)|) / 2
double thm21_rhs(const FunctionSpec& spec, const Interval& iv);

/// (|f'(b)|+|f'(a)|)^{(p-1)/p} (|b|^p+|a|^p)^{(q-1)/(qp)}
///   (|b|^p |f'(b)|^q + |a|^p |f'(a)|^q)^{1/(qp)} / 2^{2-1/p}
double thm22_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq);

/// Same as thm22_rhs with the middle factor replaced by
/// (b^{p+1} - a^{p+1})^{(q-1)/(qp)} and an extra (p+1)^{(q-1)/(qp)} below.
/// Requires a > 0.
double thm23_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq);

/// M^{(p-1+pq)/p} (b^{p+1} - a^{p+1}) / (2^{1/p} (b-a)), requires a >= 0.
double remark21_rhs(const Interval& iv, const ExponentPair& pq, DerivativeCap cap);

double thm24_rhs(const FunctionSpec& spec, const Interval& iv, double q);
double thm25_rhs(const FunctionSpec& spec, const Interval& iv, double q);
double thm26_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq);
double thm27_rhs(const FunctionSpec& spec, const Interval& iv, const ExponentPair& pq);

struct BoundReport {
  TheoremId theorem;
  double lhs_abs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs_abs
  HypothesisReport hypotheses;
  std::optional<SignConvention> sign;  // second-deviation theorems only

  std::string function;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> M;
};

/// Pairs the matching deviation with the matching right-hand side and the
/// hypothesis report. Throws ParameterMismatch when `params` does not carry
/// what the theorem takes.
BoundReport evaluate_bound(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                           const BoundParams& params,
                           SignConvention sign = SignConvention::PlusDerived,
                           const HypothesisOptions& options = {});

/// Right-hand side alone, with the same parameter validation as evaluate_bound.
double bound_rhs(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                 const BoundParams& params);

}  // namespace hhv
