#pragma once

#include <optional>
#include <string>

#include "hhverify/funcspec.hpp"
#include "hhverify/means.hpp"
#include "hhverify/quad.hpp"
#include "hhverify/theorem.hpp"

/// 50-significant-digit substitution oracle. Every quantity is recomputed
/// from the stated formulas in decimal multiprecision, without reusing the
/// double-precision evaluators: the theorem left-hand sides come from closed
/// antiderivatives instead of quadrature, and L_n^n from its quotient form.
/// Used to confirm a violation before it is reported as a finding.
namespace hhv::hp {

inline constexpr int kDigits = 50;

struct Confirmation {
  std::string lhs;     // 50-digit decimal rendering
  std::string rhs;
  double margin;       // rhs - lhs rounded to double
  bool violated;       // lhs > rhs exactly at 50 digits
};

/// Theorem sides for a closed-form family; nullopt for custom handles.
std::optional<Confirmation> confirm_bound(TheoremId id, const FunctionSpec& spec,
                                         const Interval& iv, const BoundParams& params,
                                         SignConvention sign);

Confirmation confirm_prop31(double a, double b, int n);
Confirmation confirm_prop32(double a, double b, int n, double p, double q);

/// `plain` selects the a, b > 0 variant (|L_n^n| against the halved divisor).
Confirmation confirm_prop33(double a, double b, int n, double q, bool plain);
Confirmation confirm_prop34(double a, double b, int n, double p, double q, bool plain);

}  // namespace hhv::hp
