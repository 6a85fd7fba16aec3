#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hhv {

/// The bounded inequalities. Thm21..Thm23 and Remark21 bound the first
/// deviation functional, Thm24..Thm27 the second.
enum class TheoremId { Thm21, Thm22, Thm23, Remark21, Thm24, Thm25, Thm26, Thm27 };

std::string_view to_string(TheoremId id) noexcept;
/// Accepts "thm2.1" .. "thm2.7" and "remark2.1", case-insensitively.
std::optional<TheoremId> parse_theorem_id(std::string_view text);

bool bounds_second_deviation(TheoremId id) noexcept;

enum class ExponentMode { Independent, Conjugate };

/// Exponents (p, q). Independent: p > 1, q >= 1. Conjugate: p, q > 1 with
/// 1/p + 1/q = 1 to within 1e-12.
class ExponentPair {
 public:
  static ExponentPair independent(double p, double q);
  static ExponentPair conjugate(double p, double q);
  /// Conjugate pair with q = p / (p - 1).
  static ExponentPair conjugate_of(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  ExponentMode mode() const noexcept { return mode_; }

 private:
  ExponentPair(double p, double q, ExponentMode mode) : p_(p), q_(q), mode_(mode) {}
  double p_;
  double q_;
  ExponentMode mode_;
};

/// |f'| <= M, used only by Remark21.
struct DerivativeCap {
  double M = 0.0;
};

/// Theorem-dependent parameters. Thm21 takes none; Thm22/23 an independent
/// pair; Remark21 an independent pair and a cap; Thm24/25 a single q;
/// Thm26/27 a conjugate pair.
struct BoundParams {
  std::optional<ExponentPair> pq;
  std::optional<double> q;
  std::optional<DerivativeCap> cap;
};

}  // namespace hhv
