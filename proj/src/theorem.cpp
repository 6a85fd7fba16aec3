#include "hhverify/theorem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "hhverify/error.hpp"

namespace hhv {

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::Thm21: return "thm2.1";
    case TheoremId::Thm22: return "thm2.2";
    case TheoremId::Thm23: return "thm2.3";
    case TheoremId::Remark21: return "remark2.1";
    case TheoremId::Thm24: return "thm2.4";
    case TheoremId::Thm25: return "thm2.5";
    case TheoremId::Thm26: return "thm2.6";
    case TheoremId::Thm27: return "thm2.7";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto id : {TheoremId::Thm21, TheoremId::Thm22, TheoremId::Thm23, TheoremId::Remark21,
                  TheoremId::Thm24, TheoremId::Thm25, TheoremId::Thm26, TheoremId::Thm27}) {
    if (lower == to_string(id)) return id;
  }
  return std::nullopt;
}

bool bounds_second_deviation(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::Thm24:
    case TheoremId::Thm25:
    case TheoremId::Thm26:
    case TheoremId::Thm27: return true;
    default: return false;
  }
}

ExponentPair ExponentPair::independent(double p, double q) {
  if (!(p > 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidExponents,
                "independent exponents need p > 1 and q >= 1, got p=" + std::to_string(p) +
                    " q=" + std::to_string(q));
  }
  return {p, q, ExponentMode::Independent};
}

ExponentPair ExponentPair::conjugate(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q) ||
      std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidExponents,
                "conjugate exponents need p, q > 1 and 1/p + 1/q = 1, got p=" +
                    std::to_string(p) + " q=" + std::to_string(q));
  }
  return {p, q, ExponentMode::Conjugate};
}

ExponentPair ExponentPair::conjugate_of(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidExponents, "conjugate exponent needs p > 1");
  }
  return conjugate(p, p / (p - 1.0));
}

}  // namespace hhv
