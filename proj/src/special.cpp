#include "hhverify/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hhverify/error.hpp"

namespace hhv {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Series part A(z) for Gamma(z + 1) = sqrt(2 pi) t^{z+1/2} e^{-t} A(z), t = z + g + 1/2.
double lanczos_series(double z) {
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
  return acc;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::DomainError, std::string(what) + " needs a positive finite argument");
  }
}

}  // namespace

double gamma(double x) {
  require_positive(x, "gamma");
  if (x > kGammaMax) {
    throw Error(ErrorKind::DomainError, "gamma is offered only up to x = 30");
  }
  if (x < 0.5) {
    // Reflection keeps the series in its accurate range.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) *
         lanczos_series(z);
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_series(z));
}

double beta(double x, double y) {
  require_positive(x, "beta");
  require_positive(y, "beta");
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

DuplicationSides beta_duplication_check(double p) {
  require_positive(p, "beta_duplication_check");
  const double lhs = beta(p + 1.0, p + 1.0);
  const double rhs = std::pow(2.0, 1.0 - 2.0 * (p + 1.0)) * std::sqrt(std::numbers::pi) *
                     gamma(p + 1.0) / gamma(p + 1.5);
  return {lhs, rhs};
}

}  // namespace hhv
