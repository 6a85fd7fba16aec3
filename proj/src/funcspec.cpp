#include "hhverify/funcspec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "hhverify/error.hpp"

namespace hhv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// n (n-1) ... (n-d+1)
double falling(int n, int d) {
  double r = 1.0;
  for (int i = 0; i < d; ++i) r *= static_cast<double>(n - i);
  return r;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_number(std::string_view tok, std::string_view whole) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, "bad number '" + std::string(tok) + "' in '" +
                                           std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void require_order(int order) {
  if (order < 0 || order > 3) {
    throw Error(ErrorKind::UnsupportedOrder,
                "derivative order " + std::to_string(order) + " outside 0..3");
  }
}

}  // namespace

FunctionSpec FunctionSpec::power(int n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "pow:n needs n >= 1");
  return FunctionSpec(family::Power{n});
}

FunctionSpec FunctionSpec::exp(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::DomainError, "exp:c needs c > 0");
  return FunctionSpec(family::Exp{c});
}

FunctionSpec FunctionSpec::poly(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::DomainError, "poly needs at least one coefficient");
  for (double c : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw Error(ErrorKind::DomainError, "poly coefficients must be finite and >= 0");
    }
  }
  return FunctionSpec(family::PolyNonneg{std::move(coeffs)});
}

FunctionSpec FunctionSpec::affine(double m, double k) {
  if (!std::isfinite(m) || !std::isfinite(k)) {
    throw Error(ErrorKind::DomainError, "affine parameters must be finite");
  }
  return FunctionSpec(family::Affine{m, k});
}

FunctionSpec FunctionSpec::constant(double k) {
  if (!std::isfinite(k)) throw Error(ErrorKind::DomainError, "constant must be finite");
  return FunctionSpec(family::Constant{k});
}

FunctionSpec FunctionSpec::custom(std::string label, std::function<double(double, int)> eval) {
  return FunctionSpec(family::Custom{std::move(label), std::move(eval)});
}

FunctionSpec FunctionSpec::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string_view s = lower;
  auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "expected '<family>:<params>', got '" + lower + "'");
  }
  auto tag = s.substr(0, colon);
  std::vector<double> values;
  for (auto tok : split(s.substr(colon + 1), ',')) values.push_back(parse_number(tok, text));

  auto need = [&](std::size_t count) {
    if (values.size() != count) {
      throw Error(ErrorKind::ParseError, "'" + std::string(tag) + "' takes " +
                                             std::to_string(count) + " parameter(s)");
    }
  };
  try {
    if (tag == "pow") {
      need(1);
      double n = values[0];
      if (n != std::floor(n) || n > 1e6) throw Error(ErrorKind::ParseError, "pow:n needs an integer");
      return power(static_cast<int>(n));
    }
    if (tag == "exp") {
      need(1);
      return exp(values[0]);
    }
    if (tag == "poly") return poly(std::move(values));
    if (tag == "affine") {
      need(2);
      return affine(values[0], values[1]);
    }
    if (tag == "const") {
      need(1);
      return constant(values[0]);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, e.what());
  }
  throw Error(ErrorKind::ParseError, "unknown function family '" + std::string(tag) + "'");
}

bool FunctionSpec::is_custom() const noexcept {
  return std::holds_alternative<family::Custom>(family_);
}

std::string FunctionSpec::family_name() const {
  return std::visit(overloaded{
                        [](const family::Power&) { return std::string("pow"); },
                        [](const family::Exp&) { return std::string("exp"); },
                        [](const family::PolyNonneg&) { return std::string("poly"); },
                        [](const family::Affine&) { return std::string("affine"); },
                        [](const family::Constant&) { return std::string("const"); },
                        [](const family::Custom&) { return std::string("custom"); },
                    },
                    family_);
}

std::string FunctionSpec::params_string() const {
  return std::visit(overloaded{
                        [](const family::Power& f) { return std::to_string(f.n); },
                        [](const family::Exp& f) { return format_number(f.c); },
                        [](const family::PolyNonneg& f) {
                          std::string out;
                          for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
                            if (i) out += ',';
                            out += format_number(f.coeffs[i]);
                          }
                          return out;
                        },
                        [](const family::Affine& f) {
                          return format_number(f.m) + "," + format_number(f.k);
                        },
                        [](const family::Constant& f) { return format_number(f.k); },
                        [](const family::Custom& f) { return f.label; },
                    },
                    family_);
}

std::string FunctionSpec::to_string() const { return family_name() + ":" + params_string(); }

double eval_deriv(const FunctionSpec& spec, double x, int order) {
  require_order(order);
  if (!std::isfinite(x)) throw Error(ErrorKind::DomainError, "non-finite evaluation point");
  return std::visit(
      overloaded{
          [&](const family::Power& f) {
            if (order > f.n) return 0.0;
            return falling(f.n, order) * ipow(x, f.n - order);
          },
          [&](const family::Exp& f) { return ipow(f.c, order) * std::exp(f.c * x); },
          [&](const family::PolyNonneg& f) {
            double acc = 0.0;
            const int deg = static_cast<int>(f.coeffs.size()) - 1;
            for (int i = deg; i >= order; --i) acc = acc * x + f.coeffs[i] * falling(i, order);
            return acc;
          },
          [&](const family::Affine& f) {
            if (order == 0) return f.m * x + f.k;
            return order == 1 ? f.m : 0.0;
          },
          [&](const family::Constant& f) { return order == 0 ? f.k : 0.0; },
          [&](const family::Custom& f) { return f.eval(x, order); },
      },
      spec.family());
}

ScalarFn derivative_fn(const FunctionSpec& spec, int order) {
  require_order(order);
  return [spec, order](double x) { return eval_deriv(spec, x, order); };
}

Interval::Interval(double a, double b, Positivity positivity)
    : a_(a), b_(b), positivity_(positivity) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainError, "interval endpoints must be finite");
  }
  if (!(a < b)) {
    throw Error(ErrorKind::DegenerateInterval,
                "interval needs a < b, got [" + format_number(a) + ", " + format_number(b) + "]");
  }
  if (positivity == Positivity::StrictlyPositive && !(a > 0.0)) {
    throw Error(ErrorKind::DomainError, "interval requires a > 0");
  }
  if (positivity == Positivity::NonnegA && !(a >= 0.0)) {
    throw Error(ErrorKind::DomainError, "interval requires a >= 0");
  }
}

namespace {

std::vector<double> sample_grid(const ScalarFn& g, const Interval& iv, int points) {
  std::vector<double> values(static_cast<std::size_t>(points));
  const double h = iv.length() / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = (i == points - 1) ? iv.b() : iv.a() + i * h;
    const double v = g(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteValue, "grid sample at x=" + format_number(x) + " is not finite");
    }
    values[static_cast<std::size_t>(i)] = v;
  }
  return values;
}

double grid_scale(const std::vector<double>& values) {
  double m = 1.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

bool check_convex_on_grid(const ScalarFn& g, const Interval& iv, int points) {
  if (points < 3) throw Error(ErrorKind::DomainError, "convexity check needs at least 3 points");
  const auto v = sample_grid(g, iv, points);
  const double tol = kGridEpsilon * grid_scale(v);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i - 1] - 2.0 * v[i] + v[i + 1] < -tol) return false;
  }
  return true;
}

bool check_increasing_on_grid(const ScalarFn& g, const Interval& iv, int points) {
  if (points < 2) throw Error(ErrorKind::DomainError, "monotonicity check needs at least 2 points");
  const auto v = sample_grid(g, iv, points);
  const double tol = kGridEpsilon * grid_scale(v);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] < v[i] - tol) return false;
  }
  return true;
}

bool HypothesisReport::passed(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.passed;
  }
  return false;
}

namespace {

double exponent_q(TheoremId id, const BoundParams& params) {
  if (id == TheoremId::Thm24 || id == TheoremId::Thm25) {
    if (params.q) return *params.q;
    if (params.pq) return params.pq->q();
  } else if (params.pq) {
    return params.pq->q();
  }
  throw Error(ErrorKind::MissingExponents,
              std::string(to_string(id)) + " hypotheses need exponents");
}

ScalarFn abs_pow(ScalarFn g, double q) {
  return [g = std::move(g), q](double x) { return std::pow(std::abs(g(x)), q); };
}

}  // namespace

HypothesisReport hypotheses_for(TheoremId id, const FunctionSpec& spec, const Interval& iv,
                                const BoundParams& params, const HypothesisOptions& options) {
  HypothesisReport report;
  const int pts = options.grid_points;
  auto add = [&](std::string name, bool ok, bool advisory = false) {
    report.checks.push_back({std::move(name), ok, advisory});
    if (!advisory) report.overall = report.overall && ok;
  };
  const bool a_nonneg = iv.a() >= 0.0;

  switch (id) {
    case TheoremId::Thm21: {
      auto d1 = abs_pow(derivative_fn(spec, 1), 1.0);
      add("|f'| convex", check_convex_on_grid(d1, iv, pts));
      add("|f'| increasing", check_increasing_on_grid(d1, iv, pts));
      add("a >= 0", a_nonneg, options.allow_negative_a);
      report.a_nonnegative = a_nonneg;
      break;
    }
    case TheoremId::Thm22:
    case TheoremId::Thm23:
    case TheoremId::Remark21: {
      const double q = exponent_q(id, params);
      auto d1q = abs_pow(derivative_fn(spec, 1), q);
      add("|f'|^q convex", check_convex_on_grid(d1q, iv, pts));
      add("|f'|^q increasing", check_increasing_on_grid(d1q, iv, pts));
      if (id == TheoremId::Thm22) {
        add("a >= 0", a_nonneg, options.allow_negative_a);
      } else if (id == TheoremId::Thm23) {
        add("a > 0", iv.a() > 0.0);
      } else {
        add("a >= 0", a_nonneg);
        if (!params.cap) {
          throw Error(ErrorKind::MissingExponents, "remark2.1 hypotheses need the cap M");
        }
        const double M = params.cap->M;
        auto d1 = derivative_fn(spec, 1);
        bool capped = M >= 0.0;
        const double h = iv.length() / (pts - 1);
        for (int i = 0; i < pts && capped; ++i) {
          const double x = (i == pts - 1) ? iv.b() : iv.a() + i * h;
          capped = std::abs(d1(x)) <= M;
        }
        add("|f'| <= M", capped);
      }
      report.a_nonnegative = a_nonneg;
      break;
    }
    case TheoremId::Thm24:
    case TheoremId::Thm25:
    case TheoremId::Thm26:
    case TheoremId::Thm27: {
      const double q = exponent_q(id, params);
      auto d2q = abs_pow(derivative_fn(spec, 2), q);
      auto d3q = abs_pow(derivative_fn(spec, 3), q);
      add("|f''|^q convex", check_convex_on_grid(d2q, iv, pts));
      add("|f'''|^q convex", check_convex_on_grid(d3q, iv, pts));
      add("|f'''|^q increasing", check_increasing_on_grid(d3q, iv, pts));
      add("a >= 0", a_nonneg, options.allow_negative_a);
      report.a_nonnegative = a_nonneg;
      break;
    }
  }
  return report;
}

}  // namespace hhv
