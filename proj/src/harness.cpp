#include "hhverify/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "hhverify/error.hpp"
#include "hhverify/means.hpp"
#include "hhverify/special.hpp"

namespace hhv {

namespace {

constexpr double kMinWidth = 1e-3;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SuiteName {
  SuiteId id;
  std::string_view name;
};

constexpr SuiteName kSuiteNames[] = {
    {SuiteId::Lemma11, "lemma1.1"}, {SuiteId::Jensen, "lemma1.2"}, {SuiteId::Thm21, "thm2.1"},
    {SuiteId::Thm22, "thm2.2"},     {SuiteId::Thm23, "thm2.3"},    {SuiteId::Remark21, "remark2.1"},
    {SuiteId::Thm24, "thm2.4"},     {SuiteId::Thm25, "thm2.5"},    {SuiteId::Thm26, "thm2.6"},
    {SuiteId::Thm27, "thm2.7"},     {SuiteId::Prop31, "prop3.1"},  {SuiteId::Prop32, "prop3.2"},
    {SuiteId::Prop33, "prop3.3"},   {SuiteId::Prop34, "prop3.4"},
};

}  // namespace

std::string_view to_string(SuiteId id) noexcept {
  for (const auto& s : kSuiteNames) {
    if (s.id == id) return s.name;
  }
  return "?";
}

std::optional<SuiteId> parse_suite_id(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& s : kSuiteNames) {
    if (s.name == lower) return s.id;
  }
  return std::nullopt;
}

const std::vector<SuiteId>& all_suites() {
  static const std::vector<SuiteId> ids = [] {
    std::vector<SuiteId> v;
    for (const auto& s : kSuiteNames) v.push_back(s.id);
    return v;
  }();
  return ids;
}

std::optional<TheoremId> theorem_of(SuiteId id) noexcept {
  switch (id) {
    case SuiteId::Thm21: return TheoremId::Thm21;
    case SuiteId::Thm22: return TheoremId::Thm22;
    case SuiteId::Thm23: return TheoremId::Thm23;
    case SuiteId::Remark21: return TheoremId::Remark21;
    case SuiteId::Thm24: return TheoremId::Thm24;
    case SuiteId::Thm25: return TheoremId::Thm25;
    case SuiteId::Thm26: return TheoremId::Thm26;
    case SuiteId::Thm27: return TheoremId::Thm27;
    default: return std::nullopt;
  }
}

bool is_asserted(SuiteId id) noexcept {
  switch (id) {
    case SuiteId::Remark21:
    case SuiteId::Prop32:
    case SuiteId::Prop33:
    case SuiteId::Prop34: return false;
    default: return true;
  }
}

double assertion_slack(SuiteId id) noexcept {
  switch (id) {
    case SuiteId::Jensen: return 1e-10;
    case SuiteId::Prop31:
    case SuiteId::Prop32:
    case SuiteId::Prop33:
    case SuiteId::Prop34: return kPropSlack;
    default: return 1e-9;
  }
}

TrialRng::TrialRng(std::uint64_t seed, SuiteId suite, std::uint64_t trial)
    : state_(mix64(mix64(seed + kGolden * (static_cast<std::uint64_t>(suite) + 1)) ^
                   (trial * 0xd1b54a32d192ed03ULL + 1))) {}

std::uint64_t TrialRng::next() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double TrialRng::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

int TrialRng::uniform_int(int lo, int hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

SamplerBox default_box(SuiteId id) {
  switch (id) {
    case SuiteId::Prop31: return {-3.0, 3.0, std::nullopt};
    case SuiteId::Lemma11: return {0.0, 3.0, std::nullopt};
    case SuiteId::Jensen: return {0.0, 1.5, std::nullopt};
    default: return {0.0, 5.0, std::nullopt};
  }
}

namespace {

Positivity positivity_for(SuiteId id, bool allow_negative_a) {
  switch (id) {
    case SuiteId::Thm23:
    case SuiteId::Prop32:
    case SuiteId::Prop33:
    case SuiteId::Prop34: return Positivity::StrictlyPositive;
    case SuiteId::Prop31: return Positivity::Any;
    default: return allow_negative_a ? Positivity::Any : Positivity::NonnegA;
  }
}

SamplerBox effective_box(SuiteId id, const TrialConfig& config) {
  SamplerBox box = config.box.value_or(default_box(id));
  if (positivity_for(id, config.allow_negative_a) != Positivity::Any) box.lo = std::max(box.lo, 0.0);
  return box;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

}  // namespace

void validate(const TrialConfig& config) {
  if (config.suites.empty()) config_error("no suites selected");
  if (config.trials < 1) config_error("trials must be >= 1");
  if (config.shrink_steps < 0) config_error("shrink steps must be >= 0");
  if (config.p_grid.empty() || config.q_grid.empty()) config_error("exponent grids must be non-empty");
  for (double p : config.p_grid) {
    if (!(p > 1.0) || !std::isfinite(p)) config_error("every p in the grid must be > 1");
    if (p + 1.5 > kGammaMax) config_error("p too large for the gamma range");
  }
  for (double q : config.q_grid) {
    if (!(q >= 1.0) || !std::isfinite(q)) config_error("every q in the grid must be >= 1");
  }
  const auto& w = config.weights;
  if (!(w.power >= 0 && w.exp >= 0 && w.poly >= 0) || !(w.power + w.exp + w.poly > 0)) {
    config_error("family weights must be >= 0 with a positive sum");
  }
  for (SuiteId id : config.suites) {
    const auto box = effective_box(id, config);
    if (!std::isfinite(box.lo) || !std::isfinite(box.hi) || !(box.hi - box.lo >= 2 * kMinWidth)) {
      config_error(std::string(to_string(id)) + ": sampling box too narrow or invalid");
    }
    if (box.a_max && !(*box.a_max >= box.lo)) {
      config_error(std::string(to_string(id)) + ": a_max below the box");
    }
  }
  for (const auto& pin : config.pinned) {
    if (std::find(config.suites.begin(), config.suites.end(), pin.suite) == config.suites.end()) {
      config_error("pinned instance for a suite that is not selected");
    }
  }
}

namespace {

FunctionSpec draw_function(TrialRng& rng, const FamilyWeights& w) {
  const double u = rng.uniform() * (w.power + w.exp + w.poly);
  if (u < w.power) return FunctionSpec::power(rng.uniform_int(3, 8));
  if (u < w.power + w.exp) return FunctionSpec::exp(rng.uniform(0.2, 2.0));
  const int count = rng.uniform_int(3, 5);
  std::vector<double> coeffs(static_cast<std::size_t>(count));
  for (auto& c : coeffs) c = rng.uniform(0.0, 2.0);
  return FunctionSpec::poly(std::move(coeffs));
}

FunctionSpec draw_phi(TrialRng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: return FunctionSpec::power(2 * rng.uniform_int(1, 3));
    case 1: return FunctionSpec::exp(rng.uniform(0.05, 0.5));
    default: {
      const int count = rng.uniform_int(3, 5);
      std::vector<double> coeffs(static_cast<std::size_t>(count));
      for (auto& c : coeffs) c = rng.uniform(0.0, 2.0);
      return FunctionSpec::poly(std::move(coeffs));
    }
  }
}

Interval draw_interval(TrialRng& rng, const SamplerBox& box, Positivity pos) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double x = rng.uniform(box.lo, box.hi);
    const double y = rng.uniform(box.lo, box.hi);
    const double a = std::min(x, y);
    const double b = std::max(x, y);
    if (b - a < kMinWidth) continue;
    if (box.a_max && a > *box.a_max) continue;
    if (pos == Positivity::StrictlyPositive && !(a > 0.0)) continue;
    return Interval(a, b, pos);
  }
  config_error("sampling box admits no interval");
}

template <class T>
T pick(TrialRng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(v.size()) - 1))];
}

double grid_sup_abs(const FunctionSpec& spec, const Interval& iv, int order) {
  double sup = 0.0;
  const int pts = kDefaultGridPoints;
  const double h = iv.length() / (pts - 1);
  for (int i = 0; i < pts; ++i) {
    const double x = (i == pts - 1) ? iv.b() : iv.a() + i * h;
    sup = std::max(sup, std::abs(eval_deriv(spec, x, order)));
  }
  return sup;
}

}  // namespace

Instance generate_instance(TrialRng& rng, const TrialConfig& config, SuiteId suite) {
  const auto box = effective_box(suite, config);
  const auto pos = positivity_for(suite, config.allow_negative_a);

  switch (suite) {
    case SuiteId::Prop31:
    case SuiteId::Prop32:
    case SuiteId::Prop33:
    case SuiteId::Prop34: {
      const int n = suite == SuiteId::Prop31 ? rng.uniform_int(1, 8) : rng.uniform_int(3, 8);
      Interval iv = draw_interval(rng, box, pos);
      BoundParams params;
      if (suite == SuiteId::Prop32) {
        const double p = pick(rng, config.p_grid);
        params.pq = ExponentPair::independent(p, pick(rng, config.q_grid));
      } else if (suite == SuiteId::Prop33) {
        params.q = pick(rng, config.q_grid);
      } else if (suite == SuiteId::Prop34) {
        params.pq = ExponentPair::conjugate_of(pick(rng, config.p_grid));
      }
      return Instance{FunctionSpec::power(n), iv, params, std::nullopt, n};
    }
    default: break;
  }

  std::optional<FunctionSpec> phi;
  if (suite == SuiteId::Jensen) phi = draw_phi(rng);
  FunctionSpec spec = draw_function(rng, config.weights);
  Interval iv = draw_interval(rng, box, pos);
  BoundParams params;
  switch (suite) {
    case SuiteId::Thm22:
    case SuiteId::Thm23:
    case SuiteId::Remark21: {
      const double p = pick(rng, config.p_grid);
      params.pq = ExponentPair::independent(p, pick(rng, config.q_grid));
      if (suite == SuiteId::Remark21) params.cap = DerivativeCap{grid_sup_abs(spec, iv, 1)};
      break;
    }
    case SuiteId::Thm24:
    case SuiteId::Thm25: params.q = pick(rng, config.q_grid); break;
    case SuiteId::Thm26:
    case SuiteId::Thm27: params.pq = ExponentPair::conjugate_of(pick(rng, config.p_grid)); break;
    default: break;
  }
  return Instance{std::move(spec), iv, params, std::move(phi), std::nullopt};
}

std::string_view to_string(TrialStatus s) noexcept {
  switch (s) {
    case TrialStatus::Pass: return "pass";
    case TrialStatus::Fail: return "fail";
    case TrialStatus::Filtered: return "filtered";
    case TrialStatus::Error: return "error";
  }
  return "?";
}

std::string_view to_string(SuiteOutcome o) noexcept {
  switch (o) {
    case SuiteOutcome::Pass: return "pass";
    case SuiteOutcome::Fail: return "fail";
    case SuiteOutcome::Inconclusive: return "inconclusive";
    case SuiteOutcome::Reported: return "reported";
  }
  return "?";
}

namespace {

void fill_inputs(TrialRecord& r, const Instance& in) {
  r.a = in.iv.a();
  r.b = in.iv.b();
  r.n = in.n;
  if (in.params.pq) {
    r.p = in.params.pq->p();
    r.q = in.params.pq->q();
  } else if (in.params.q) {
    r.q = in.params.q;
  }
  if (in.params.cap) r.M = in.params.cap->M;
  r.function = in.phi ? "phi=" + in.phi->to_string() + ";f=" + in.spec.to_string()
                      : in.spec.to_string();
}

void classify(TrialRecord& r, double slack) {
  if (!r.hypotheses_ok) {
    r.status = TrialStatus::Filtered;
  } else {
    r.status = r.margin >= -slack ? TrialStatus::Pass : TrialStatus::Fail;
  }
}

void evaluate_pair_prop(TrialRecord& r, const PropPairCheck& c, SuiteId suite, const Instance& in) {
  r.lhs = c.lhs_sum;
  r.rhs = c.rhs_sum;
  r.margin = c.rhs_sum - c.lhs_sum;
  r.extras["k_first"] = c.k_first;
  r.extras["k_second"] = c.k_second;
  r.extras["margin_sum"] = r.margin;
  if (c.lhs_plain) {
    r.extras["lhs_plain"] = *c.lhs_plain;
    r.extras["rhs_plain"] = *c.rhs_plain;
    r.extras["margin_plain"] = *c.rhs_plain - *c.lhs_plain;
    r.margin = std::min(r.margin, *c.rhs_plain - *c.lhs_plain);
  }
  classify(r, assertion_slack(suite));
  if (r.status != TrialStatus::Fail) return;

  const double a = in.iv.a();
  const double b = in.iv.b();
  const int n = *in.n;
  auto confirm = [&](bool plain) {
    return suite == SuiteId::Prop33 ? hp::confirm_prop33(a, b, n, *in.params.q, plain)
                                    : hp::confirm_prop34(a, b, n, in.params.pq->p(), in.params.pq->q(), plain);
  };
  const double slack = assertion_slack(suite);
  std::optional<hp::Confirmation> sum_part;
  std::optional<hp::Confirmation> plain_part;
  if (c.rhs_sum - c.lhs_sum < -slack) {
    sum_part = confirm(false);
    r.extras["hp_margin_sum"] = sum_part->margin;
  }
  if (c.lhs_plain && *c.rhs_plain - *c.lhs_plain < -slack) {
    plain_part = confirm(true);
    r.extras["hp_margin_plain"] = plain_part->margin;
  }
  if (sum_part && (sum_part->violated || !plain_part || !plain_part->violated)) {
    r.confirmation = sum_part;
  } else {
    r.confirmation = plain_part;
  }
}

}  // namespace

TrialRecord evaluate_instance(SuiteId suite, const Instance& in, const EvalContext& ctx) {
  TrialRecord r;
  r.suite = suite;
  r.instance = in;
  fill_inputs(r, in);
  const double slack = assertion_slack(suite);
  try {
    switch (suite) {
      case SuiteId::Lemma11: {
        const auto s = lemma11_identity(in.spec, in.iv);
        r.lhs = s.lhs;
        r.rhs = s.rhs;
        r.margin = -std::abs(s.lhs - s.rhs);
        classify(r, slack);
        break;
      }
      case SuiteId::Jensen: {
        if (!in.phi) throw Error(ErrorKind::ParameterMismatch, "jensen trial without phi");
        const auto phi = derivative_fn(*in.phi, 0);
        const auto f = derivative_fn(in.spec, 0);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        const int pts = kDefaultGridPoints;
        for (int i = 0; i < pts; ++i) {
          const double v = f(in.iv.a() + in.iv.length() * i / (pts - 1));
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        const bool convex = !(hi - lo > 0.0) || check_convex_on_grid(phi, Interval(lo, hi));
        r.hypotheses = {{"phi convex on range of f", convex}};
        r.hypotheses_ok = convex;
        const auto s = jensen_check(phi, f, in.iv);
        r.lhs = s.lhs;
        r.rhs = s.rhs;
        r.margin = s.lhs - s.rhs;
        classify(r, slack);
        break;
      }
      case SuiteId::Prop31: {
        const auto c = prop31_check(in.iv.a(), in.iv.b(), MeanOrder(*in.n));
        r.lhs = c.lhs;
        r.rhs = c.rhs;
        r.margin = c.rhs - c.lhs;
        classify(r, slack);
        if (r.status == TrialStatus::Fail) r.confirmation = hp::confirm_prop31(r.a, r.b, *in.n);
        break;
      }
      case SuiteId::Prop32: {
        const auto c = prop32_check(in.iv.a(), in.iv.b(), MeanOrder(*in.n), *in.params.pq);
        r.lhs = c.lhs;
        r.rhs = c.rhs;
        r.margin = c.rhs - c.lhs;
        classify(r, slack);
        if (r.status == TrialStatus::Fail) {
          r.confirmation = hp::confirm_prop32(r.a, r.b, *in.n, *r.p, *r.q);
        }
        break;
      }
      case SuiteId::Prop33:
        evaluate_pair_prop(r, prop33_check(in.iv.a(), in.iv.b(), MeanOrder(*in.n), *in.params.q),
                           suite, in);
        break;
      case SuiteId::Prop34:
        evaluate_pair_prop(r, prop34_check(in.iv.a(), in.iv.b(), MeanOrder(*in.n), *in.params.pq),
                           suite, in);
        break;
      default: {
        const TheoremId id = *theorem_of(suite);
        HypothesisOptions opts;
        opts.allow_negative_a = ctx.allow_negative_a;
        const auto report = evaluate_bound(id, in.spec, in.iv, in.params, ctx.sign, opts);
        r.lhs = report.lhs_abs;
        r.rhs = report.rhs;
        r.margin = report.margin;
        r.hypotheses = report.hypotheses.checks;
        r.hypotheses_ok = report.hypotheses.overall;
        r.sign = report.sign;
        classify(r, slack);
        if (r.status == TrialStatus::Fail) {
          r.confirmation = hp::confirm_bound(id, in.spec, in.iv, in.params, ctx.sign);
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    r.status = TrialStatus::Error;
    r.error = e.what();
    r.lhs = r.rhs = r.margin = std::numeric_limits<double>::quiet_NaN();
  }
  if (r.confirmation) r.extras["hp_margin"] = r.confirmation->margin;
  return r;
}

bool TrialBatch::any_asserted_failure() const {
  return std::any_of(suites.begin(), suites.end(),
                     [](const SuiteBatch& s) { return s.summary.outcome == SuiteOutcome::Fail; });
}

namespace {

SuiteSummary summarize(const SuiteBatch& batch) {
  SuiteSummary s;
  s.generated = batch.trials.size();
  for (const auto& t : batch.trials) {
    switch (t.status) {
      case TrialStatus::Pass: ++s.passed; break;
      case TrialStatus::Fail:
        ++s.failed;
        if (!t.confirmation || t.confirmation->violated) ++s.confirmed_violations;
        break;
      case TrialStatus::Filtered: ++s.filtered; break;
      case TrialStatus::Error:
        ++s.failed;
        ++s.errors;
        break;
    }
    if (t.status == TrialStatus::Pass || t.status == TrialStatus::Fail) {
      if (!s.min_margin || t.margin < *s.min_margin) {
        s.min_margin = t.margin;
        s.worst_trial = t.index;
      }
    }
  }
  if (!batch.asserted) {
    s.outcome = SuiteOutcome::Reported;
  } else if (s.failed > 0) {
    s.outcome = SuiteOutcome::Fail;
  } else if (s.passed < kMinAssertedTrials) {
    s.outcome = SuiteOutcome::Inconclusive;
  } else {
    s.outcome = SuiteOutcome::Pass;
  }
  return s;
}

bool has_oracle(SuiteId id) { return id != SuiteId::Lemma11 && id != SuiteId::Jensen; }

void collect_findings(const SuiteBatch& batch, const TrialConfig& config, std::vector<Finding>& out) {
  const auto name = std::string(to_string(batch.suite));
  const auto& s = batch.summary;
  const EvalContext ctx{config.sign, config.allow_negative_a};

  const std::size_t violations = s.failed - s.errors;
  if (violations > 0 && s.confirmed_violations > 0) {
    const TrialRecord* worst = nullptr;
    for (const auto& t : batch.trials) {
      if (t.status != TrialStatus::Fail) continue;
      if (t.confirmation && !t.confirmation->violated) continue;
      if (!worst || t.margin < worst->margin) worst = &t;
    }
    Finding f;
    f.suite = name;
    f.count = s.confirmed_violations;
    const auto th = theorem_of(batch.suite);
    if (config.sign == SignConvention::MinusAsPrinted && th && bounds_second_deviation(*th)) {
      f.kind = "sign-convention";
    } else {
      f.kind = batch.asserted ? "violation" : "reported-violation";
    }
    f.message = name + ": " + std::to_string(s.confirmed_violations) + " of " +
                std::to_string(s.generated) + " trials violate the bound" +
                (has_oracle(batch.suite) ? " (confirmed at 50 digits)" : " (no high-precision oracle)");
    if (violations > s.confirmed_violations) {
      f.message += "; " + std::to_string(violations - s.confirmed_violations) +
                   " further double-precision violations not confirmed";
    }
    f.witness = *worst;
    try {
      f.minimized = minimize_counterexample(*worst, config.shrink_steps, ctx);
    } catch (const Error&) {
      // Witness without an instance or already at margin >= 0: keep unminimized.
    }
    out.push_back(std::move(f));
  }
  if (s.errors > 0) {
    Finding f;
    f.suite = name;
    f.kind = "evaluation-error";
    f.count = s.errors;
    for (const auto& t : batch.trials) {
      if (t.status == TrialStatus::Error) {
        f.message = name + ": " + std::to_string(s.errors) + " trial(s) failed to evaluate; first: " + t.error;
        break;
      }
    }
    out.push_back(std::move(f));
  }
  if (s.outcome == SuiteOutcome::Inconclusive) {
    Finding f;
    f.suite = name;
    f.kind = "inconclusive";
    f.count = s.passed;
    f.message = name + ": only " + std::to_string(s.passed) + " asserted trials (" +
                std::to_string(s.filtered) + " filtered by hypotheses)";
    out.push_back(std::move(f));
  }
}

}  // namespace

TrialBatch run_suite(const TrialConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  TrialBatch batch;
  batch.config = config;

  std::vector<SuiteId> order;
  for (SuiteId id : config.suites) {
    if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
  }

  const EvalContext ctx{config.sign, config.allow_negative_a};
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());

  for (SuiteId suite : order) {
    std::vector<const Instance*> pins;
    for (const auto& pin : config.pinned) {
      if (pin.suite == suite) pins.push_back(&pin.instance);
    }
    const std::size_t total = pins.size() + static_cast<std::size_t>(config.trials);
    SuiteBatch sb{suite, is_asserted(suite), assertion_slack(suite), {}, {}};
    sb.trials.resize(total);

    auto run_one = [&](std::size_t i) {
      TrialRecord rec;
      if (i < pins.size()) {
        rec = evaluate_instance(suite, *pins[i], ctx);
        rec.pinned = true;
      } else {
        TrialRng rng(config.seed, suite, i - pins.size());
        rec = evaluate_instance(suite, generate_instance(rng, config, suite), ctx);
      }
      rec.index = i;
      sb.trials[i] = std::move(rec);
    };

    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (used <= 1) {
      for (std::size_t i = 0; i < total; ++i) run_one(i);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < total; i += used) run_one(i);
        });
      }
    }
    sb.summary = summarize(sb);
    batch.suites.push_back(std::move(sb));
  }

  for (const auto& sb : batch.suites) collect_findings(sb, config, batch.findings);
  batch.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return batch;
}

namespace {

std::optional<Instance> halve_interval(const Instance& in) {
  const double a = in.iv.a();
  const double half = 0.5 * in.iv.length();
  if (half < kMinWidth) return std::nullopt;
  Instance out = in;
  out.iv = Interval(a, a + half, in.iv.positivity());
  return out;
}

double toward_one(double c) { return c + 0.5 * (1.0 - c); }

std::optional<FunctionSpec> shrink_spec(const FunctionSpec& spec) {
  if (const auto* e = std::get_if<family::Exp>(&spec.family())) {
    if (std::abs(e->c - 1.0) < 1e-9) return std::nullopt;
    return FunctionSpec::exp(toward_one(e->c));
  }
  if (const auto* p = std::get_if<family::PolyNonneg>(&spec.family())) {
    bool moved = false;
    std::vector<double> coeffs = p->coeffs;
    for (auto& c : coeffs) {
      if (std::abs(c - 1.0) >= 1e-9) {
        c = toward_one(c);
        moved = true;
      }
    }
    if (!moved) return std::nullopt;
    return FunctionSpec::poly(std::move(coeffs));
  }
  return std::nullopt;
}

std::optional<Instance> shrink_coefficients(const Instance& in) {
  auto spec = shrink_spec(in.spec);
  if (!spec) return std::nullopt;
  Instance out = in;
  out.spec = std::move(*spec);
  return out;
}

}  // namespace

TrialRecord minimize_counterexample(const TrialRecord& record, int shrink_steps,
                                    const EvalContext& ctx) {
  if (!(record.margin < 0.0)) {
    throw Error(ErrorKind::NotAViolation, "record margin is not negative");
  }
  if (!record.instance || shrink_steps <= 0) return record;

  EvalContext local = ctx;
  if (record.sign) local.sign = *record.sign;

  TrialRecord best = record;
  int kind = 0;
  for (int step = 0; step < shrink_steps; ++step) {
    std::optional<Instance> candidate;
    for (int tries = 0; tries < 2 && !candidate; ++tries, kind ^= 1) {
      candidate = kind == 0 ? halve_interval(*best.instance) : shrink_coefficients(*best.instance);
    }
    if (!candidate) break;
    TrialRecord next = evaluate_instance(record.suite, *candidate, local);
    if (next.status == TrialStatus::Fail && next.margin < 0.0) {
      next.index = record.index;
      next.pinned = record.pinned;
      best = std::move(next);
    }
  }
  return best;
}

}  // namespace hhv
