#include "hhverify/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hhverify/bounds.hpp"
#include "hhverify/error.hpp"
#include "hhverify/harness.hpp"
#include "hhverify/means.hpp"
#include "hhverify/report.hpp"

namespace hhv::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comma split that keeps empty items so "a,,b" and "a," are rejected.
std::vector<std::string> split_commas(const std::string& text, const std::string& what) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(text.substr(start, comma - start));
    if (out.back().empty()) throw Usage(what + " has an empty item");
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split_commas(text, what)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw Usage("bad number '" + tok + "' in " + what);
    }
    if (used != tok.size()) throw Usage("bad number '" + tok + "' in " + what);
    out.push_back(v);
  }
  return out;
}

std::vector<SuiteId> parse_suites(const std::string& text) {
  std::vector<SuiteId> out;
  for (const auto& tok : split_commas(text, "--theorem")) {
    std::string lower = tok;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "all") {
      for (SuiteId id : all_suites()) out.push_back(id);
      continue;
    }
    auto id = parse_suite_id(tok);
    if (!id) throw Usage("unknown theorem or suite '" + tok + "'");
    out.push_back(*id);
  }
  return out;
}

SignConvention parse_sign(const std::string& s) {
  if (s == "plus") return SignConvention::PlusDerived;
  if (s == "minus") return SignConvention::MinusAsPrinted;
  throw Usage("--sign must be plus or minus");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Usage("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw Usage("failed writing '" + path + "'");
}

// The exact equality witness f = x^3 on [0, 1]; under the minus sign
// it gives |D2| = 9/4 against a bound of 3/4.
void pin_sign_witness(TrialConfig& config) {
  for (SuiteId id : config.suites) {
    BoundParams params;
    switch (id) {
      case SuiteId::Thm24:
      case SuiteId::Thm25: params.q = 1.0; break;
      case SuiteId::Thm26:
      case SuiteId::Thm27: params.pq = ExponentPair::conjugate(2.0, 2.0); break;
      default: continue;
    }
    config.pinned.push_back(
        {id, Instance{FunctionSpec::power(3), Interval(0.0, 1.0, Positivity::NonnegA), params,
                      std::nullopt, std::nullopt}});
  }
}

struct VerifyArgs {
  std::string theorem = "all";
  int trials = 1000;
  std::uint64_t seed = 42;
  double a_min = 0.0;
  double a_max = 0.0;
  double b_max = 5.0;
  std::string pq_grid;
  std::string sign = "plus";
  std::string format = "json";
  std::string out;
  std::string config;
  bool per_trial = false;
  bool timestamp = false;
  bool allow_negative_a = false;
  int threads = 0;
  int shrink_steps = 20;
};

int cmd_verify(CLI::App& app, const VerifyArgs& v, std::ostream& out, std::ostream& err) {
  auto given = [&](const char* name) { return app.count(name) > 0; };
  TrialConfig config;
  if (!v.config.empty()) {
    std::ifstream file(v.config);
    if (!file) throw Usage("cannot read config file '" + v.config + "'");
    Json doc;
    try {
      doc = Json::parse(file);
    } catch (const Json::exception& e) {
      throw Usage(std::string("config file is not valid JSON: ") + e.what());
    }
    config = config_from_json(doc, config);
  }
  if (given("--theorem") || config.suites.empty()) config.suites = parse_suites(v.theorem);
  if (given("--trials")) config.trials = v.trials;
  if (given("--seed")) config.seed = v.seed;
  if (given("--a-min") || given("--a-max") || given("--b-max")) {
    SamplerBox box = config.box.value_or(SamplerBox{});
    if (given("--a-min")) box.lo = v.a_min;
    if (given("--b-max")) box.hi = v.b_max;
    if (given("--a-max")) box.a_max = v.a_max;
    config.box = box;
  }
  if (given("--pq-grid")) {
    const auto colon = v.pq_grid.find(':');
    if (colon == std::string::npos) throw Usage("--pq-grid expects P1,P2,...:Q1,Q2,...");
    config.p_grid = parse_list(v.pq_grid.substr(0, colon), "--pq-grid p values");
    config.q_grid = parse_list(v.pq_grid.substr(colon + 1), "--pq-grid q values");
  }
  if (given("--sign")) config.sign = parse_sign(v.sign);
  if (given("--allow-negative-a")) config.allow_negative_a = v.allow_negative_a;
  if (given("--shrink-steps")) config.shrink_steps = v.shrink_steps;
  config.threads = v.threads;
  if (config.sign == SignConvention::MinusAsPrinted) pin_sign_witness(config);

  const TrialBatch batch = run_suite(config);

  const std::string text = v.format == "csv"
                               ? batch_to_csv(batch)
                               : dump_json(batch_to_json(batch, {v.per_trial, v.timestamp}));
  emit(text, v.out, out);

  for (const auto& sb : batch.suites) {
    const auto& s = sb.summary;
    err << to_string(sb.suite) << ": " << to_string(s.outcome) << " (" << s.passed << " pass, "
        << s.failed << " fail, " << s.filtered << " filtered";
    if (s.min_margin) err << ", min margin " << format_g17(*s.min_margin);
    err << ")\n";
  }
  for (const auto& f : batch.findings) err << "finding [" << f.kind << "] " << f.message << '\n';
  return batch.any_asserted_failure() ? kExitViolation : kExitPass;
}

struct CheckArgs {
  std::string function;
  double a = 0.0;
  double b = 0.0;
  std::string theorem;
  double p = 0.0;
  double q = 0.0;
  double M = 0.0;
  std::string sign = "plus";
  std::string format = "json";
  bool allow_negative_a = false;
};

int cmd_check(CLI::App& app, const CheckArgs& c, std::ostream& out) {
  auto given = [&](const char* name) { return app.count(name) > 0; };
  const auto id = parse_theorem_id(c.theorem);
  if (!id) throw Usage("unknown theorem '" + c.theorem + "'");
  const FunctionSpec spec = FunctionSpec::parse(c.function);
  const Interval iv(c.a, c.b);

  BoundParams params;
  const bool has_p = given("--p");
  const bool has_q = given("--q");
  const bool has_m = given("--M");
  switch (*id) {
    case TheoremId::Thm21:
      if (has_p || has_q || has_m) throw Usage("thm2.1 takes no --p/--q/--M");
      break;
    case TheoremId::Thm22:
    case TheoremId::Thm23:
    case TheoremId::Remark21:
      if (!has_p || !has_q) throw Usage(std::string(to_string(*id)) + " needs --p and --q");
      params.pq = ExponentPair::independent(c.p, c.q);
      if (*id == TheoremId::Remark21) {
        if (!has_m) throw Usage("remark2.1 needs --M");
        params.cap = DerivativeCap{c.M};
      } else if (has_m) {
        throw Usage("--M applies only to remark2.1");
      }
      break;
    case TheoremId::Thm24:
    case TheoremId::Thm25:
      if (has_p || has_m) throw Usage(std::string(to_string(*id)) + " takes only --q");
      if (!has_q) throw Usage(std::string(to_string(*id)) + " needs --q");
      if (!(c.q >= 1.0)) throw Error(ErrorKind::InvalidExponents, "q must be >= 1");
      params.q = c.q;
      break;
    case TheoremId::Thm26:
    case TheoremId::Thm27:
      if (has_m) throw Usage("--M applies only to remark2.1");
      if (!has_p && !has_q) throw Usage(std::string(to_string(*id)) + " needs --p or --q");
      if (has_p && has_q) {
        params.pq = ExponentPair::conjugate(c.p, c.q);
      } else if (has_p) {
        params.pq = ExponentPair::conjugate_of(c.p);
      } else {
        const auto flipped = ExponentPair::conjugate_of(c.q);
        params.pq = ExponentPair::conjugate(flipped.q(), flipped.p());
      }
      break;
  }

  HypothesisOptions opts;
  opts.allow_negative_a = c.allow_negative_a;
  const auto report = evaluate_bound(*id, spec, iv, params, parse_sign(c.sign), opts);
  const int code = !report.hypotheses.overall ? kExitHypotheses
                   : report.margin >= -1e-9   ? kExitPass
                                              : kExitViolation;
  if (c.format == "csv") {
    out << bound_report_to_csv(report, spec);
  } else {
    Json j = bound_report_to_json(report);
    j["status"] = code == kExitPass ? "pass" : code == kExitViolation ? "fail" : "hypotheses-not-satisfied";
    out << dump_json(j);
  }
  return code;
}

struct MeansArgs {
  std::string prop;
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;
  double q = 0.0;
  bool sweep = false;
  int trials = 1000;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  bool per_trial = false;
};

ExponentPair means_conjugate(CLI::App& app, const MeansArgs& m) {
  const bool has_p = app.count("--p") > 0;
  const bool has_q = app.count("--q") > 0;
  if (has_p && has_q) return ExponentPair::conjugate(m.p, m.q);
  if (has_p) return ExponentPair::conjugate_of(m.p);
  if (has_q) {
    const auto flipped = ExponentPair::conjugate_of(m.q);
    return ExponentPair::conjugate(flipped.q(), flipped.p());
  }
  throw Usage("prop3.4 needs --p and/or --q");
}

int cmd_means(CLI::App& app, const MeansArgs& m, std::ostream& out, std::ostream& err) {
  auto given = [&](const char* name) { return app.count(name) > 0; };
  const std::string prop = m.prop.rfind("prop", 0) == 0 ? m.prop.substr(4) : m.prop;
  if (prop != "3.1" && prop != "3.2" && prop != "3.3" && prop != "3.4") {
    throw Usage("--prop must be one of 3.1, 3.2, 3.3, 3.4");
  }
  const SuiteId suite = *parse_suite_id("prop" + prop);

  if (m.sweep) {
    TrialConfig config;
    config.suites = {suite};
    config.trials = m.trials;
    config.seed = m.seed;
    if (given("--p") || given("--q")) {
      if (given("--p")) config.p_grid = {m.p};
      if (given("--q")) config.q_grid = {m.q};
    }
    const TrialBatch batch = run_suite(config);
    const std::string text =
        m.format == "csv" ? batch_to_csv(batch) : dump_json(batch_to_json(batch, {m.per_trial, false}));
    emit(text, m.out, out);
    for (const auto& f : batch.findings) err << "finding [" << f.kind << "] " << f.message << '\n';
    return batch.any_asserted_failure() ? kExitViolation : kExitPass;
  }

  if (!given("--n") || !given("--a") || !given("--b")) throw Usage("means needs --n, --a and --b");
  const MeanOrder n(m.n);
  Json j = {{"prop", prop}, {"n", m.n}, {"a", m.a}, {"b", m.b}};
  bool holds = true;
  if (prop == "3.1") {
    const auto c = prop31_check(m.a, m.b, n);
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["holds"] = holds = c.holds;
  } else if (prop == "3.2") {
    if (!given("--p") || !given("--q")) throw Usage("prop3.2 needs --p and --q");
    const auto pq = ExponentPair::independent(m.p, m.q);
    const auto c = prop32_check(m.a, m.b, n, pq);
    j["p"] = m.p;
    j["q"] = m.q;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["holds"] = c.holds;
  } else {
    PropPairCheck c{};
    if (prop == "3.3") {
      if (!given("--q")) throw Usage("prop3.3 needs --q");
      if (given("--p")) throw Usage("prop3.3 takes only --q");
      c = prop33_check(m.a, m.b, n, m.q);
      j["q"] = m.q;
      j["k1"] = c.k_first;
      j["k2"] = c.k_second;
    } else {
      const auto pq = means_conjugate(app, m);
      c = prop34_check(m.a, m.b, n, pq);
      j["p"] = pq.p();
      j["q"] = pq.q();
      j["k3"] = c.k_first;
      j["k4"] = c.k_second;
    }
    j["lhs_sum"] = c.lhs_sum;
    j["rhs_sum"] = c.rhs_sum;
    j["holds_sum"] = c.holds_sum;
    j["lhs_plain"] = c.lhs_plain ? Json(*c.lhs_plain) : Json(nullptr);
    j["rhs_plain"] = c.rhs_plain ? Json(*c.rhs_plain) : Json(nullptr);
    j["holds_plain"] = c.holds_plain ? Json(*c.holds_plain) : Json(nullptr);
  }
  j["asserted"] = prop == "3.1";

  if (m.format == "csv") {
    std::ostringstream os;
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << '\n';
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& v = j[keys[i]];
      os << (i ? "," : "");
      if (v.is_number_float()) os << format_g17(v.get<double>());
      else if (v.is_string()) os << v.get<std::string>();
      else if (!v.is_null()) os << v.dump();
    }
    os << '\n';
    emit(os.str(), m.out, out);
  } else {
    emit(dump_json(j), m.out, out);
  }
  return holds ? kExitPass : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of Hermite-Hadamard type integral inequalities", "hhverify"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Run seeded property suites and write a report");
  verify->add_option("--theorem", v.theorem, "Suite id, comma list, or 'all'");
  verify->add_option("--trials", v.trials, "Generated trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", v.seed, "Master seed");
  verify->add_option("--a-min", v.a_min, "Lower end of the sampling box");
  verify->add_option("--a-max", v.a_max, "Largest admissible left endpoint");
  verify->add_option("--b-max", v.b_max, "Upper end of the sampling box");
  verify->add_option("--pq-grid", v.pq_grid, "Exponent grid as P1,P2,...:Q1,Q2,...");
  verify->add_option("--sign", v.sign, "Second-deviation sign")->check(CLI::IsMember({"plus", "minus"}));
  verify->add_option("--format", v.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", v.out, "Write the report here instead of stdout");
  verify->add_option("--config", v.config, "JSON config file; flags override it");
  verify->add_option("--threads", v.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  verify->add_option("--shrink-steps", v.shrink_steps, "Counterexample shrink budget")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--per-trial", v.per_trial, "Include per-trial records in the JSON report");
  verify->add_flag("--timestamp", v.timestamp, "Add a timestamp and wall time to the report");
  verify->add_flag("--allow-negative-a", v.allow_negative_a, "Sample a < 0 for thm2.1/2.2/2.4-2.7");

  CheckArgs c;
  auto* check = app.add_subcommand("check", "Evaluate one bound for one function and interval");
  check->add_option("--function", c.function, "pow:n, exp:c, poly:c0,c1,..., affine:m,k, const:k")
      ->required();
  check->add_option("--a", c.a, "Left endpoint")->required();
  check->add_option("--b", c.b, "Right endpoint")->required();
  check->add_option("--theorem", c.theorem, "thm2.1 .. thm2.7 or remark2.1")->required();
  check->add_option("--p", c.p);
  check->add_option("--q", c.q);
  check->add_option("--M", c.M, "Derivative cap for remark2.1");
  check->add_option("--sign", c.sign)->check(CLI::IsMember({"plus", "minus"}));
  check->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  check->add_flag("--allow-negative-a", c.allow_negative_a);

  MeansArgs m;
  auto* means = app.add_subcommand("means", "Evaluate the propositions on generalized logarithmic means");
  means->add_option("--prop", m.prop, "3.1, 3.2, 3.3 or 3.4")->required();
  means->add_option("--n", m.n);
  means->add_option("--a", m.a);
  means->add_option("--b", m.b);
  means->add_option("--p", m.p);
  means->add_option("--q", m.q);
  means->add_flag("--sweep", m.sweep, "Run the seeded suite instead of one instance");
  means->add_option("--trials", m.trials)->check(CLI::PositiveNumber);
  means->add_option("--seed", m.seed);
  means->add_option("--format", m.format)->check(CLI::IsMember({"json", "csv"}));
  means->add_option("--out", m.out);
  means->add_flag("--per-trial", m.per_trial);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "hhverify: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(*verify, v, out, err);
    if (*check) return cmd_check(*check, c, out);
    if (*means) return cmd_means(*means, m, out, err);
  } catch (const Usage& e) {
    err << "hhverify: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "hhverify: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hhv::cli
