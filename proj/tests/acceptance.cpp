// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run everything
//   acceptance <id>       run one criterion (1, 2, 3.thm2.4, ..., 10)
// The exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hhverify/bounds.hpp"
#include "hhverify/cli.hpp"
#include "hhverify/harness.hpp"
#include "hhverify/means.hpp"
#include "hhverify/quad.hpp"
#include "hhverify/report.hpp"
#include "hhverify/special.hpp"

using namespace hhv;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict identity_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const FunctionSpec specs[] = {FunctionSpec::power(2), FunctionSpec::power(3), FunctionSpec::power(4),
                                FunctionSpec::exp(1.0), FunctionSpec::poly({0.0, 0.2, 0.0, 1.5})};
  double worst = 0.0;
  for (const auto& s : specs) {
    for (int i = 0; i < 20; ++i) {
      TrialRng rng(42, SuiteId::Lemma11, i);
      double a = rng.uniform(0.0, 3.0);
      double b = rng.uniform(0.0, 3.0);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3) b = std::min(3.0, a + 1e-3);
      const auto sides = lemma11_identity(s, Interval(a, b));
      worst = std::max(worst, std::abs(sides.lhs - sides.rhs));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t < 5.0, fmt("max |lhs-rhs| = %.3g over 100 cases, %.2f s", worst, t)};
}

Verdict equality_witnesses() {
  const Interval unit(0.0, 1.0);
  BoundParams q1;
  q1.q = 1.0;
  const auto r21 = evaluate_bound(TheoremId::Thm21, FunctionSpec::power(1), unit, {});
  const auto r3 = evaluate_bound(TheoremId::Thm24, FunctionSpec::power(3), unit, q1);
  const auto r2 = evaluate_bound(TheoremId::Thm24, FunctionSpec::power(2), unit, q1);
  const double d3 = deviation_d2_kernel(FunctionSpec::power(3), unit);
  const bool ok = std::abs(r21.lhs_abs - 0.5) <= 1e-12 && std::abs(r21.rhs - 0.5) <= 1e-12 &&
                  std::abs(r3.lhs_abs - 0.75) <= 1e-10 && std::abs(r3.rhs - 0.75) <= 1e-10 &&
                  std::abs(d3 - 0.75) <= 1e-10 && std::abs(r2.lhs_abs - 1.0 / 3) <= 1e-10 &&
                  std::abs(r2.rhs - 1.0 / 3) <= 1e-10;
  return {ok, fmt("thm2.1 x: %.15g/%.15g; thm2.4 x^3: %.15g/%.15g; thm2.4 x^2: %.15g/%.15g", r21.lhs_abs,
                  r21.rhs, r3.lhs_abs, r3.rhs, r2.lhs_abs, r2.rhs)};
}

Verdict theorem_suite(SuiteId id) {
  TrialConfig c;
  c.suites = {id};
  c.seed = 42;
  c.trials = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  const auto batch = run_suite(c);
  const double t = seconds_since(t0);
  const auto& s = batch.suites.front().summary;
  const std::size_t asserted = s.passed + s.failed;
  const bool ok = s.failed == 0 && asserted >= kMinAssertedTrials && t < 60.0;
  return {ok, fmt("%zu asserted, %zu violations (%zu confirmed at 50 digits), %zu filtered, min margin %.6g, %.2f s",
                  asserted, s.failed, s.confirmed_violations, s.filtered, s.min_margin.value_or(NAN), t)};
}

Verdict sign_reproduction() {
  std::ostringstream out, err;
  const int code = cli::run({"verify", "--theorem", "thm2.4", "--sign", "minus", "--per-trial"}, out, err);
  const auto doc = Json::parse(out.str());
  const auto& first = doc["suites"][0]["trials"][0];
  const double lhs = first["lhs"].get<double>();
  const double rhs = first["rhs"].get<double>();
  bool finding = false;
  for (const auto& f : doc["findings"]) finding |= f["suite"] == "thm2.4" && f["kind"] == "sign-convention";
  const bool ok = code == 1 && std::abs(lhs - 2.25) <= 1e-10 && std::abs(rhs - 0.75) <= 1e-10 && finding;
  return {ok, fmt("exit %d, witness lhs_abs %.15g rhs %.15g, finding %s", code, lhs, rhs,
                  finding ? "present" : "absent")};
}

Verdict q1_collapse() {
  TrialConfig c;
  c.suites = {SuiteId::Thm25};
  double worst_bound = 0.0;
  double worst_k = 0.0;
  for (int i = 0; i < 200; ++i) {
    TrialRng rng(42, SuiteId::Thm25, i);
    const auto inst = generate_instance(rng, c, SuiteId::Thm25);
    const double r24 = thm24_rhs(inst.spec, inst.iv, 1.0);
    const double r25 = thm25_rhs(inst.spec, inst.iv, 1.0);
    worst_bound = std::max(worst_bound, r24 == 0.0 ? std::abs(r25) : rel(r25, r24));

    TrialRng krng(42, SuiteId::Prop33, i);
    const double a = krng.uniform(-5.0, 5.0);
    const double b = krng.uniform(-5.0, 5.0);
    const MeanOrder n(krng.uniform_int(3, 8));
    const double x1 = k1(a, b, n, 1.0);
    const double x2 = k2(a, b, n, 1.0);
    worst_k = std::max(worst_k, x1 == 0.0 ? std::abs(x2) : rel(x2, x1));
  }
  return {worst_bound <= 1e-12 && worst_k <= 1e-12,
          fmt("max rel gap thm2.5/thm2.4 = %.3g, k2/k1 = %.3g", worst_bound, worst_k)};
}

Verdict special_functions() {
  double worst_dup = 0.0;
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 7.5}) {
    const auto d = beta_duplication_check(p);
    worst_dup = std::max(worst_dup, rel(d.lhs, d.rhs));
  }
  const double g5 = rel(hhv::gamma(5.0), 24.0);
  const double gh = rel(hhv::gamma(0.5), std::sqrt(std::numbers::pi));
  const double b22 = rel(beta(2.0, 2.0), 1.0 / 6);
  const bool ok = worst_dup <= 1e-10 && g5 <= 1e-12 && gh <= 1e-12 && b22 <= 1e-12;
  return {ok, fmt("duplication %.3g, gamma(5) %.3g, gamma(0.5) %.3g, B(2,2) %.3g", worst_dup, g5, gh, b22)};
}

Verdict prop31_suite() {
  TrialConfig c;
  c.suites = {SuiteId::Prop31};
  c.seed = 42;
  c.trials = 500;
  const auto batch = run_suite(c);
  const auto& sb = batch.suites.front();
  bool box_ok = true;
  for (const auto& t : sb.trials) box_ok &= t.a >= -3.0 && t.b <= 3.0 && t.n && *t.n >= 1 && *t.n <= 8;
  const bool ok = sb.asserted && sb.slack == 1e-12 && sb.summary.failed == 0 && box_ok;
  return {ok, fmt("%zu trials, %zu violations, min margin %.3g", sb.summary.generated, sb.summary.failed,
                  sb.summary.min_margin.value_or(NAN))};
}

std::size_t significant_digits(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) {
    if (ch == 'e' || ch == 'E') break;
    if (ch >= '0' && ch <= '9') ++n;
  }
  return n;
}

Verdict prop_reports() {
  TrialConfig c;
  c.suites = {SuiteId::Prop32, SuiteId::Prop33, SuiteId::Prop34};
  c.seed = 42;
  c.trials = 1000;
  const auto batch = run_suite(c);
  bool ok = !batch.any_asserted_failure();
  std::size_t violations = 0;
  std::size_t confirmed = 0;
  for (const auto& sb : batch.suites) {
    ok &= !sb.asserted && sb.summary.outcome != SuiteOutcome::Fail;
    for (const auto& t : sb.trials) {
      ok &= t.n && *t.n >= 3 && *t.n <= 8 && t.a > 0.0 && t.b <= 5.0;
      if (t.status != TrialStatus::Fail) continue;
      ++violations;
      const bool hp_ok = t.confirmation && significant_digits(t.confirmation->lhs) >= 50 &&
                         significant_digits(t.confirmation->rhs) >= 50;
      ok &= hp_ok;
      if (hp_ok && t.confirmation->violated) ++confirmed;
    }
    ok &= sb.summary.confirmed_violations <= sb.summary.failed;
  }
  std::size_t labeled = 0;
  for (const auto& f : batch.findings) {
    ok &= f.kind != "violation";
    if (f.kind == "reported-violation") labeled += f.count;
  }
  ok &= labeled == confirmed;
  return {ok, fmt("%zu recorded violations, %zu confirmed at >= 50 digits and labeled as findings, none asserted",
                  violations, labeled)};
}

Verdict jensen_suite() {
  TrialConfig c;
  c.suites = {SuiteId::Jensen};
  c.seed = 42;
  c.trials = 200;
  const auto batch = run_suite(c);
  double worst = INFINITY;
  std::size_t checked = 0;
  for (const auto& t : batch.suites.front().trials) {
    if (t.status == TrialStatus::Error) worst = -INFINITY;
    if (t.status == TrialStatus::Pass || t.status == TrialStatus::Fail) {
      worst = std::min(worst, t.lhs - t.rhs);
      ++checked;
    }
  }
  return {worst >= -1e-10 && checked == 200, fmt("%zu pairs, min lhs-rhs = %.3g", checked, worst)};
}

Verdict determinism() {
  const auto dir = fs::temp_directory_path() / "hhv_acceptance";
  fs::create_directories(dir);
  const auto p1 = dir / "r1.json";
  const auto p2 = dir / "r2.json";
  std::ostringstream out, err;
  const int c1 = cli::run({"verify", "--theorem", "all", "--seed", "42", "--format", "json", "--out", p1.string()},
                          out, err);
  const int c2 = cli::run({"verify", "--theorem", "all", "--seed", "42", "--format", "json", "--out", p2.string()},
                          out, err);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  const std::string r1 = slurp(p1);
  const std::string r2 = slurp(p2);
  fs::remove_all(dir);
  return {!r1.empty() && r1 == r2, fmt("%zu bytes, identical: %s (exit codes %d, %d)", r1.size(),
                                        r1 == r2 ? "yes" : "no", c1, c2)};
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Verdict()> run;
};

std::vector<Criterion> criteria() {
  std::vector<Criterion> out{
      {"1", "identity suite", identity_suite},
      {"2", "equality witnesses", equality_witnesses},
  };
  for (SuiteId s : {SuiteId::Thm21, SuiteId::Thm22, SuiteId::Thm23, SuiteId::Thm24, SuiteId::Thm25,
                    SuiteId::Thm26, SuiteId::Thm27}) {
    out.push_back({"3." + std::string(to_string(s)), "property suite " + std::string(to_string(s)),
                   [s] { return theorem_suite(s); }});
  }
  out.push_back({"4", "sign-discrepancy reproduction", sign_reproduction});
  out.push_back({"5", "q = 1 collapse", q1_collapse});
  out.push_back({"6", "special functions", special_functions});
  out.push_back({"7", "prop3.1 suite", prop31_suite});
  out.push_back({"8", "prop3.2-3.4 reports", prop_reports});
  out.push_back({"9", "jensen suite", jensen_suite});
  out.push_back({"10", "report determinism", determinism});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  bool any = false;
  bool all_pass = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : criteria()) {
    if (!only.empty() && c.id != only && c.id.rfind(only + ".", 0) != 0) continue;
    any = true;
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all_pass &= v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << v.detail << std::endl;
  }
  if (!any) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  if (only.empty()) std::cout << fmt("total %.2f s", seconds_since(t0)) << std::endl;
  return all_pass ? 0 : 1;
}
