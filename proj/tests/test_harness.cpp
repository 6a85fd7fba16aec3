#include <doctest.h>

#include <cmath>
#include <set>

#include "hhverify/error.hpp"
#include "hhverify/harness.hpp"

using namespace hhv;

namespace {

TrialConfig small(SuiteId s, int trials = 200, std::uint64_t seed = 42) {
  TrialConfig c;
  c.suites = {s};
  c.trials = trials;
  c.seed = seed;
  c.threads = 3;
  return c;
}

}  // namespace

TEST_CASE("rng streams are keyed and reproducible") {
  TrialRng a(42, SuiteId::Thm21, 7);
  TrialRng b(42, SuiteId::Thm21, 7);
  TrialRng c(42, SuiteId::Thm21, 8);
  TrialRng d(42, SuiteId::Thm22, 7);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const int k = a.uniform_int(3, 8);
    CHECK((k >= 3 && k <= 8));
  }
}

TEST_CASE("generated instances respect the construction rules") {
  TrialConfig config;
  for (SuiteId s : all_suites()) {
    for (int i = 0; i < 200; ++i) {
      TrialRng rng(42, s, i);
      const auto inst = generate_instance(rng, config, s);
      CHECK(inst.iv.length() >= 1e-3);
      if (s == SuiteId::Thm21 || s == SuiteId::Thm22) CHECK(inst.iv.a() >= 0.0);
      if (s == SuiteId::Thm23) CHECK(inst.iv.a() > 0.0);
      if (s == SuiteId::Thm26 || s == SuiteId::Thm27) {
        REQUIRE(inst.params.pq.has_value());
        CHECK(inst.params.pq->mode() == ExponentMode::Conjugate);
      }
      if (s == SuiteId::Prop31) {
        REQUIRE(inst.n.has_value());
        CHECK((*inst.n >= 1 && *inst.n <= 8));
      }
      if (s == SuiteId::Jensen) CHECK(inst.phi.has_value());
    }
  }
}

TEST_CASE("config validation") {
  TrialConfig empty;
  CHECK_THROWS_AS(validate(empty), Error);
  auto c = small(SuiteId::Thm21);
  c.trials = 0;
  CHECK_THROWS_AS(validate(c), Error);
  c = small(SuiteId::Thm22);
  c.p_grid = {1.0};
  CHECK_THROWS_AS(validate(c), Error);
  c = small(SuiteId::Thm21);
  c.box = SamplerBox{2.0, 1.0, std::nullopt};
  CHECK_THROWS_AS(validate(c), Error);
  CHECK_THROWS_AS(run_suite(empty), Error);
}

TEST_CASE("run_suite is deterministic and independent of thread count") {
  auto c = small(SuiteId::Thm25, 150, 3);
  const auto one = run_suite(c);
  c.threads = 1;
  const auto two = run_suite(c);
  REQUIRE(one.suites.size() == 1);
  const auto& t1 = one.suites[0].trials;
  const auto& t2 = two.suites[0].trials;
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].function == t2[i].function);
    CHECK(t1[i].a == t2[i].a);
    CHECK(t1[i].margin == t2[i].margin);
  }
}

TEST_CASE("summary accounting") {
  for (SuiteId s : {SuiteId::Thm21, SuiteId::Thm22, SuiteId::Prop33, SuiteId::Jensen}) {
    const auto batch = run_suite(small(s));
    const auto& sum = batch.suites[0].summary;
    CHECK(sum.generated == 200);
    CHECK(sum.passed + sum.failed + sum.filtered == sum.generated);
    CHECK(sum.errors <= sum.failed);
    std::size_t fails = 0;
    for (const auto& t : batch.suites[0].trials) {
      if (t.status == TrialStatus::Fail || t.status == TrialStatus::Error) ++fails;
      if (t.status == TrialStatus::Fail) CHECK(t.confirmation.has_value());
    }
    CHECK(fails == sum.failed);
  }
}

TEST_CASE("plus-sign second-deviation suites pass") {
  for (SuiteId s : {SuiteId::Thm24, SuiteId::Thm25, SuiteId::Thm26, SuiteId::Thm27}) {
    const auto batch = run_suite(small(s, 300, 7));
    CHECK(batch.suites[0].summary.failed == 0);
    CHECK(batch.suites[0].summary.outcome == SuiteOutcome::Pass);
    CHECK_FALSE(batch.any_asserted_failure());
  }
}

TEST_CASE("sign discrepancy reproduction and shrinking") {
  auto c = small(SuiteId::Thm24, 20);
  c.sign = SignConvention::MinusAsPrinted;
  BoundParams q1;
  q1.q = 1.0;
  c.pinned.push_back({SuiteId::Thm24, Instance{FunctionSpec::power(3), Interval(0.0, 1.0), q1,
                                               std::nullopt, std::nullopt}});
  const auto batch = run_suite(c);
  const auto& first = batch.suites[0].trials.front();
  CHECK(first.pinned);
  CHECK(first.lhs == doctest::Approx(2.25).epsilon(1e-10));
  CHECK(first.rhs == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(first.status == TrialStatus::Fail);
  CHECK(batch.any_asserted_failure());
  REQUIRE_FALSE(batch.findings.empty());

  const auto small_rec = minimize_counterexample(first, 20, {SignConvention::MinusAsPrinted, false});
  CHECK(small_rec.margin < 0.0);
  CHECK(small_rec.b - small_rec.a <= 1.0);

  const auto same = minimize_counterexample(first, 0, {SignConvention::MinusAsPrinted, false});
  CHECK(same.a == first.a);
  CHECK(same.b == first.b);
  CHECK(same.margin == first.margin);

  const auto passing = run_suite(small(SuiteId::Thm24, 5)).suites[0].trials.front();
  REQUIRE(passing.margin >= 0.0);
  try {
    minimize_counterexample(passing, 20);
    FAIL("expected NotAViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAViolation);
  }
}

TEST_CASE("report-only suites never fail the batch") {
  auto c = small(SuiteId::Prop33, 200);
  const auto batch = run_suite(c);
  CHECK_FALSE(batch.suites[0].asserted);
  CHECK(batch.suites[0].summary.outcome == SuiteOutcome::Reported);
  CHECK_FALSE(batch.any_asserted_failure());
}

TEST_CASE("asserted trials satisfy their hypotheses") {
  for (SuiteId s : {SuiteId::Thm21, SuiteId::Thm23, SuiteId::Thm24, SuiteId::Thm27}) {
    auto c = small(s, 300, 9);
    c.allow_negative_a = s != SuiteId::Thm23;
    c.box = SamplerBox{-2.0, 3.0, std::nullopt};
    if (s == SuiteId::Thm23) c.box = SamplerBox{0.1, 3.0, std::nullopt};
    const auto batch = run_suite(c);
    for (const auto& t : batch.suites[0].trials) {
      if (t.status == TrialStatus::Pass || t.status == TrialStatus::Fail) CHECK(t.hypotheses_ok);
      if (!t.hypotheses_ok) CHECK(t.status == TrialStatus::Filtered);
    }
  }
}

TEST_CASE("an evaluation error stays inside its trial") {
  auto base = small(SuiteId::Thm24, 80, 4);
  const auto clean = run_suite(base);

  auto with_bad = base;
  BoundParams q1;
  q1.q = 1.0;
  const auto broken = FunctionSpec::custom("broken", [](double x, int) {
    if (x > 0.5) throw Error(ErrorKind::NonFiniteValue, "boom");
    return x;
  });
  with_bad.pinned.push_back({SuiteId::Thm24, Instance{broken, Interval(0.0, 1.0), q1, std::nullopt, std::nullopt}});
  const auto batch = run_suite(with_bad);
  const auto& trials = batch.suites[0].trials;
  REQUIRE(trials.size() == clean.suites[0].trials.size() + 1);
  CHECK(trials[0].status == TrialStatus::Error);
  CHECK_FALSE(trials[0].error.empty());
  CHECK(batch.suites[0].summary.errors == 1);
  for (std::size_t i = 1; i < trials.size(); ++i) {
    const auto& ref = clean.suites[0].trials[i - 1];
    CHECK(trials[i].function == ref.function);
    CHECK(trials[i].margin == ref.margin);
    CHECK(trials[i].status == ref.status);
  }
}
