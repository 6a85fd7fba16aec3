#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhverify/bounds.hpp"
#include "hhverify/hp_oracle.hpp"

namespace hhv {

/// Everything the harness can run: the two lemma checks, the bounded
/// inequalities and the four propositions on means.
enum class SuiteId {
  Lemma11,
  Jensen,
  Thm21,
  Thm22,
  Thm23,
  Remark21,
  Thm24,
  Thm25,
  Thm26,
  Thm27,
  Prop31,
  Prop32,
  Prop33,
  Prop34,
};

std::string_view to_string(SuiteId id) noexcept;
/// "lemma1.1", "lemma1.2", "thm2.1".., "remark2.1", "prop3.1".. (case-insensitive).
std::optional<SuiteId> parse_suite_id(std::string_view text);
const std::vector<SuiteId>& all_suites();
std::optional<TheoremId> theorem_of(SuiteId id) noexcept;

/// Asserted suites fail the run on a violation; the others only report.
bool is_asserted(SuiteId id) noexcept;
/// Margin below which an asserted trial fails (-1e-9 for the theorems).
double assertion_slack(SuiteId id) noexcept;

/// SplitMix64; trial i of suite s draws from its own stream keyed by
/// (seed, s, i), so records do not depend on execution order.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, SuiteId suite, std::uint64_t trial);
  explicit TrialRng(std::uint64_t state) : state_(state) {}

  std::uint64_t next() noexcept;
  /// 53-bit uniform in [0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) noexcept;

 private:
  std::uint64_t state_;
};

struct SamplerBox {
  double lo = 0.0;
  double hi = 5.0;
  std::optional<double> a_max;
};

struct FamilyWeights {
  double power = 1.0;
  double exp = 1.0;
  double poly = 1.0;
};

/// One fully specified trial input. `phi` is set only for Jensen trials and
/// `n` only for the propositions (whose function is x^n).
struct Instance {
  FunctionSpec spec;
  Interval iv;
  BoundParams params;
  std::optional<FunctionSpec> phi;
  std::optional<int> n;
};

struct PinnedInstance {
  SuiteId suite;
  Instance instance;
};

struct TrialConfig {
  std::uint64_t seed = 42;
  int trials = 1000;
  std::vector<SuiteId> suites;
  /// Overrides every suite's default sampling box when set.
  std::optional<SamplerBox> box;
  std::vector<double> p_grid{1.5, 2.0, 3.0};
  std::vector<double> q_grid{1.0, 1.5, 2.0, 3.0};
  FamilyWeights weights;
  SignConvention sign = SignConvention::PlusDerived;
  bool allow_negative_a = false;
  int shrink_steps = 20;
  /// Evaluated ahead of the generated trials of their suite.
  std::vector<PinnedInstance> pinned;
  /// 0 picks the hardware concurrency. Does not affect results.
  int threads = 0;
};

/// Throws ConfigError describing the first problem found.
void validate(const TrialConfig& config);

/// Default box per suite: [-3, 3] for prop3.1, [0, 3] for lemma1.1,
/// [0, 1.5] for lemma1.2, [0, 5] otherwise.
SamplerBox default_box(SuiteId id);

Instance generate_instance(TrialRng& rng, const TrialConfig& config, SuiteId suite);

enum class TrialStatus { Pass, Fail, Filtered, Error };
std::string_view to_string(TrialStatus s) noexcept;

struct TrialRecord {
  SuiteId suite = SuiteId::Thm21;
  std::size_t index = 0;
  bool pinned = false;
  std::optional<Instance> instance;

  std::string function;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> M;
  std::optional<int> n;

  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool hypotheses_ok = true;
  std::vector<HypothesisCheck> hypotheses;
  std::optional<SignConvention> sign;
  TrialStatus status = TrialStatus::Pass;
  std::string error;
  /// Suite-specific values (K constants, the a, b > 0 part of the pair
  /// propositions, high-precision margins).
  std::map<std::string, double> extras;
  std::optional<hp::Confirmation> confirmation;
};

struct EvalContext {
  SignConvention sign = SignConvention::PlusDerived;
  bool allow_negative_a = false;
};

/// Evaluates one instance; evaluation errors become an Error record.
TrialRecord evaluate_instance(SuiteId suite, const Instance& instance, const EvalContext& ctx);

enum class SuiteOutcome { Pass, Fail, Inconclusive, Reported };
std::string_view to_string(SuiteOutcome o) noexcept;

inline constexpr std::size_t kMinAssertedTrials = 50;

struct SuiteSummary {
  std::size_t generated = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;  // includes errors
  std::size_t filtered = 0;
  std::size_t errors = 0;
  std::size_t confirmed_violations = 0;
  std::optional<double> min_margin;
  std::optional<std::size_t> worst_trial;
  SuiteOutcome outcome = SuiteOutcome::Pass;
};

struct SuiteBatch {
  SuiteId suite;
  bool asserted;
  double slack;
  std::vector<TrialRecord> trials;
  SuiteSummary summary;
};

struct Finding {
  std::string suite;
  std::string kind;
  std::string message;
  std::size_t count = 0;
  std::optional<TrialRecord> witness;
  std::optional<TrialRecord> minimized;
};

struct TrialBatch {
  TrialConfig config;
  std::vector<SuiteBatch> suites;
  std::vector<Finding> findings;
  double wall_seconds = 0.0;

  bool any_asserted_failure() const;
};

TrialBatch run_suite(const TrialConfig& config);

/// Shrinks a violating record: halves the interval toward [a, a + (b-a)/2]
/// and pulls coefficients toward 1, keeping each step only while the
/// violation persists. Throws NotAViolation when margin >= 0.
TrialRecord minimize_counterexample(const TrialRecord& record, int shrink_steps,
                                    const EvalContext& ctx = {});

}  // namespace hhv
