#pragma once

#include "treegauge/bigint.hpp"
#include "treegauge/label.hpp"
#include "treegauge/tree_rule.hpp"
#include "treegauge/truncation.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treegauge {

/// A run-time check of a mathematical invariant failed; this is a bug, never an expected outcome.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class WeightFamily { Exponential, Polynomial, Stretched };

WeightFamily parse_family(const std::string& name);
std::string to_string(WeightFamily f);

/// Edge weights by depth: lambda^-d, d^-lambda, or exp(-d^lambda).
struct WeightKind {
  WeightFamily family = WeightFamily::Exponential;
  double lambda = 2.0;

  WeightKind() = default;
  WeightKind(WeightFamily f, double l);

  /// ln w(d) for d >= 1.
  double ln_weight(std::uint64_t d) const;
};

/// Streaming log-sum-exp.
class LogSum {
 public:
  void add(double ln_x);
  double value() const;  // -inf when empty
  bool empty() const { return count_ == 0; }

 private:
  double max_ = 0;
  double scaled_ = 0;
  std::size_t count_ = 0;
};

/// Edges named by head label (edge depth = label length), with capacity sum w(|e|) in log domain.
struct Cutset {
  std::vector<Label> edges;
  WeightKind kind;
  double ln_capacity = 0;

  std::uint64_t max_depth() const;
  /// Recomputes ln_capacity from the edge depths.
  void recompute_capacity();
};

void write_cutset_jsonl(const Cutset& cs, std::ostream& out);

struct MincutResult {
  double ln_value = 0;
  Cutset witness;
};

/// Minimum capacity over cutsets lying within the truncation, with a witness. Ties cut the
/// shallower edge.
MincutResult mincut(const Truncation& t, const WeightKind& kind);

/// Same minimum computed over deduplicated canonical states, without an arena. Edges into
/// ray states cost w(D) directly, so depths far beyond explicit enumeration are reachable.
double mincut_by_states(const TreeRule& rule, const WeightKind& kind, std::uint64_t depth,
                        std::uint64_t max_states = kDefaultMaxVertices);

/// ln(|T_n| w(n)).
double level_sum(const BigInt& level_count, const WeightKind& kind, std::uint64_t n);
double level_sum(const Truncation& t, const WeightKind& kind, unsigned n);

struct GrowthPoint {
  unsigned n = 0;
  double ratio = 0;  // ln ln |B(n)| / ln n
};

struct GrowthProfile {
  std::vector<GrowthPoint> points;
  unsigned window_lo = 0, window_hi = 0;
  double slope = 0;  // least-squares slope of ln ln |B(n)| against ln n over the window
};

/// Window defaults to [D/3, D].
GrowthProfile growth_profile(const std::vector<BigInt>& ball_counts, std::optional<unsigned> lo = {},
                             std::optional<unsigned> hi = {});
GrowthProfile growth_profile(const Truncation& t, std::optional<unsigned> lo = {}, std::optional<unsigned> hi = {});

struct DecisionRule {
  double theta = 1e-3;
  double rho = 0.7;
};

struct LambdaEvaluation {
  double lambda = 0;
  std::vector<double> ln_values;  // per schedule depth
  bool decaying = false;
};

struct EstimateReport {
  std::string rule_name;
  WeightFamily family = WeightFamily::Exponential;
  double lambda_star = 0;
  double lo = 0, hi = 0;
  std::vector<std::uint64_t> schedule;
  DecisionRule decision;
  std::vector<LambdaEvaluation> evaluations;  // in evaluation order
};

struct EstimateOptions {
  DecisionRule decision;
  double tolerance = 0.05;
  std::optional<double> bracket_lo, bracket_hi;
  std::uint64_t max_states = kDefaultMaxVertices;
};

/// Default bisection brackets: [1, b+1], [0.01, 8], [0.01, 1.5].
std::pair<double, double> default_bracket(WeightFamily f, unsigned alphabet);

/// Mincut values of the rule at every depth of the schedule for one weight kind.
std::vector<double> mincut_trace(const TreeRule& rule, const WeightKind& kind, const std::vector<std::uint64_t>& schedule,
                                 std::uint64_t max_states = kDefaultMaxVertices);

/// Decaying verdict on a trace: final value <= theta, or final/mid <= rho.
bool is_decaying(const std::vector<double>& ln_values, const DecisionRule& d);

/// Bisection for the supremum of non-decaying lambda. Throws InvariantViolation when the
/// verdicts along the bisection are not monotone in lambda.
EstimateReport estimate_branching(const TreeRule& rule, WeightFamily family, std::vector<std::uint64_t> schedule,
                                  const EstimateOptions& opt = {});

nlohmann::ordered_json to_json(const EstimateReport& r);
nlohmann::ordered_json to_json(const GrowthProfile& g);

}  // namespace treegauge
