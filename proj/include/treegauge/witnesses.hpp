#pragma once

#include "treegauge/constructions.hpp"
#include "treegauge/exponents.hpp"
#include "treegauge/truncation.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace treegauge {

/// Smallest N >= 1 with 9N exp(-N^lambda) <= epsilon.
std::uint64_t default_block_depth(double lambda, double epsilon);

struct WitnessParams {
  double lambda = 0.5;
  double epsilon = 0.25;
  std::uint64_t N = 0;            // 0: default_block_depth(lambda, epsilon)
  double share_ratio = 0.5;       // geometric budget split across hanging subtrees
  std::uint64_t max_rays = 1'000'000;
  std::uint64_t max_edges = 2'000'000;
  std::uint64_t max_depth = 4096;            // depth cap of the optimal cut search
  std::uint64_t max_ray_depth = 1'000'000;     // depth cap of single ray cuts
  std::uint64_t max_states = kDefaultMaxVertices;

  /// Validates and fills N. Throws std::invalid_argument.
  WitnessParams resolved() const;
};

/// True iff the subtree at s is a single ray. Accepts T13 and stretch states only.
bool is_ray_state(const NodeState& s);

/// Labels, relative to s, of the first ray vertex on every maximal ray below s. Throws
/// std::invalid_argument for the immortal spine (deficit 1) and ResourceCapError past the cap.
std::vector<Label> mortal_rays(const T13State& s, std::uint64_t max_rays);
std::vector<Label> mortal_rays(const StretchFunction& f, const StretchedPosition& p, std::uint64_t max_rays);

/// Least d >= min_depth with ln w(d) <= ln_budget.
std::uint64_t least_depth_within(const WeightKind& kind, double ln_budget, std::uint64_t min_depth);

/// Cutset of the stretched 1-3 tree with capacity below epsilon: one spine edge plus the
/// maximal rays of every subtree hanging off the spine above it.
Cutset t0_cutset(const StretchFunction& f, const WitnessParams& p);

/// Depth-(N+1) edges whose parent label has at most one nonzero digit.
std::vector<Label> beta_edges(std::uint64_t N, const Truncation& t);

struct TTildeCutset {
  Cutset cutset;              // union of both parts
  std::vector<Label> beta;
  std::uint64_t N = 0;
  std::uint64_t depth = 0;    // cut depth of the ray part
  double ln_pi_capacity = 0;  // part away from beta
  double ln_beta_capacity = 0;
};

/// Cutset of the shift saturation: the beta edges plus an optimal cut of every path whose
/// first N digits hold two nonzero entries. Throws ResourceCapError when no cut within
/// p.max_depth meets the budget with at most p.max_edges edges.
TTildeCutset t_tilde_cutset(const StretchFunction& f, const WitnessParams& p, const Truncation& t_tilde);

struct VerifyReport {
  bool ok = false;
  double ln_capacity = 0;
  std::optional<Label> counterexample;
};

/// Whether every root path to depth max_depth(cs) meets cs. Throws std::invalid_argument if
/// an edge is absent from the tree, std::out_of_range if the truncation is too shallow.
VerifyReport verify_cutset(const Truncation& t, const Cutset& cs);
/// Same check walking the rule lazily along the cut labels only.
VerifyReport verify_cutset(const TreeRule& rule, const Cutset& cs);

/// Maximum number of nonzero digits over labels of each depth 0..D.
std::vector<std::uint64_t> level_max_nonzero(const TreeRule& rule, unsigned depth,
                                             std::uint64_t max_states = kDefaultMaxVertices);
std::vector<std::uint64_t> level_max_nonzero(const Truncation& t);

struct CountBoundReport {
  std::vector<double> log3_ratio;  // log3 |T_n| / sqrt n, index n (entry 0 unused)
  std::vector<double> nonzero_ratio;
  double C_hat = 0;                // max of log3_ratio over 1..D
  double c_hat = 0;                // max of nonzero_ratio over 1..D
  double lower = 0;                // min of log3_ratio over [lower_lo, D]
  unsigned lower_lo = 0;
};

/// Throws std::invalid_argument below depth 16.
CountBoundReport count_bound_check(const std::vector<BigInt>& level_counts,
                                   const std::vector<std::uint64_t>& max_nonzero, unsigned lower_lo = 32);
CountBoundReport count_bound_check(const Truncation& t, unsigned lower_lo = 32);

nlohmann::ordered_json to_json(const VerifyReport& r);
nlohmann::ordered_json to_json(const CountBoundReport& r);

}  // namespace treegauge
