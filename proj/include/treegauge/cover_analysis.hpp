#pragma once

#include "treegauge/bigint.hpp"
#include "treegauge/constructions.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace treegauge {

struct SCCDecomposition {
  /// Component per vertex; nullopt for vertices on no directed cycle.
  std::vector<std::optional<std::uint32_t>> component;
  std::uint32_t component_count = 0;
  std::vector<std::vector<std::uint32_t>> members;            // per component, sorted
  std::vector<std::vector<std::uint32_t>> condensation;       // component DAG, sorted, no duplicates
  std::vector<char> has_internal_branch;                      // per component
};

SCCDecomposition scc(const DirectedGraph& g);

struct GrowthClass {
  bool exponential = false;  // ExponentialBranching
  unsigned d = 0;            // polynomial degree when !exponential
};

/// Exponential branching if a component reachable from the base has a vertex with two
/// out-edges inside it; otherwise Polynomial(d), d = most cycle components on one directed
/// path from the base. Vertices on no cycle are passed through without counting.
GrowthClass classify_growth(const DirectedGraph& g);

/// Level counts of the cover, |T_0|..|T_depth|, by the per-vertex recurrence.
std::vector<BigInt> cover_level_counts(const DirectedGraph& g, std::uint64_t depth);

struct ThetaReport {
  double lo_ratio = 0, hi_ratio = 0;  // min / max of |B(n)| / n^d over the range
};

/// Throws std::invalid_argument for ranges with fewer than 10 points.
ThetaReport theta_check(const DirectedGraph& g, unsigned d, std::uint64_t n_lo, std::uint64_t n_hi);

nlohmann::ordered_json to_json(const GrowthClass& c, const std::optional<ThetaReport>& theta = {});

}  // namespace treegauge
