#pragma once

#include "treegauge/label.hpp"
#include "treegauge/truncation.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

namespace treegauge {

inline constexpr std::size_t kMaxReportedViolations = 100;

struct ClosureReport {
  bool closed = true;
  std::uint64_t violation_count = 0;
  std::vector<Label> violations;  // first kMaxReportedViolations in BFS order
};

/// Checks that the label set is closed under dropping the first digit.
ClosureReport check_shift_closure(const Truncation& t);

/// Image of every vertex under the shift, or nullopt where the shifted label is missing.
std::vector<std::optional<Truncation::Index>> shift_map(const Truncation& t);

/// Whether the depth-d subtree at x embeds into the depth-d subtree at y as a rooted tree.
/// Throws std::out_of_range if d + max(|x|, |y|) exceeds the truncation depth and
/// std::invalid_argument if either label is absent.
bool injection_witness(const Truncation& t, const Label& x, const Label& y, unsigned d);

nlohmann::ordered_json to_json(const ClosureReport& r);

}  // namespace treegauge
