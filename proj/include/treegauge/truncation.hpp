#pragma once

#include "treegauge/bigint.hpp"
#include "treegauge/label.hpp"
#include "treegauge/tree_rule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treegauge {

inline constexpr std::uint64_t kDefaultMaxVertices = 200'000'000;

/// Raised when an enumeration would exceed its vertex budget.
class ResourceCapError : public std::runtime_error {
 public:
  ResourceCapError(const std::string& what, unsigned level_reached, std::uint64_t cap)
      : std::runtime_error(what), level_reached_(level_reached), cap_(cap) {}
  unsigned level_reached() const { return level_reached_; }
  std::uint64_t cap() const { return cap_; }

 private:
  unsigned level_reached_;
  std::uint64_t cap_;
};

/// Cap from TREEGAUGE_MAX_VERTICES when set, otherwise the default.
std::uint64_t max_vertices_from_env();

/// Immutable depth-D truncation of a rule-defined tree, stored as a BFS-ordered arena.
/// Vertices of depth n occupy the contiguous index range level_range(n); siblings are
/// contiguous and sorted by digit.
class Truncation {
 public:
  using Index = std::uint32_t;
  static constexpr Index kNoParent = static_cast<Index>(-1);

  unsigned depth() const { return depth_; }
  std::size_t vertex_count() const { return parent_.size(); }

  Index parent(Index v) const { return parent_[v]; }
  Digit digit(Index v) const { return digit_[v]; }
  unsigned depth_of(Index v) const;

  std::pair<Index, Index> level_range(unsigned n) const { return {level_begin_[n], level_begin_[n + 1]}; }
  /// [first, last) indices of v's children; empty at depth D.
  std::pair<Index, Index> children(Index v) const { return {first_child_[v], first_child_[v + 1]}; }

  std::vector<BigInt> level_counts() const;
  std::vector<BigInt> ball_counts() const;

  Label label_of(Index v) const;
  std::optional<Index> vertex_of(const Label& l) const;

  const std::string& rule_name() const { return rule_name_; }
  const std::map<std::string, std::string>& provenance() const { return provenance_; }

  /// Build from a prefix-closed label set (any order). Every label's parent must be present.
  static Truncation from_labels(std::vector<Label> labels, std::string rule_name,
                                std::map<std::string, std::string> provenance = {});

 private:
  friend Truncation expand(const TreeRule& rule, unsigned depth, std::uint64_t max_vertices);

  unsigned depth_ = 0;
  std::vector<Index> parent_;
  std::vector<Digit> digit_;
  std::vector<Index> first_child_;  // size vertex_count + 1
  std::vector<Index> level_begin_;  // size depth + 2
  std::string rule_name_;
  std::map<std::string, std::string> provenance_;
};

/// BFS expansion to depth D in canonical sibling order. Throws ResourceCapError past the cap.
Truncation expand(const TreeRule& rule, unsigned depth, std::uint64_t max_vertices = kDefaultMaxVertices);

/// Level sizes |T_0|..|T_D| without materializing vertices: BFS over canonical states with
/// multiplicities. The cap applies to the number of distinct states on one level.
std::vector<BigInt> count_levels(const TreeRule& rule, unsigned depth,
                                 std::uint64_t max_states = kDefaultMaxVertices);

std::vector<BigInt> prefix_sums(const std::vector<BigInt>& counts);

enum class ExportFormat { Dot, Jsonl, CsvLevels };

ExportFormat parse_export_format(const std::string& name);

void export_truncation(const Truncation& t, ExportFormat format, std::ostream& out);

/// CSV rows n,level_count,ball_count with a header row.
void write_levels_csv(const std::vector<BigInt>& level_counts, std::ostream& out);

}  // namespace treegauge
