#pragma once

#include "treegauge/label.hpp"
#include "treegauge/node_state.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace treegauge {

struct Child {
  Digit digit = 0;
  NodeState state;
};

/// Finite presentation of an infinite leafless labelled tree.
///
/// `children` must be pure and return a nonempty list with strictly increasing digits.
/// `is_ray` (optional) marks states whose subtree is a single infinite path.
/// `canonical` (optional) maps a state to a representative whose subtree agrees with it
/// for `remaining` further levels; state-deduplicating algorithms key on the result.
struct TreeRule {
  using ChildFn = std::function<std::vector<Child>(const NodeState&)>;
  using RayFn = std::function<bool(const NodeState&)>;
  using CanonicalFn = std::function<NodeState(const NodeState&, std::uint64_t remaining)>;

  std::string name;
  unsigned alphabet = 3;
  NodeState root;
  ChildFn children;
  RayFn is_ray;
  CanonicalFn canonical;
  std::map<std::string, std::string> provenance;

  /// Children with the rule invariants checked; throws std::logic_error on violation.
  std::vector<Child> checked_children(const NodeState& s) const;

  bool ray(const NodeState& s) const { return is_ray && is_ray(s); }

  NodeState canonicalize(const NodeState& s, std::uint64_t remaining) const {
    return canonical ? canonical(s, remaining) : s;
  }
};

}  // namespace treegauge
