#pragma once

#include "treegauge/bigint.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace treegauge {

/// Vertex of the 1-3 tree at `level`, stored by its deficit 2^level - rank (rank counts the
/// 2^level vertices of the level left to right). The rightmost vertex has deficit 1, so
/// vertices near the right edge stay small at any level.
struct T13State {
  unsigned level = 0;
  BigInt deficit = 1;

  static T13State from_rank(unsigned level, const BigInt& rank);
  BigInt rank() const;

  friend bool operator==(const T13State&, const T13State&) = default;
  // level, then rank
  friend bool operator<(const T13State& a, const T13State& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.deficit > b.deficit;
  }
};

/// Interior vertex of a stretched edge: `zeros_left` more 0-edges lead to `target`.
struct StretchState {
  std::uint64_t zeros_left = 1;
  T13State target;

  friend bool operator==(const StretchState&, const StretchState&) = default;
  friend bool operator<(const StretchState& a, const StretchState& b) {
    if (a.zeros_left != b.zeros_left) return a.zeros_left < b.zeros_left;
    return a.target < b.target;
  }
};

/// A vertex of a stretched 1-3 tree in flattened form; zeros_left == 0 means the branch vertex itself.
struct StretchedPosition {
  std::uint64_t zeros_left = 0;
  T13State vertex;

  friend bool operator==(const StretchedPosition&, const StretchedPosition&) = default;
  friend bool operator<(const StretchedPosition& a, const StretchedPosition& b) {
    if (a.zeros_left != b.zeros_left) return a.zeros_left < b.zeros_left;
    return a.vertex < b.vertex;
  }
};

/// Vertex of a union of labelled trees: the positions whose subtrees contain it. Sorted, unique.
struct UnionState {
  std::vector<StretchedPosition> members;

  friend bool operator==(const UnionState&, const UnionState&) = default;
  friend bool operator<(const UnionState& a, const UnionState& b) { return a.members < b.members; }
};

enum class CombKind : std::uint8_t { SpineOrigin, SpineArm, Tooth };

struct CombState {
  CombKind kind = CombKind::SpineOrigin;

  friend bool operator==(const CombState&, const CombState&) = default;
  friend bool operator<(const CombState& a, const CombState& b) { return a.kind < b.kind; }
};

struct CoverState {
  std::uint32_t vertex = 0;

  friend bool operator==(const CoverState&, const CoverState&) = default;
  friend bool operator<(const CoverState& a, const CoverState& b) { return a.vertex < b.vertex; }
};

/// Finite description of the subtree hanging below a vertex.
using NodeState = std::variant<T13State, StretchState, UnionState, CombState, CoverState>;

std::string describe(const NodeState& s);

}  // namespace treegauge
