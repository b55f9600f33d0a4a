#pragma once

#include "treegauge/bigint.hpp"
#include "treegauge/tree_rule.hpp"
#include "treegauge/truncation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace treegauge {

// ---------------------------------------------------------------------------
// Stretch functions

/// Edge-length schedule f: identity, or f(x) = ceil(x^(p/q)) evaluated exactly.
class StretchFunction {
 public:
  static StretchFunction identity() { return StretchFunction(1, 1); }
  static StretchFunction power_ceil(std::uint32_t p, std::uint32_t q);
  /// Parses "1", "3", "1/3", "0.5" style exponents (decimals become exact fractions).
  static StretchFunction parse(const std::string& s);

  std::uint64_t operator()(std::uint64_t x) const;
  bool is_identity() const { return p_ == q_; }
  std::uint32_t num() const { return p_; }
  std::uint32_t den() const { return q_; }
  double exponent() const { return static_cast<double>(p_) / q_; }
  std::string to_string() const;

 private:
  StretchFunction(std::uint32_t p, std::uint32_t q) : p_(p), q_(q) {}
  std::uint32_t p_, q_;
};

/// Depth of the level-n branch vertices of a stretched 1-3 tree: f(1) + ... + f(n).
std::uint64_t stretched_depth(const StretchFunction& f, unsigned level);

// ---------------------------------------------------------------------------
// 1-3 tree rank arithmetic

/// Left-half vertices (level >= 1, rank < 2^(level-1)) have one child and span a ray.
bool t13_is_left_half(const T13State& s);
/// The rightmost vertex 2^n - 1 of level n (rank 0 at level 0).
T13State t13_rightmost(unsigned level);
std::vector<Child> t13_children(const T13State& s);
/// Representative of s whose labelled subtree is identical to that of s.
T13State t13_canonical(const T13State& s);

TreeRule t13_rule();

// ---------------------------------------------------------------------------
// Stretched trees

/// The tree obtained from the 1-3 tree by replacing each edge into level m by a path of
/// length f(m): the first edge keeps the original digit, the rest carry digit 0.
TreeRule stretch_rule(const StretchFunction& f);

/// Children of a stretched-tree vertex in flattened form.
std::vector<std::pair<Digit, StretchedPosition>> stretched_children(const StretchFunction& f,
                                                                    const StretchedPosition& p);
bool stretched_is_ray(const StretchedPosition& p);
StretchedPosition to_position(const NodeState& s);
NodeState to_state(const StretchedPosition& p);

// ---------------------------------------------------------------------------
// Shift saturation

struct SaturationParams {
  unsigned depth = 16;
  std::optional<std::uint64_t> seed_depth;  // default: default_seed_depth(f, D)
  std::optional<std::uint64_t> sweep;       // default: D
  unsigned max_sweeps = 8;
  std::uint64_t max_vertices = kDefaultMaxVertices;
};

/// Representatives of all stretched-tree vertices of depth <= seed_depth. Each class
/// (zeros_left, level) is represented by its rightmost vertex, whose subtree contains the
/// subtree of every vertex in the class. Classes with more than `max_zeros` leading zeros
/// are represented only by zeros_left == max_zeros (they agree to depth max_zeros - 1).
/// With a finite cap, levels whose next max_zeros + 1 edge lengths repeat the previous
/// level's are skipped, since their seeds add nothing within that depth.
std::vector<StretchedPosition> saturation_seeds(const StretchFunction& f, std::uint64_t seed_depth,
                                                std::uint64_t max_zeros = UINT64_MAX);

/// f(1) + ... + f(m + 1) + D, where m >= D + 2 is the last level whose edges are at most
/// D long. Every depth-D window with two nonzero digits starts above this depth.
std::uint64_t default_seed_depth(const StretchFunction& f, unsigned depth);

/// Union rule of the subtrees (as labelled trees rooted at the empty label) of the given
/// stretched-tree positions.
TreeRule union_rule(const StretchFunction& f, std::vector<StretchedPosition> seeds, std::string name);

struct SaturationResult {
  TreeRule rule;                      // union rule at the certified seed depth
  std::uint64_t certified_seed_depth = 0;
  unsigned sweeps_used = 0;
  std::vector<BigInt> level_counts;   // of the depth-D truncation
};

/// Saturation loop: raise the seed depth by `sweep` until the depth-D label set stops
/// growing. Throws std::runtime_error carrying the last two label counts otherwise.
SaturationResult saturate(const StretchFunction& f, const SaturationParams& p);

/// Depth-D truncation of the shift saturation of the stretched tree.
Truncation t_tilde_truncation(const StretchFunction& f, const SaturationParams& p);

// ---------------------------------------------------------------------------
// Z^2 comb and directed covers

/// Lexicographically minimal spanning tree of Z^2 rooted at the origin: a horizontal spine
/// with a vertical tooth through every spine vertex.
TreeRule comb_rule();

struct DirectedGraph {
  std::uint32_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::uint32_t base = 0;

  /// Throws std::invalid_argument on bad ids or a vertex without out-edges.
  void validate() const;
};

DirectedGraph read_digraph_json(const std::filesystem::path& path);
DirectedGraph parse_digraph_json(const std::string& text);

/// Directed cover (tree of directed walks from the base vertex).
TreeRule cover_rule(const DirectedGraph& g);

/// Convenience digraphs.
DirectedGraph self_loop_graph(unsigned loops);       // one vertex, `loops` self-loops
DirectedGraph loop_chain_graph(unsigned k);          // a1->a2->...->ak, each with a self-loop

}  // namespace treegauge
