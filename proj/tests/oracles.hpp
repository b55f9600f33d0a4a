#pragma once

#include "treegauge/constructions.hpp"
#include "treegauge/exponents.hpp"
#include "treegauge/truncation.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace treegauge::test {

// Plain-double capacity of a set of edges (named by head vertex).
inline double direct_capacity(const Truncation& t, const std::vector<Truncation::Index>& heads, const WeightKind& k) {
  double sum = 0;
  for (auto v : heads) sum += std::exp(k.ln_weight(t.depth_of(v)));
  return sum;
}

// Does the edge set (as a head mask) meet every root-to-depth-D path?
inline bool blocks_all(const Truncation& t, const std::vector<char>& cut) {
  std::vector<Truncation::Index> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v != 0 && cut[v]) continue;
    if (t.depth_of(v) == t.depth()) return false;
    auto [b, e] = t.children(v);
    for (auto c = b; c < e; ++c) stack.push_back(c);
  }
  return true;
}

// Minimal cutsets below v, as explicit head lists: cut the edge into v, or cut below every child.
inline void enumerate_cutsets(const Truncation& t, Truncation::Index v, std::uint64_t cap,
                              std::vector<std::vector<Truncation::Index>>& out) {
  out.clear();
  if (v != 0) out.push_back({v});
  auto [b, e] = t.children(v);
  if (b == e) return;
  std::vector<std::vector<Truncation::Index>> combos{{}};
  std::vector<std::vector<Truncation::Index>> sub;
  for (auto c = b; c < e; ++c) {
    enumerate_cutsets(t, c, cap, sub);
    std::vector<std::vector<Truncation::Index>> next;
    for (const auto& x : combos)
      for (const auto& y : sub) {
        if (next.size() >= cap) throw std::length_error("cutset enumeration over cap");
        auto z = x;
        z.insert(z.end(), y.begin(), y.end());
        next.push_back(std::move(z));
      }
    combos = std::move(next);
  }
  for (auto& c : combos) out.push_back(std::move(c));
}

// Exhaustive minimum over antichain cutsets. Every enumerated set is re-checked as a cutset.
inline double brute_min_cut(const Truncation& t, const WeightKind& k, std::uint64_t cap = 400000) {
  std::vector<std::vector<Truncation::Index>> all;
  enumerate_cutsets(t, 0, cap, all);
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> mask(t.vertex_count(), 0);
  for (const auto& cs : all) {
    for (auto v : cs) mask[v] = 1;
    if (!blocks_all(t, mask)) throw std::logic_error("enumerated set is not a cutset");
    for (auto v : cs) mask[v] = 0;
    best = std::min(best, direct_capacity(t, cs, k));
  }
  return best;
}

// Every subset of edges, for trees with few edges.
inline double subset_min_cut(const Truncation& t, const WeightKind& k) {
  const std::size_t m = t.vertex_count() - 1;
  if (m > 20) throw std::length_error("too many edges for subset enumeration");
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> mask(t.vertex_count(), 0);
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    std::vector<Truncation::Index> heads;
    for (std::size_t i = 0; i < m; ++i) {
      mask[i + 1] = (s >> i) & 1;
      if (mask[i + 1]) heads.push_back(static_cast<Truncation::Index>(i + 1));
    }
    if (blocks_all(t, mask)) best = std::min(best, direct_capacity(t, heads, k));
  }
  return best;
}

// Random leafless digraph: 1-4 vertices, out-degrees 1-3.
inline DirectedGraph random_digraph(std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> nv(1, 4), deg(1, 3);
  DirectedGraph g;
  g.vertex_count = nv(rng);
  std::uniform_int_distribution<std::uint32_t> head(0, g.vertex_count - 1);
  g.adjacency.resize(g.vertex_count);
  for (auto& out : g.adjacency) {
    const auto d = deg(rng);
    for (std::uint32_t i = 0; i < d; ++i) out.push_back(head(rng));
  }
  g.base = head(rng);
  g.validate();
  return g;
}

inline WeightKind random_kind(std::mt19937& rng) {
  std::uniform_int_distribution<int> fam(0, 2);
  std::uniform_real_distribution<double> u(0, 1);
  switch (fam(rng)) {
    case 0: return WeightKind(WeightFamily::Exponential, 1.0 + 2.5 * u(rng));
    case 1: return WeightKind(WeightFamily::Polynomial, 0.1 + 3.0 * u(rng));
    default: return WeightKind(WeightFamily::Stretched, 0.1 + 1.4 * u(rng));
  }
}

struct OracleCase {
  DirectedGraph graph;
  unsigned depth = 0;
  Truncation tree;
  WeightKind kind;
};

// Number of minimal cutsets in the truncation (what enumerate_cutsets would produce).
inline double cutset_count(const Truncation& t) {
  std::vector<double> c(t.vertex_count(), 1);
  for (auto v = t.vertex_count(); v-- > 0;) {
    auto [b, e] = t.children(static_cast<Truncation::Index>(v));
    if (b == e) continue;
    double prod = 1;
    for (auto x = b; x < e; ++x) prod *= c[x];
    c[v] = prod + (v != 0);
  }
  return c[0];
}

inline constexpr double kOracleEnumerationCap = 200000;

// Random covers truncated at the deepest D <= 5 that keeps at most 200 vertices and at most
// kOracleEnumerationCap minimal cutsets.
inline std::vector<OracleCase> oracle_corpus(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<OracleCase> out;
  while (out.size() < count) {
    auto g = random_digraph(rng);
    for (unsigned d = 5; d >= 1; --d) {
      if (prefix_sums(count_levels(cover_rule(g), d)).back() > 200) continue;
      auto t = expand(cover_rule(g), d);
      if (cutset_count(t) > kOracleEnumerationCap) continue;
      out.push_back(OracleCase{std::move(g), d, std::move(t), random_kind(rng)});
      break;
    }
  }
  return out;
}

}  // namespace treegauge::test
