#pragma once

#include "treegauge/constructions.hpp"
#include "treegauge/truncation.hpp"

#include <set>
#include <string>
#include <vector>

namespace treegauge::test {

inline std::vector<BigInt> ints(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline std::set<std::string> label_set(const Truncation& t) {
  std::set<std::string> out;
  for (Truncation::Index v = 0; v < t.vertex_count(); ++v) out.insert(to_string(t.label_of(v)));
  return out;
}

inline bool has(const Truncation& t, const std::string& label) { return t.vertex_of(parse_label(label)).has_value(); }

inline DirectedGraph graph(std::uint32_t n, std::vector<std::vector<std::uint32_t>> adj, std::uint32_t base = 0) {
  DirectedGraph g;
  g.vertex_count = n;
  g.adjacency = std::move(adj);
  g.base = base;
  g.validate();
  return g;
}

}  // namespace treegauge::test
