#include "treegauge/cover_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treegauge {

SCCDecomposition scc(const DirectedGraph& g) {
  g.validate();
  const std::uint32_t n = g.vertex_count;
  constexpr std::uint32_t kUnset = UINT32_MAX;

  // iterative Tarjan
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), raw(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t next_index = 0, raw_count = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    if (index[s] != kUnset) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = next_index++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& f = call.back();
      const auto v = f.v;
      if (f.edge < g.adjacency[v].size()) {
        const auto w = g.adjacency[v][f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }

  // keep only classes that carry a cycle; number them by smallest member
  std::vector<std::uint32_t> raw_size(raw_count, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++raw_size[raw[v]];
  auto cyclic = [&](std::uint32_t v) {
    return raw_size[raw[v]] > 1 || std::count(g.adjacency[v].begin(), g.adjacency[v].end(), v) > 0;
  };
  SCCDecomposition out;
  out.component.assign(n, std::nullopt);
  std::vector<std::uint32_t> renumber(raw_count, kUnset);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!cyclic(v)) continue;
    if (renumber[raw[v]] == kUnset) {
      renumber[raw[v]] = out.component_count++;
      out.members.emplace_back();
    }
    out.component[v] = renumber[raw[v]];
    out.members[renumber[raw[v]]].push_back(v);
  }
  out.condensation.resize(out.component_count);
  out.has_internal_branch.assign(out.component_count, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto cv = out.component[v];
    if (!cv) continue;
    unsigned inside = 0;
    for (auto w : g.adjacency[v]) {
      const auto cw = out.component[w];
      if (cw == cv)
        ++inside;
      else if (cw)
        out.condensation[*cv].push_back(*cw);
    }
    if (inside >= 2) out.has_internal_branch[*cv] = 1;
  }
  // edges through component-less vertices still connect components
  for (std::uint32_t c = 0; c < out.component_count; ++c) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> todo;
    for (auto v : out.members[c])
      for (auto w : g.adjacency[v])
        if (!out.component[w] && !seen[w]) seen[w] = 1, todo.push_back(w);
    while (!todo.empty()) {
      auto u = todo.back();
      todo.pop_back();
      for (auto w : g.adjacency[u]) {
        if (out.component[w])
          out.condensation[c].push_back(*out.component[w]);
        else if (!seen[w])
          seen[w] = 1, todo.push_back(w);
      }
    }
  }
  for (auto& adj : out.condensation) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return out;
}

GrowthClass classify_growth(const DirectedGraph& g) {
  const auto dec = scc(g);
  const std::uint32_t n = g.vertex_count;

  // vertices reachable from the base
  std::vector<char> reach(n, 0);
  std::vector<std::uint32_t> todo{g.base};
  reach[g.base] = 1;
  while (!todo.empty()) {
    auto u = todo.back();
    todo.pop_back();
    for (auto w : g.adjacency[u])
      if (!reach[w]) reach[w] = 1, todo.push_back(w);
  }
  std::vector<char> comp_reach(dec.component_count, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    if (reach[v] && dec.component[v]) comp_reach[*dec.component[v]] = 1;
  if (std::find(comp_reach.begin(), comp_reach.end(), 1) == comp_reach.end())
    throw std::invalid_argument("no cycle reachable from the base vertex: the cover is finite");
  for (std::uint32_t c = 0; c < dec.component_count; ++c)
    if (comp_reach[c] && dec.has_internal_branch[c]) return GrowthClass{true, 0};

  // longest component chain; the condensation is acyclic so memoized DFS terminates
  std::vector<int> best(dec.component_count, -1);
  auto chain = [&](auto&& self, std::uint32_t c) -> unsigned {
    if (best[c] >= 0) return static_cast<unsigned>(best[c]);
    unsigned m = 0;
    for (auto w : dec.condensation[c]) m = std::max(m, self(self, w));
    best[c] = static_cast<int>(m + 1);
    return m + 1;
  };
  unsigned d = 0;
  if (dec.component[g.base]) {
    d = chain(chain, *dec.component[g.base]);
  } else {
    // the base lies on no cycle: start from every component its cycle-free walks enter first
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack{g.base};
    seen[g.base] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : g.adjacency[u]) {
        if (dec.component[w])
          d = std::max(d, chain(chain, *dec.component[w]));
        else if (!seen[w])
          seen[w] = 1, stack.push_back(w);
      }
    }
  }
  return GrowthClass{false, d};
}

std::vector<BigInt> cover_level_counts(const DirectedGraph& g, std::uint64_t depth) {
  g.validate();
  std::vector<BigInt> cur(g.vertex_count, 0), next(g.vertex_count);
  cur[g.base] = 1;
  std::vector<BigInt> out{1};
  out.reserve(depth + 1);
  for (std::uint64_t k = 0; k < depth; ++k) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::uint32_t v = 0; v < g.vertex_count; ++v)
      if (cur[v] != 0)
        for (auto w : g.adjacency[v]) next[w] += cur[v];
    cur.swap(next);
    BigInt total = 0;
    for (const auto& c : cur) total += c;
    out.push_back(std::move(total));
  }
  return out;
}

ThetaReport theta_check(const DirectedGraph& g, unsigned d, std::uint64_t n_lo, std::uint64_t n_hi) {
  if (d == 0) throw std::invalid_argument("degree must be positive");
  if (n_lo == 0 || n_hi < n_lo || n_hi - n_lo + 1 < 10) throw std::invalid_argument("theta range needs >= 10 points");
  const auto balls = prefix_sums(cover_level_counts(g, n_hi));
  ThetaReport r{std::numeric_limits<double>::infinity(), 0};
  for (auto n = n_lo; n <= n_hi; ++n) {
    const double ratio = std::exp(ln_big(balls[n]) - d * std::log(static_cast<double>(n)));
    r.lo_ratio = std::min(r.lo_ratio, ratio);
    r.hi_ratio = std::max(r.hi_ratio, ratio);
  }
  return r;
}

nlohmann::ordered_json to_json(const GrowthClass& c, const std::optional<ThetaReport>& theta) {
  nlohmann::ordered_json j;
  j["class"] = c.exponential ? "exponential_branching" : "polynomial";
  if (!c.exponential) j["d"] = c.d;
  if (theta) j["ratios"] = {{"lo", theta->lo_ratio}, {"hi", theta->hi_ratio}};
  j["d_rule"] = "longest chain of cycle components; acyclic vertices pass through uncounted";
  return j;
}

}  // namespace treegauge
