#include "helpers.hpp"

#include "treegauge/cover_analysis.hpp"
#include "treegauge/exponents.hpp"

#include <doctest.h>

#include <random>

using namespace treegauge;
using namespace treegauge::test;

namespace {

std::vector<std::vector<char>> reachability(const DirectedGraph& g) {
  const auto n = g.vertex_count;
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> stack(g.adjacency[s].begin(), g.adjacency[s].end());
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (r[s][v]) continue;
      r[s][v] = 1;
      for (auto w : g.adjacency[v]) stack.push_back(w);
    }
  }
  return r;
}

DirectedGraph random_graph(std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> nv(1, 8), deg(1, 3);
  DirectedGraph g;
  g.vertex_count = nv(rng);
  std::uniform_int_distribution<std::uint32_t> head(0, g.vertex_count - 1);
  g.adjacency.resize(g.vertex_count);
  for (auto& out : g.adjacency) {
    for (auto d = deg(rng); d > 0; --d) out.push_back(head(rng));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  g.base = head(rng);
  g.validate();
  return g;
}

}  // namespace

TEST_SUITE("cover_analysis") {

TEST_CASE("scc examples") {
  const auto two = scc(graph(2, {{0, 1}, {1}}));
  CHECK(two.component_count == 2);
  CHECK(two.has_internal_branch == std::vector<char>{0, 0});
  CHECK(two.condensation[*two.component[0]] == std::vector<std::uint32_t>{*two.component[1]});

  const auto loops = scc(self_loop_graph(2));
  CHECK(loops.component_count == 1);
  CHECK(loops.has_internal_branch[0]);

  const auto cycle = scc(graph(3, {{1}, {2}, {0}}));
  CHECK(cycle.component_count == 1);
  CHECK(cycle.members[0] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_FALSE(cycle.has_internal_branch[0]);

  const auto tail = scc(graph(3, {{1}, {2}, {2}}));
  CHECK_FALSE(tail.component[0].has_value());
  CHECK_FALSE(tail.component[1].has_value());
  CHECK(tail.component[2].has_value());
}

TEST_CASE("scc agrees with brute-force reachability") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const auto r = reachability(g);
    const auto s = scc(g);
    for (std::uint32_t u = 0; u < g.vertex_count; ++u) {
      CHECK(s.component[u].has_value() == static_cast<bool>(r[u][u]));
      for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
        if (!s.component[u] || !s.component[v]) continue;
        CHECK((*s.component[u] == *s.component[v]) == (r[u][v] && r[v][u]));
      }
    }
    // condensation edges follow reachability and never close a cycle
    for (std::uint32_t a = 0; a < s.component_count; ++a) {
      for (auto b : s.condensation[a]) {
        CHECK(a != b);
        CHECK(r[s.members[a][0]][s.members[b][0]]);
        CHECK_FALSE(r[s.members[b][0]][s.members[a][0]]);
      }
      bool branch = false;
      for (auto v : s.members[a]) {
        std::size_t inside = 0;
        for (auto w : g.adjacency[v]) inside += s.component[w] == a;
        branch = branch || inside >= 2;
      }
      CHECK(static_cast<bool>(s.has_internal_branch[a]) == branch);
    }
  }
}

TEST_CASE("growth classes") {
  CHECK(classify_growth(self_loop_graph(1)).d == 1);
  CHECK_FALSE(classify_growth(self_loop_graph(1)).exponential);
  for (unsigned k = 1; k <= 4; ++k) {
    const auto c = classify_growth(loop_chain_graph(k));
    CHECK_FALSE(c.exponential);
    CHECK(c.d == k);
  }
  CHECK(classify_growth(self_loop_graph(2)).exponential);
  // a non-cycle vertex between two loops is passed through
  CHECK(classify_growth(graph(3, {{0, 1}, {2}, {2}})).d == 2);
  // unreachable branching is ignored
  CHECK(classify_growth(graph(2, {{0}, {1, 1}})).d == 1);
  // two parallel loops after the base: longest chain, not the count
  CHECK(classify_growth(graph(3, {{0, 1, 2}, {1}, {2}})).d == 2);
  // a sink makes the cover finite; validation rejects it before classification
  CHECK_THROWS_AS(graph(2, {{1}, {}}), std::invalid_argument);
}

TEST_CASE("theta checks") {
  const auto one = theta_check(self_loop_graph(1), 1, 100, 10000);
  CHECK(one.lo_ratio >= 0.9);
  CHECK(one.hi_ratio <= 1.2);
  const auto two = theta_check(loop_chain_graph(2), 2, 100, 10000);
  CHECK(two.lo_ratio >= 0.3);
  CHECK(two.hi_ratio <= 0.8);
  const auto wrong = theta_check(loop_chain_graph(2), 1, 100, 10000);
  CHECK(wrong.hi_ratio / wrong.lo_ratio > 50);
  for (unsigned k = 1; k <= 3; ++k) {
    const auto t = theta_check(loop_chain_graph(k), k, 100, 10000);
    CHECK(t.hi_ratio / t.lo_ratio <= 100);
  }
  CHECK_THROWS_AS(theta_check(self_loop_graph(1), 1, 100, 105), std::invalid_argument);
  CHECK_THROWS_AS(theta_check(self_loop_graph(1), 0, 100, 1000), std::invalid_argument);

  const auto j = to_json(classify_growth(loop_chain_graph(2)), two);
  CHECK(j["class"] == "polynomial");
  CHECK(j["d"] == 2);
  CHECK(j["ratios"]["lo"] == two.lo_ratio);
  CHECK(j.contains("d_rule"));
  CHECK(to_json(classify_growth(self_loop_graph(2)))["class"] == "exponential_branching");
}

TEST_CASE("exponential covers grow like exponentials") {
  const auto p = growth_profile(expand(cover_rule(self_loop_graph(2)), 20));
  CHECK(p.points.back().n == 20);
  CHECK(p.points.back().ratio >= 0.85);
}

TEST_CASE("recurrence counts equal expansion") {
  std::mt19937 rng(5);
  std::vector<DirectedGraph> graphs = {self_loop_graph(1), self_loop_graph(2), loop_chain_graph(3),
                                       graph(3, {{1}, {2}, {0, 2}})};
  for (int i = 0; i < 40; ++i) {
    auto g = random_graph(rng);
    if (g.vertex_count <= 4) graphs.push_back(std::move(g));
  }
  for (const auto& g : graphs) {
    const auto rec = cover_level_counts(g, 14);
    const auto counts = count_levels(cover_rule(g), 14);
    CHECK(rec == counts);
    if (counts.back() <= 2000000) CHECK(rec == expand(cover_rule(g), 14).level_counts());
  }
}

}  // TEST_SUITE
