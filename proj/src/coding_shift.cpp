#include "treegauge/coding_shift.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

namespace treegauge {

namespace {

std::optional<Truncation::Index> child_with_digit(const Truncation& t, Truncation::Index v, Digit d) {
  auto [b, e] = t.children(v);
  Truncation::Index lo = b, hi = e;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (t.digit(mid) < d)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < e && t.digit(lo) == d) return lo;
  return std::nullopt;
}

// Kuhn's augmenting-path matching on a small bipartite graph.
bool perfect_left_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_size) {
  std::vector<std::size_t> match(right_size, SIZE_MAX);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t u, std::vector<char>& seen) {
    for (auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match[v] == SIZE_MAX || augment(match[v], seen)) {
        match[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(right_size, 0);
    if (!augment(u, seen)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::optional<Truncation::Index>> shift_map(const Truncation& t) {
  std::vector<std::optional<Truncation::Index>> image(t.vertex_count());
  if (t.depth() == 0) return image;
  auto [b1, e1] = t.level_range(1);
  for (auto v = b1; v < e1; ++v) image[v] = 0;
  for (unsigned n = 2; n <= t.depth(); ++n) {
    auto [b, e] = t.level_range(n);
    for (auto v = b; v < e; ++v)
      if (auto p = image[t.parent(v)]) image[v] = child_with_digit(t, *p, t.digit(v));
  }
  return image;
}

ClosureReport check_shift_closure(const Truncation& t) {
  ClosureReport r;
  const auto image = shift_map(t);
  for (Truncation::Index v = 1; v < t.vertex_count(); ++v) {
    if (image[v]) continue;
    ++r.violation_count;
    if (r.violations.size() < kMaxReportedViolations) r.violations.push_back(t.label_of(v));
  }
  r.closed = r.violation_count == 0;
  return r;
}

bool injection_witness(const Truncation& t, const Label& x, const Label& y, unsigned d) {
  if (d + std::max(x.depth(), y.depth()) > t.depth())
    throw std::out_of_range("embedding depth exceeds truncation depth");
  auto vx = t.vertex_of(x), vy = t.vertex_of(y);
  if (!vx || !vy) throw std::invalid_argument("label not in truncation");

  std::map<std::tuple<Truncation::Index, Truncation::Index, unsigned>, bool> memo;
  std::function<bool(Truncation::Index, Truncation::Index, unsigned)> embeds =
      [&](Truncation::Index u, Truncation::Index v, unsigned k) -> bool {
    if (k == 0 || u == v) return true;
    auto key = std::make_tuple(u, v, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto [ub, ue] = t.children(u);
    auto [vb, ve] = t.children(v);
    bool ok = ue - ub <= ve - vb;
    if (ok) {
      std::vector<std::vector<std::size_t>> adj(ue - ub);
      for (auto a = ub; a < ue && ok; ++a) {
        for (auto c = vb; c < ve; ++c)
          if (embeds(a, c, k - 1)) adj[a - ub].push_back(c - vb);
        ok = !adj[a - ub].empty();
      }
      ok = ok && perfect_left_matching(adj, ve - vb);
    }
    memo.emplace(key, ok);
    return ok;
  };
  return embeds(*vx, *vy, d);
}

nlohmann::ordered_json to_json(const ClosureReport& r) {
  nlohmann::ordered_json j;
  j["closed"] = r.closed;
  j["violation_count"] = r.violation_count;
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& l : r.violations) v.push_back(to_string(l));
  return j;
}

}  // namespace treegauge
