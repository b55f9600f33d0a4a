#include "treegauge/constructions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace treegauge {

// ---------------------------------------------------------------------------
// StretchFunction

StretchFunction StretchFunction::power_ceil(std::uint32_t p, std::uint32_t q) {
  if (p == 0 || q == 0) throw std::invalid_argument("stretch exponent must be a positive rational");
  const auto g = std::gcd(p, q);
  return StretchFunction(p / g, q / g);
}

StretchFunction StretchFunction::parse(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789./") != std::string::npos)
    throw std::invalid_argument("bad stretch exponent '" + s + "'");
  if (const auto slash = s.find('/'); slash != std::string::npos)
    return power_ceil(static_cast<std::uint32_t>(std::stoul(s.substr(0, slash))),
                      static_cast<std::uint32_t>(std::stoul(s.substr(slash + 1))));
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 6) throw std::invalid_argument("stretch exponent has too many decimals");
    std::uint32_t q = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) q *= 10;
    const std::uint32_t whole = dot ? static_cast<std::uint32_t>(std::stoul(s.substr(0, dot))) : 0;
    const std::uint32_t part = frac.empty() ? 0 : static_cast<std::uint32_t>(std::stoul(frac));
    return power_ceil(whole * q + part, q);
  }
  return power_ceil(static_cast<std::uint32_t>(std::stoul(s)), 1);
}

std::uint64_t StretchFunction::operator()(std::uint64_t x) const {
  if (x == 0) throw std::invalid_argument("stretch function evaluated at 0");
  if (p_ == q_) return x;
  // smallest y with y^q >= x^p
  const BigInt target = boost::multiprecision::pow(BigInt(x), p_);
  auto guess = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(x), exponent())));
  guess = std::max<std::uint64_t>(guess, 1);
  auto fits = [&](std::uint64_t y) { return boost::multiprecision::pow(BigInt(y), q_) >= target; };
  while (guess > 1 && fits(guess - 1)) --guess;
  while (!fits(guess)) ++guess;
  return guess;
}

std::string StretchFunction::to_string() const {
  if (q_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "/" + std::to_string(q_);
}

std::uint64_t stretched_depth(const StretchFunction& f, unsigned level) {
  std::uint64_t d = 0;
  for (unsigned k = 1; k <= level; ++k) d += f(k);
  return d;
}

// ---------------------------------------------------------------------------
// 1-3 tree

bool t13_is_left_half(const T13State& s) { return s.level >= 1 && compare_pow2(s.deficit, s.level - 1) > 0; }

T13State t13_rightmost(unsigned level) { return T13State{level, 1}; }

std::vector<Child> t13_children(const T13State& s) {
  const unsigned n = s.level;
  if (n == 0) return {Child{0, T13State{1, 2}}, Child{1, T13State{1, 1}}};
  // a left-half vertex keeps its rank; a right-half child's deficit is 3d - j
  if (t13_is_left_half(s)) return {Child{0, T13State{n + 1, s.deficit + pow2(n)}}};
  std::vector<Child> out;
  for (unsigned j = 0; j < 3; ++j) out.push_back(Child{static_cast<Digit>(j), T13State{n + 1, 3 * s.deficit - j}});
  return out;
}

// The subtree shape of a right-half vertex depends on its deficit d only through
// t_k = 3^k d - 2^(n+k-1) clamped to [0, 3^k]; a level-(n+k) descendant whose digit string
// has value X (base 3) is in the right half iff X >= t_k. Vertices sharing the first k with
// t_k > 0 and the clamped value there have identical subtrees.
T13State t13_canonical(const T13State& s) {
  const unsigned n = s.level;
  if (n == 0 || s.deficit == 1) return s;
  if (t13_is_left_half(s)) return T13State{n, pow2(n)};
  // t_k > 0 is monotone in k; jump close to the first positive k using logs
  const double est = (n - 1 - std::log2(s.deficit.convert_to<double>())) / std::log2(1.5);
  unsigned k = est > 3 ? static_cast<unsigned>(est) - 2 : 1;
  BigInt p3 = pow3(k);
  while (k > 1 && compare_pow2(p3 * s.deficit, n + k - 1) > 0) p3 /= 3, --k;
  for (;; p3 *= 3, ++k) {
    if (compare_pow2(p3 * s.deficit, n + k - 1) <= 0) continue;
    const BigInt num = pow2(n + k - 1);
    if (p3 * s.deficit - num < p3) return s;
    // smallest deficit with the same saturated profile
    BigInt q = num / p3;
    if (q * p3 != num) q += 1;
    return T13State{n, q + 1};
  }
}

TreeRule t13_rule() {
  TreeRule r;
  r.name = "t13";
  r.alphabet = 3;
  r.root = T13State{};
  r.children = [](const NodeState& s) { return t13_children(std::get<T13State>(s)); };
  r.is_ray = [](const NodeState& s) { return t13_is_left_half(std::get<T13State>(s)); };
  r.canonical = [](const NodeState& s, std::uint64_t) -> NodeState { return t13_canonical(std::get<T13State>(s)); };
  return r;
}

// ---------------------------------------------------------------------------
// Stretched trees

StretchedPosition to_position(const NodeState& s) {
  if (const auto* t = std::get_if<T13State>(&s)) return StretchedPosition{0, *t};
  if (const auto* st = std::get_if<StretchState>(&s)) return StretchedPosition{st->zeros_left, st->target};
  throw std::invalid_argument("not a stretched-tree state: " + describe(s));
}

NodeState to_state(const StretchedPosition& p) {
  if (p.zeros_left == 0) return p.vertex;
  return StretchState{p.zeros_left, p.vertex};
}

std::vector<std::pair<Digit, StretchedPosition>> stretched_children(const StretchFunction& f,
                                                                    const StretchedPosition& p) {
  std::vector<std::pair<Digit, StretchedPosition>> out;
  if (p.zeros_left > 0) {
    out.emplace_back(0, StretchedPosition{p.zeros_left - 1, p.vertex});
    return out;
  }
  const std::uint64_t len = f(p.vertex.level + 1);
  for (auto& c : t13_children(p.vertex))
    out.emplace_back(c.digit, StretchedPosition{len - 1, std::get<T13State>(c.state)});
  return out;
}

bool stretched_is_ray(const StretchedPosition& p) { return t13_is_left_half(p.vertex); }

namespace {

const StretchedPosition kCanonicalRay{0, T13State{1, 2}};

NodeState canonical_stretched(const StretchedPosition& p, std::uint64_t remaining) {
  if (stretched_is_ray(p) || p.zeros_left >= remaining) return to_state(kCanonicalRay);
  return to_state(StretchedPosition{p.zeros_left, t13_canonical(p.vertex)});
}

}  // namespace

TreeRule stretch_rule(const StretchFunction& f) {
  TreeRule r;
  r.name = f.is_identity() ? "t0" : "t0(s=" + f.to_string() + ")";
  r.alphabet = 3;
  r.root = T13State{};
  r.children = [f](const NodeState& s) {
    std::vector<Child> out;
    for (auto& [d, p] : stretched_children(f, to_position(s))) out.push_back(Child{d, to_state(p)});
    return out;
  };
  r.is_ray = [](const NodeState& s) { return stretched_is_ray(to_position(s)); };
  r.canonical = [](const NodeState& s, std::uint64_t remaining) {
    return canonical_stretched(to_position(s), remaining);
  };
  r.provenance["stretch"] = f.to_string();
  return r;
}

// ---------------------------------------------------------------------------
// Shift saturation

std::vector<StretchedPosition> saturation_seeds(const StretchFunction& f, std::uint64_t seed_depth,
                                                std::uint64_t max_zeros) {
  std::vector<StretchedPosition> seeds{StretchedPosition{0, T13State{}}};
  // With a finite zero cap the subtree of (z, rightmost(n)) is only seen max_zeros + 1 levels
  // deep. A level whose lengths f(n-1) .. f(n+max_zeros+1) are all equal repeats the seeds
  // of level n - 1, provided the rightmost vertex there is already full that far down.
  const bool windowed = max_zeros != UINT64_MAX;
  const std::uint64_t reach = windowed ? max_zeros + 1 : 0;
  std::vector<std::uint64_t> len{0};  // len[m] = f(m)
  auto length = [&](std::uint64_t m) {
    while (len.size() <= m) len.push_back(f(len.size()));
    return len[m];
  };
  auto full = [&](unsigned level) {
    BigInt p3 = 1;
    for (std::uint64_t k = 0; k <= reach; ++k, p3 *= 3)
      if (compare_pow2(p3, level + k - 1) > 0) return false;
    return true;
  };
  std::uint64_t depth = 0;  // depth of level n - 1
  bool previous_full = false;
  for (unsigned n = 1;; ++n) {
    const std::uint64_t l = length(n);
    if (depth + 1 > seed_depth) break;
    const bool repeat = windowed && n >= 2 && previous_full && length(n - 1) == length(n + reach);
    previous_full = previous_full || (windowed && full(n));
    if (!repeat) {
      const auto right = t13_rightmost(n);
      // path vertices into level n sit at depths depth+1 .. depth+l
      for (std::uint64_t z = 0; z < l && z <= max_zeros; ++z) {
        if (depth + l - z > seed_depth) continue;
        seeds.push_back(StretchedPosition{z, right});
      }
    }
    depth += l;
  }
  return seeds;
}

std::uint64_t default_seed_depth(const StretchFunction& f, unsigned depth) {
  // Two nonzero digits inside a window of `depth` positions need an edge shorter than the
  // window; the longest such edges end at the last level m with f(m) <= depth.
  std::uint64_t m = depth + 2;
  if (f(m) <= depth) {
    std::uint64_t hi = m;
    while (f(hi) <= depth) hi *= 2;
    while (m + 1 < hi) {
      const auto mid = m + (hi - m) / 2;
      (f(mid) <= depth ? m : hi) = mid;
    }
  }
  if (m > UINT32_MAX - 2) throw std::overflow_error("seed level out of range");
  std::uint64_t total = 0;
  for (std::uint64_t k = 1; k <= m + 1; ++k) total += f(k);
  return total + depth;
}

namespace {

/// Drops members whose labelled subtree is contained in another member's.
std::vector<StretchedPosition> prune_members(std::vector<StretchedPosition> members) {
  for (auto& m : members) m.vertex = t13_canonical(m.vertex);
  const bool any_branching =
      std::any_of(members.begin(), members.end(), [](const StretchedPosition& m) { return !stretched_is_ray(m); });
  if (!any_branching) return {kCanonicalRay};
  std::erase_if(members, [](const StretchedPosition& m) { return stretched_is_ray(m); });
  // same zeros_left and level: the smaller deficit has the larger subtree
  std::sort(members.begin(), members.end(), [](const StretchedPosition& a, const StretchedPosition& b) {
    if (a.zeros_left != b.zeros_left) return a.zeros_left < b.zeros_left;
    if (a.vertex.level != b.vertex.level) return a.vertex.level < b.vertex.level;
    return a.vertex.deficit < b.vertex.deficit;
  });
  members.erase(std::unique(members.begin(), members.end(),
                            [](const StretchedPosition& a, const StretchedPosition& b) {
                              return a.zeros_left == b.zeros_left && a.vertex.level == b.vertex.level;
                            }),
                members.end());
  std::sort(members.begin(), members.end());
  return members;
}

/// Like t13_canonical, but only the branch levels met within `remaining` further edges
/// matter: if none of them leaves the right half, the rightmost vertex is equivalent.
T13State t13_window_canonical(const StretchFunction& f, const StretchedPosition& m, std::uint64_t remaining) {
  const unsigned n = m.vertex.level;
  if (n == 0 || m.zeros_left >= remaining) return m.vertex;
  unsigned branch_levels = 0;  // vertices at levels n .. n+branch_levels-1 choose a digit in the window
  for (std::uint64_t pos = m.zeros_left + 1; pos <= remaining; pos += f(n + branch_levels)) ++branch_levels;
  BigInt p3 = 1;
  for (unsigned k = 0; k < branch_levels; ++k, p3 *= 3)
    if (compare_pow2(p3 * m.vertex.deficit, n + k - 1) > 0) return t13_canonical(m.vertex);
  return t13_rightmost(n);
}

/// Window shape data for a member at `level` whose first branch digit is at relative
/// position 1 of a window of `room` positions.
struct WindowClass {
  unsigned pattern_level = 0;  // lowest level with the same branch spacing in the window
  bool rightmost_full = false; // the rightmost vertex stays in the right half at every branch
  unsigned full_level = 0;     // lowest level with the same spacing whose rightmost is full
  unsigned branch_levels = 0;  // branch digits inside the window
};

class WindowClassifier {
 public:
  explicit WindowClassifier(StretchFunction f) : f_(f) {}

  const WindowClass& classify(unsigned level, std::uint64_t room) {
    const auto key = std::make_pair(level, room);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    WindowClass c;
    const auto pattern = spacing(level, room);
    c.branch_levels = static_cast<unsigned>(pattern.size() + 1);
    c.rightmost_full = full(level, pattern.size() + 1);
    // f is nondecreasing, so the levels below `level` sharing its spacing form an interval
    // ending at `level`, and fullness only improves with the level: both are binary searches
    auto lowest = [&](unsigned lo, auto&& pred) {
      unsigned hi = level;
      while (lo < hi) {
        const unsigned mid = lo + (hi - lo) / 2;
        if (pred(mid)) hi = mid;
        else lo = mid + 1;
      }
      return hi;
    };
    c.pattern_level = lowest(1, [&](unsigned n) { return spacing(n, room) == pattern; });
    c.full_level = c.rightmost_full
                       ? lowest(c.pattern_level, [&](unsigned n) { return full(n, pattern.size() + 1); })
                       : level;
    return cache_.emplace(key, c).first->second;
  }

 private:
  // lengths f(level+1), f(level+2), ... separating consecutive branch digits in the window
  std::vector<std::uint64_t> spacing(unsigned level, std::uint64_t room) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t pos = 1;;) {
      const auto len = f_(level + out.size() + 1);
      if (pos + len > room) break;
      pos += len;
      out.push_back(len);
    }
    return out;
  }
  // deficit 1 at `level`: descendants k levels down are right-half iff 3^k <= 2^(level+k-1)
  static bool full(unsigned level, std::size_t branch_levels) {
    BigInt p3 = 1;
    for (std::size_t k = 0; k < branch_levels; ++k, p3 *= 3)
      if (compare_pow2(p3, level + k - 1) > 0) return false;
    return true;
  }

  StretchFunction f_;
  std::map<std::pair<unsigned, std::uint64_t>, WindowClass> cache_;
};

/// Window canonicalization of a union's members with `remaining` levels left. Members
/// that branch as freely as possible at every branch position of the window are "full";
/// a full member contains every member with the same zero pattern, which are dropped.
std::vector<StretchedPosition> window_members(const StretchFunction& f, WindowClassifier& classifier,
                                              std::vector<StretchedPosition> members, std::uint64_t remaining) {
  struct Tagged {
    StretchedPosition m;
    unsigned pattern_level;
    bool full;
  };
  std::vector<Tagged> tagged;
  std::set<std::pair<std::uint64_t, unsigned>> full_patterns;
  bool any_branching = false;
  for (auto& m : members) {
    if (stretched_is_ray(m) || m.zeros_left >= remaining) continue;
    any_branching = true;
    if (m.vertex.level == 0) {
      tagged.push_back({m, 0, false});
      continue;
    }
    m.vertex = t13_window_canonical(f, m, remaining);
    if (stretched_is_ray(m)) continue;
    const auto& c = classifier.classify(m.vertex.level, remaining - m.zeros_left);
    const bool full = c.rightmost_full && m.vertex == t13_rightmost(m.vertex.level);
    if (full) {
      full_patterns.emplace(m.zeros_left, c.pattern_level);
      m.vertex = t13_rightmost(c.full_level);
    }
    tagged.push_back({m, c.pattern_level, full});
  }
  if (!any_branching) return {kCanonicalRay};
  std::erase_if(tagged, [&](const Tagged& t) {
    return !t.full && full_patterns.contains({t.m.zeros_left, t.pattern_level});
  });

  // Among members sharing zeros and spacing, A's window lies inside B's when B's right-half
  // thresholds are pointwise no larger.
  std::vector<std::vector<BigInt>> profile(tagged.size());
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    const auto& m = tagged[i].m;
    if (tagged[i].full || m.vertex.level == 0) continue;
    const unsigned n = m.vertex.level;
    const auto& c = classifier.classify(n, remaining - m.zeros_left);
    BigInt p3 = 1;
    for (unsigned k = 0; k < c.branch_levels; ++k, p3 *= 3) {
      const BigInt scaled = p3 * m.vertex.deficit;
      if (compare_pow2(scaled, n + k - 1) <= 0) {
        profile[i].push_back(0);
        continue;
      }
      const BigInt t = scaled - pow2(n + k - 1);
      profile[i].push_back(t > p3 ? p3 : t);
    }
  }
  auto covers = [&](std::size_t b, std::size_t a) {
    for (std::size_t k = 0; k < profile[a].size(); ++k)
      if (profile[b][k] > profile[a][k]) return false;
    return true;
  };
  std::vector<StretchedPosition> out;
  for (std::size_t a = 0; a < tagged.size(); ++a) {
    bool dominated = false;
    if (!profile[a].empty()) {
      for (std::size_t b = 0; b < tagged.size() && !dominated; ++b) {
        if (b == a || profile[b].empty() || tagged[b].m.zeros_left != tagged[a].m.zeros_left ||
            tagged[b].pattern_level != tagged[a].pattern_level)
          continue;
        // equal profiles: keep the smaller position
        dominated = covers(b, a) && (!covers(a, b) || tagged[b].m < tagged[a].m);
      }
    }
    if (!dominated) out.push_back(tagged[a].m);
  }
  if (out.empty()) return {kCanonicalRay};
  return out;
}

}  // namespace

TreeRule union_rule(const StretchFunction& f, std::vector<StretchedPosition> seeds, std::string name) {
  TreeRule r;
  r.name = std::move(name);
  r.alphabet = 3;
  r.root = UnionState{prune_members(std::move(seeds))};
  r.children = [f](const NodeState& s) {
    const auto& u = std::get<UnionState>(s);
    std::vector<StretchedPosition> by_digit[3];
    for (const auto& m : u.members)
      for (auto& [d, p] : stretched_children(f, m)) by_digit[d].push_back(std::move(p));
    std::vector<Child> out;
    for (unsigned d = 0; d < 3; ++d)
      if (!by_digit[d].empty()) out.push_back(Child{static_cast<Digit>(d), UnionState{prune_members(std::move(by_digit[d]))}});
    return out;
  };
  r.is_ray = [](const NodeState& s) {
    const auto& u = std::get<UnionState>(s);
    return u.members.size() == 1 && stretched_is_ray(u.members.front());
  };
  auto classifier = std::make_shared<WindowClassifier>(f);
  r.canonical = [f, classifier](const NodeState& s, std::uint64_t remaining) -> NodeState {
    return UnionState{prune_members(window_members(f, *classifier, std::get<UnionState>(s).members, remaining))};
  };
  r.provenance["stretch"] = f.to_string();
  return r;
}

SaturationResult saturate(const StretchFunction& f, const SaturationParams& p) {
  const unsigned D = p.depth;
  const std::uint64_t sweep = p.sweep.value_or(std::max(1u, D));
  if (sweep == 0) throw std::invalid_argument("saturation sweep must be >= 1");
  std::uint64_t M = p.seed_depth.value_or(default_seed_depth(f, D));
  if (M < D) throw std::invalid_argument("seed depth must be >= D");
  const std::string name = f.is_identity() ? "t-tilde" : "t-tilde(s=" + f.to_string() + ")";

  auto counts_at = [&](std::uint64_t m) {
    return count_levels(union_rule(f, saturation_seeds(f, m, D + 1), name), D, p.max_vertices);
  };
  auto total = [](const std::vector<BigInt>& c) { return std::accumulate(c.begin(), c.end(), BigInt(0)); };

  auto current = counts_at(M);
  BigInt previous_total = total(current);
  for (unsigned sweeps = 1; sweeps <= p.max_sweeps; ++sweeps) {
    auto next = counts_at(M + sweep);
    // the label sets are nested, so equal totals mean equal sets
    if (total(next) == total(current)) {
      SaturationResult res{union_rule(f, saturation_seeds(f, M, D + 1), name), M, sweeps, std::move(current)};
      res.rule.provenance["seed_depth_certified"] = std::to_string(M);
      res.rule.provenance["seed_depth_checked"] = std::to_string(M + sweep);
      res.rule.provenance["sweeps"] = std::to_string(sweeps);
      res.rule.provenance["valid_depth"] = std::to_string(D);
      return res;
    }
    M += sweep;
    previous_total = total(current);
    current = std::move(next);
  }
  throw std::runtime_error("saturation did not stabilize within " + std::to_string(p.max_sweeps) +
                           " sweeps; last label counts " + to_string(previous_total) + " and " +
                           to_string(total(current)));
}

Truncation t_tilde_truncation(const StretchFunction& f, const SaturationParams& p) {
  auto sat = saturate(f, p);
  return expand(sat.rule, p.depth, p.max_vertices);
}

// ---------------------------------------------------------------------------
// Comb

TreeRule comb_rule() {
  TreeRule r;
  r.name = "comb";
  r.alphabet = 4;
  r.root = CombState{CombKind::SpineOrigin};
  r.children = [](const NodeState& s) -> std::vector<Child> {
    const auto arm = CombState{CombKind::SpineArm};
    const auto tooth = CombState{CombKind::Tooth};
    switch (std::get<CombState>(s).kind) {
      case CombKind::SpineOrigin: return {{0, arm}, {1, arm}, {2, tooth}, {3, tooth}};
      case CombKind::SpineArm: return {{0, arm}, {1, tooth}, {2, tooth}};
      case CombKind::Tooth: return {{0, tooth}};
    }
    throw std::logic_error("bad comb state");
  };
  r.is_ray = [](const NodeState& s) { return std::get<CombState>(s).kind == CombKind::Tooth; };
  return r;
}

// ---------------------------------------------------------------------------
// Directed covers

void DirectedGraph::validate() const {
  if (vertex_count == 0) throw std::invalid_argument("digraph has no vertices");
  if (adjacency.size() != vertex_count) throw std::invalid_argument("adjacency size differs from vertex count");
  if (base >= vertex_count) throw std::invalid_argument("base vertex out of range");
  for (std::uint32_t v = 0; v < vertex_count; ++v) {
    if (adjacency[v].empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " has out-degree 0");
    if (adjacency[v].size() > 255) throw std::invalid_argument("out-degree above 255");
    for (auto w : adjacency[v])
      if (w >= vertex_count) throw std::invalid_argument("edge target out of range");
  }
}

DirectedGraph parse_digraph_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DirectedGraph g;
  g.vertex_count = j.at("n").get<std::uint32_t>();
  g.base = j.value("base", 0u);
  g.adjacency = j.at("adj").get<std::vector<std::vector<std::uint32_t>>>();
  g.validate();
  return g;
}

DirectedGraph read_digraph_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open digraph file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_digraph_json(ss.str());
}

TreeRule cover_rule(const DirectedGraph& g) {
  g.validate();
  // ray vertices: every vertex reachable from them has out-degree 1
  std::vector<char> ray(g.vertex_count, 0);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    std::vector<char> seen(g.vertex_count, 0);
    std::vector<std::uint32_t> stack{v};
    seen[v] = 1;
    bool ok = true;
    while (!stack.empty() && ok) {
      auto u = stack.back();
      stack.pop_back();
      if (g.adjacency[u].size() != 1) ok = false;
      for (auto w : g.adjacency[u])
        if (!seen[w]) seen[w] = 1, stack.push_back(w);
    }
    ray[v] = ok;
  }
  unsigned alphabet = 1;
  for (const auto& a : g.adjacency) alphabet = std::max<unsigned>(alphabet, static_cast<unsigned>(a.size()));

  TreeRule r;
  r.name = "cover";
  r.alphabet = alphabet;
  r.root = CoverState{g.base};
  r.children = [adj = g.adjacency](const NodeState& s) {
    const auto& out = adj[std::get<CoverState>(s).vertex];
    std::vector<Child> kids;
    for (std::size_t i = 0; i < out.size(); ++i) kids.push_back(Child{static_cast<Digit>(i), CoverState{out[i]}});
    return kids;
  };
  r.is_ray = [ray](const NodeState& s) { return ray[std::get<CoverState>(s).vertex] != 0; };
  return r;
}

DirectedGraph self_loop_graph(unsigned loops) {
  DirectedGraph g;
  g.vertex_count = 1;
  g.adjacency = {std::vector<std::uint32_t>(loops, 0)};
  g.validate();
  return g;
}

DirectedGraph loop_chain_graph(unsigned k) {
  DirectedGraph g;
  g.vertex_count = k;
  g.adjacency.resize(k);
  for (unsigned i = 0; i < k; ++i) {
    g.adjacency[i].push_back(i);
    if (i + 1 < k) g.adjacency[i].push_back(i + 1);
  }
  g.validate();
  return g;
}

}  // namespace treegauge
