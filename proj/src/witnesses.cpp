#include "treegauge/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace treegauge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double ln_capacity_of(const std::vector<Label>& edges, const WeightKind& kind) {
  LogSum s;
  for (const auto& e : edges) s.add(kind.ln_weight(e.depth()));
  return s.value();
}

Label zero_extend(Label l, std::uint64_t depth) {
  l.digits.resize(std::max<std::uint64_t>(depth, l.depth()), 0);
  return l;
}

}  // namespace

std::uint64_t default_block_depth(double lambda, double epsilon) {
  if (!(lambda > 0) || !(epsilon > 0)) throw std::invalid_argument("lambda and epsilon must be positive");
  const double target = std::log(epsilon) - std::log(9.0);
  constexpr std::uint64_t kLimit = 100'000'000;
  for (std::uint64_t n = 1; n <= kLimit; ++n)
    if (std::log(static_cast<double>(n)) - std::pow(static_cast<double>(n), lambda) <= target) return n;
  throw std::invalid_argument("block depth N exceeds 1e8 for this lambda and epsilon");
}

WitnessParams WitnessParams::resolved() const {
  WitnessParams p = *this;
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(share_ratio > 0 && share_ratio < 1)) throw std::invalid_argument("share ratio must lie in (0,1)");
  if (p.N == 0) p.N = default_block_depth(lambda, epsilon);
  if (std::log(9.0 * p.N) - std::pow(static_cast<double>(p.N), lambda) > std::log(epsilon))
    throw std::invalid_argument("N violates 9N exp(-N^lambda) <= epsilon");
  return p;
}

bool is_ray_state(const NodeState& s) {
  if (auto t = std::get_if<T13State>(&s)) return t13_is_left_half(*t);
  if (auto st = std::get_if<StretchState>(&s)) return t13_is_left_half(st->target);
  throw std::invalid_argument("is_ray_state: not a 1-3 tree or stretched state");
}

namespace {

template <class Pos, class Kids, class IsRay>
std::vector<Label> collect_rays(const Pos& start, Kids kids, IsRay is_ray, unsigned level_of_start,
                                std::uint64_t max_rays) {
  std::vector<Label> out;
  std::vector<std::pair<Label, Pos>> stack{{Label{}, start}};
  while (!stack.empty()) {
    auto [label, pos] = std::move(stack.back());
    stack.pop_back();
    if (is_ray(pos)) {
      if (out.size() == max_rays)
        throw ResourceCapError("mortal_rays: more than " + std::to_string(max_rays) + " rays below level " +
                                   std::to_string(level_of_start),
                               level_of_start, max_rays);
      out.push_back(std::move(label));
      continue;
    }
    auto children = kids(pos);
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.emplace_back(label.child(it->first), it->second);
  }
  return out;
}

void require_mortal(const T13State& v) {
  if (v.level == 0 || v.deficit <= 1)
    throw std::invalid_argument("mortal_rays: subtree at level " + std::to_string(v.level) + " is immortal");
}

}  // namespace

std::vector<Label> mortal_rays(const T13State& s, std::uint64_t max_rays) {
  if (t13_is_left_half(s)) return {Label{}};
  require_mortal(s);
  auto kids = [](const T13State& v) {
    std::vector<std::pair<Digit, T13State>> out;
    for (auto& c : t13_children(v)) out.emplace_back(c.digit, std::get<T13State>(c.state));
    return out;
  };
  return collect_rays(s, kids, t13_is_left_half, s.level, max_rays);
}

std::vector<Label> mortal_rays(const StretchFunction& f, const StretchedPosition& p, std::uint64_t max_rays) {
  if (stretched_is_ray(p)) return {Label{}};
  require_mortal(p.vertex);
  auto kids = [&f](const StretchedPosition& q) { return stretched_children(f, q); };
  return collect_rays(p, kids, stretched_is_ray, p.vertex.level, max_rays);
}

std::uint64_t least_depth_within(const WeightKind& kind, double ln_budget, std::uint64_t min_depth) {
  std::uint64_t lo = std::max<std::uint64_t>(min_depth, 1), hi = lo;
  while (kind.ln_weight(hi) > ln_budget) {
    lo = hi + 1;
    if (hi > (std::uint64_t{1} << 62)) throw std::overflow_error("cut depth overflow");
    hi *= 2;
  }
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (kind.ln_weight(mid) <= ln_budget)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

Cutset t0_cutset(const StretchFunction& f, const WitnessParams& params) {
  const auto p = params.resolved();
  const WeightKind kind(WeightFamily::Stretched, p.lambda);
  const double ln_half = std::log(p.epsilon / 2);
  const std::uint64_t d0 = least_depth_within(kind, ln_half, 1);

  Cutset cs;
  cs.kind = kind;
  // walk the rightmost spine; every other child above the cut hangs off it
  StretchedPosition pos{0, T13State{}};
  Label spine;
  std::vector<std::pair<Label, StretchedPosition>> hanging;
  while (spine.depth() < d0) {
    auto kids = stretched_children(f, pos);
    for (std::size_t i = 0; i + 1 < kids.size(); ++i) hanging.emplace_back(spine.child(kids[i].first), kids[i].second);
    spine = spine.child(kids.back().first);
    pos = kids.back().second;
  }
  cs.edges.push_back(spine);

  double ln_share = ln_half + std::log1p(-p.share_ratio);
  for (const auto& [root, q] : hanging) {
    const auto rays = mortal_rays(f, q, p.max_rays);
    const double ln_each = ln_share - std::log(static_cast<double>(rays.size()));
    for (const auto& rel : rays) {
      Label start = root;
      start.digits.insert(start.digits.end(), rel.digits.begin(), rel.digits.end());
      const auto d = least_depth_within(kind, ln_each, start.depth());
      if (d > p.max_ray_depth)
        throw ResourceCapError("t0_cutset: ray cut depth " + std::to_string(d) + " exceeds the depth cap",
                               q.vertex.level, p.max_ray_depth);
      cs.edges.push_back(zero_extend(std::move(start), d));
    }
    ln_share += std::log(p.share_ratio);
  }
  std::sort(cs.edges.begin(), cs.edges.end());
  cs.recompute_capacity();
  if (cs.ln_capacity > std::log(p.epsilon)) throw InvariantViolation("t0_cutset capacity exceeds epsilon");
  return cs;
}

std::vector<Label> beta_edges(std::uint64_t N, const Truncation& t) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (t.depth() < N + 1) throw std::out_of_range("truncation shallower than N+1");
  std::vector<std::uint32_t> nonzero(t.vertex_count(), 0);
  for (Truncation::Index v = 1; v < t.vertex_count(); ++v) nonzero[v] = nonzero[t.parent(v)] + (t.digit(v) != 0);
  std::vector<Label> out;
  auto [b, e] = t.level_range(static_cast<unsigned>(N));
  for (auto v = b; v < e; ++v) {
    if (nonzero[v] > 1) continue;
    const Label parent = t.label_of(v);
    auto [cb, ce] = t.children(v);
    for (auto c = cb; c < ce; ++c) out.push_back(parent.child(t.digit(c)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cut of the saturated tree away from the beta edges

namespace {

constexpr int kFree = -2;  // blocked by beta further down
constexpr int kRay = -1;   // single ray: cut at the final depth

struct CutNode {
  std::vector<std::pair<Digit, int>> kids;
  bool cut = false;
};

struct RelativeCut {
  std::uint64_t depth = 0;
  std::vector<std::vector<CutNode>> levels;  // levels[d] = nodes at depth d
  double ln_value = kNegInf;
  double edge_count = 0;
};

/// Optimal cut, within depth D, of the rule's paths whose first N digits hold two nonzero
/// entries. Paths reaching depth N+1 with fewer pass through beta and cost nothing.
RelativeCut relative_cut(const TreeRule& rule, const WeightKind& kind, std::uint64_t N, std::uint64_t D,
                         std::uint64_t max_states) {
  using Key = std::pair<int, NodeState>;  // (nonzero digits so far, capped at 2; state)
  RelativeCut rc;
  rc.depth = D;
  std::vector<Key> frontier{{0, rule.canonicalize(rule.root, D)}};
  for (std::uint64_t d = 0; d < D && !frontier.empty(); ++d) {
    std::map<Key, int> index;
    std::vector<Key> next;
    std::vector<CutNode> nodes(frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const auto& [nz, state] = frontier[i];
      for (auto& c : rule.checked_children(state)) {
        if (d == N && nz < 2) {
          nodes[i].kids.emplace_back(c.digit, kFree);
          continue;
        }
        const int cnz = d + 1 > N ? 2 : std::min(2, nz + (c.digit != 0));
        NodeState s = rule.canonicalize(c.state, D - d - 1);
        if (d + 1 == D || rule.ray(s)) {
          nodes[i].kids.emplace_back(c.digit, cnz == 2 ? kRay : kFree);
          continue;
        }
        auto [it, inserted] = index.emplace(Key{cnz, s}, static_cast<int>(next.size()));
        if (inserted) next.emplace_back(cnz, std::move(s));
        nodes[i].kids.emplace_back(c.digit, it->second);
      }
    }
    if (next.size() > max_states)
      throw ResourceCapError("t_tilde_cutset: state cap exceeded at depth " + std::to_string(d + 1),
                             static_cast<unsigned>(d + 1), max_states);
    rc.levels.push_back(std::move(nodes));
    frontier = std::move(next);
  }
  const double deepest = kind.ln_weight(D);
  std::vector<double> cost_below, count_below;
  for (std::size_t d = rc.levels.size(); d-- > 0;) {
    auto& nodes = rc.levels[d];
    std::vector<double> cost(nodes.size()), count(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      LogSum s;
      double c = 0;
      for (auto [digit, k] : nodes[i].kids) {
        if (k == kFree) continue;
        if (k == kRay) {
          s.add(deepest);
          c += 1;
        } else {
          s.add(cost_below[k]);
          c += count_below[k];
        }
      }
      const double here = d == 0 ? std::numeric_limits<double>::infinity() : kind.ln_weight(d);
      nodes[i].cut = here <= s.value();
      cost[i] = nodes[i].cut ? here : s.value();
      count[i] = nodes[i].cut ? 1 : c;
    }
    cost_below = std::move(cost);
    count_below = std::move(count);
  }
  rc.ln_value = cost_below.at(0);
  rc.edge_count = count_below.at(0);
  return rc;
}

std::vector<Label> relative_cut_edges(const RelativeCut& rc) {
  std::vector<Label> out;
  struct Item {
    std::size_t depth;
    int node;
    Label label;
  };
  std::vector<Item> stack{{0, 0, Label{}}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    const auto& node = rc.levels[it.depth][it.node];
    if (node.cut) {
      out.push_back(std::move(it.label));
      continue;
    }
    for (auto k = node.kids.rbegin(); k != node.kids.rend(); ++k) {
      if (k->second == kFree) continue;
      Label child = it.label.child(k->first);
      if (k->second == kRay)
        out.push_back(zero_extend(std::move(child), rc.depth));
      else
        stack.push_back({it.depth + 1, k->second, std::move(child)});
    }
  }
  return out;
}

}  // namespace

TTildeCutset t_tilde_cutset(const StretchFunction& f, const WitnessParams& params, const Truncation& t_tilde) {
  const auto p = params.resolved();
  const WeightKind kind(WeightFamily::Stretched, p.lambda);
  TTildeCutset out;
  out.N = p.N;
  out.beta = beta_edges(p.N, t_tilde);
  out.ln_beta_capacity = ln_capacity_of(out.beta, kind);

  // positions whose first two branch digits both fall within the first N digits, plus the root
  std::vector<StretchedPosition> seeds{StretchedPosition{0, T13State{}}};
  for (unsigned n = 1; 1 + f(n + 1) <= p.N; ++n)
    for (std::uint64_t z = 0; z < f(n) && z + 1 + f(n + 1) <= p.N; ++z) seeds.push_back({z, t13_rightmost(n)});
  const TreeRule rule = union_rule(f, seeds, "t-tilde-restricted");

  const double ln_eps = std::log(p.epsilon);
  std::optional<RelativeCut> found;
  std::string best = "none";
  for (std::uint64_t D = std::min<std::uint64_t>(2 * (p.N + 1), p.max_depth);; D = std::min(2 * D, p.max_depth)) {
    auto rc = relative_cut(rule, kind, p.N, D, p.max_states);
    char buf[96];
    std::snprintf(buf, sizeof buf, ": capacity %.4g with %.4g edges", std::exp(rc.ln_value), rc.edge_count);
    best = "depth " + std::to_string(D) + buf;
    if (rc.edge_count > static_cast<double>(p.max_edges)) break;
    if (rc.ln_value <= ln_eps) {
      found = std::move(rc);
      break;
    }
    if (D == p.max_depth) break;
  }
  if (!found)
    throw ResourceCapError("t_tilde_cutset: no cut within the caps meets epsilon (last " + best + ")",
                           static_cast<unsigned>(std::min<std::uint64_t>(p.max_depth, UINT32_MAX)), p.max_edges);

  out.depth = found->depth;
  auto pi = relative_cut_edges(*found);
  out.ln_pi_capacity = ln_capacity_of(pi, kind);
  out.cutset.kind = kind;
  out.cutset.edges = std::move(pi);
  out.cutset.edges.insert(out.cutset.edges.end(), out.beta.begin(), out.beta.end());
  std::sort(out.cutset.edges.begin(), out.cutset.edges.end());
  out.cutset.edges.erase(std::unique(out.cutset.edges.begin(), out.cutset.edges.end()), out.cutset.edges.end());
  out.cutset.recompute_capacity();
  if (out.cutset.ln_capacity > std::log(2 * p.epsilon))
    throw InvariantViolation("t_tilde_cutset capacity exceeds 2 epsilon");

  const auto dmax = out.cutset.max_depth();
  VerifyReport v;
  if (dmax <= t_tilde.depth()) {
    v = verify_cutset(t_tilde, out.cutset);
  } else {
    SaturationParams sp;
    sp.depth = static_cast<unsigned>(dmax);
    const auto full = saturation_seeds(f, default_seed_depth(f, sp.depth), sp.depth + 1);
    v = verify_cutset(union_rule(f, full, "t-tilde"), out.cutset);
  }
  if (!v.ok)
    throw InvariantViolation("t_tilde_cutset failed verification; unblocked path " +
                             to_string(v.counterexample.value_or(Label{})));
  return out;
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_cutset(const Truncation& t, const Cutset& cs) {
  const auto dmax = cs.max_depth();
  if (dmax > t.depth()) throw std::out_of_range("truncation shallower than the cutset");
  std::vector<char> cut(t.vertex_count(), 0);
  for (const auto& e : cs.edges) {
    auto v = t.vertex_of(e);
    if (!v) throw std::invalid_argument("cutset edge " + to_string(e) + " is not in the tree");
    cut[*v] = 1;
  }
  VerifyReport r;
  r.ln_capacity = ln_capacity_of(cs.edges, cs.kind);
  // open[v]: the root path to v avoids the cutset
  std::vector<char> open(t.vertex_count(), 0);
  open[0] = 1;
  for (unsigned n = 1; n <= dmax; ++n) {
    auto [b, e] = t.level_range(n);
    for (auto v = b; v < e; ++v) open[v] = open[t.parent(v)] && !cut[v];
  }
  auto [b, e] = t.level_range(static_cast<unsigned>(dmax));
  for (auto v = b; v < e; ++v)
    if (open[v]) {
      r.counterexample = t.label_of(v);
      break;
    }
  r.ok = !r.counterexample;
  return r;
}

VerifyReport verify_cutset(const TreeRule& rule, const Cutset& cs) {
  std::vector<Label> labels = cs.edges;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const auto dmax = cs.max_depth();
  VerifyReport r;
  r.ln_capacity = ln_capacity_of(cs.edges, cs.kind);
  std::vector<char> reached(labels.size(), 0);

  if (labels.empty()) {
    r.counterexample = Label{};
    r.ok = false;
    return r;
  }
  struct Frame {
    Label label;
    NodeState state;
    std::size_t lo, hi;  // labels strictly extending `label`
  };
  std::vector<Frame> stack{{Label{}, rule.root, 0, labels.size()}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    const std::size_t k = fr.label.depth();
    auto kids = rule.checked_children(fr.state);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const Digit c = it->digit;
      auto first = std::lower_bound(labels.begin() + fr.lo, labels.begin() + fr.hi, c,
                                    [k](const Label& l, Digit x) { return l.digits[k] < x; });
      auto last = std::upper_bound(first, labels.begin() + fr.hi, c,
                                   [k](Digit x, const Label& l) { return x < l.digits[k]; });
      Label child = fr.label.child(c);
      if (first == last) {
        // unblocked: extend leftmost to the cut depth
        NodeState s = it->state;
        while (child.depth() < dmax) {
          auto next = rule.checked_children(s).front();
          child = child.child(next.digit);
          s = next.state;
        }
        r.counterexample = child;
        continue;
      }
      if (first->depth() == k + 1) {
        reached[first - labels.begin()] = 1;
        continue;
      }
      stack.push_back({std::move(child), it->state, static_cast<std::size_t>(first - labels.begin()),
                       static_cast<std::size_t>(last - labels.begin())});
    }
    if (r.counterexample) break;
  }
  // redundant edges, and any edge past an early exit, are never reached; check they exist at all
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (reached[i]) continue;
    NodeState s = rule.root;
    for (Digit d : labels[i].digits) {
      auto kids = rule.checked_children(s);
      auto hit = std::find_if(kids.begin(), kids.end(), [d](const Child& c) { return c.digit == d; });
      if (hit == kids.end()) throw std::invalid_argument("cutset edge " + to_string(labels[i]) + " is not in the tree");
      s = hit->state;
    }
  }
  r.ok = !r.counterexample;
  return r;
}

// ---------------------------------------------------------------------------
// Count bound

std::vector<std::uint64_t> level_max_nonzero(const TreeRule& rule, unsigned depth, std::uint64_t max_states) {
  std::vector<std::uint64_t> out{0};
  std::map<NodeState, std::uint64_t> level{{rule.canonicalize(rule.root, depth), 0}};
  for (unsigned n = 0; n < depth; ++n) {
    std::map<NodeState, std::uint64_t> next;
    std::uint64_t best = 0;
    for (const auto& [s, nz] : level)
      for (auto& c : rule.checked_children(s)) {
        const auto v = nz + (c.digit != 0);
        auto& slot = next[rule.canonicalize(c.state, depth - n - 1)];
        slot = std::max(slot, v);
        best = std::max(best, v);
      }
    if (next.size() > max_states)
      throw ResourceCapError(rule.name + ": distinct-state cap exceeded at depth " + std::to_string(n + 1), n + 1,
                             max_states);
    out.push_back(best);
    level = std::move(next);
  }
  return out;
}

std::vector<std::uint64_t> level_max_nonzero(const Truncation& t) {
  std::vector<std::uint64_t> nz(t.vertex_count(), 0), out(t.depth() + 1, 0);
  for (Truncation::Index v = 1; v < t.vertex_count(); ++v) {
    nz[v] = nz[t.parent(v)] + (t.digit(v) != 0);
    auto& slot = out[t.depth_of(v)];
    slot = std::max(slot, nz[v]);
  }
  return out;
}

CountBoundReport count_bound_check(const std::vector<BigInt>& level_counts,
                                   const std::vector<std::uint64_t>& max_nonzero, unsigned lower_lo) {
  if (level_counts.size() < 17) throw std::invalid_argument("count bound check needs depth >= 16");
  if (max_nonzero.size() != level_counts.size()) throw std::invalid_argument("level data of different depths");
  const auto D = static_cast<unsigned>(level_counts.size() - 1);
  CountBoundReport r;
  r.log3_ratio.assign(D + 1, 0);
  r.nonzero_ratio.assign(D + 1, 0);
  r.lower_lo = std::min(lower_lo, D);
  r.lower = std::numeric_limits<double>::infinity();
  for (unsigned n = 1; n <= D; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    r.log3_ratio[n] = ln_big(level_counts[n]) / std::log(3.0) / root;
    r.nonzero_ratio[n] = static_cast<double>(max_nonzero[n]) / root;
    r.C_hat = std::max(r.C_hat, r.log3_ratio[n]);
    r.c_hat = std::max(r.c_hat, r.nonzero_ratio[n]);
    if (n >= r.lower_lo) r.lower = std::min(r.lower, r.log3_ratio[n]);
  }
  return r;
}

CountBoundReport count_bound_check(const Truncation& t, unsigned lower_lo) {
  return count_bound_check(t.level_counts(), level_max_nonzero(t), lower_lo);
}

nlohmann::ordered_json to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok;
  j["ln_capacity"] = r.ln_capacity;
  j["capacity"] = std::exp(r.ln_capacity);
  j["counterexample"] = nullptr;
  if (r.counterexample) j["counterexample"] = to_string(*r.counterexample);
  return j;
}

nlohmann::ordered_json to_json(const CountBoundReport& r) {
  nlohmann::ordered_json j;
  j["C_hat"] = r.C_hat;
  j["c_hat"] = r.c_hat;
  j["lower"] = r.lower;
  j["lower_window_start"] = r.lower_lo;
  auto& rows = j["levels"] = nlohmann::ordered_json::array();
  for (std::size_t n = 1; n < r.log3_ratio.size(); ++n)
    rows.push_back({{"n", n}, {"log3_ratio", r.log3_ratio[n]}, {"nonzero_ratio", r.nonzero_ratio[n]}});
  return j;
}

}  // namespace treegauge
