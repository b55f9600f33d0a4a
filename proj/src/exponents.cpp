#include "treegauge/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace treegauge {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

WeightFamily parse_family(const std::string& name) {
  if (name == "exponential" || name == "exp") return WeightFamily::Exponential;
  if (name == "polynomial" || name == "poly") return WeightFamily::Polynomial;
  if (name == "stretched" || name == "intermediate") return WeightFamily::Stretched;
  throw std::invalid_argument("unknown weight family: " + name);
}

std::string to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::Exponential: return "exponential";
    case WeightFamily::Polynomial: return "polynomial";
    case WeightFamily::Stretched: return "stretched";
  }
  return "?";
}

WeightKind::WeightKind(WeightFamily f, double l) : family(f), lambda(l) {
  if (!(l > 0)) throw std::invalid_argument("weight parameter lambda must be positive");
  if (f == WeightFamily::Exponential && l < 1) throw std::invalid_argument("exponential weights need lambda >= 1");
}

double WeightKind::ln_weight(std::uint64_t d) const {
  if (d == 0) throw std::invalid_argument("edge depth must be >= 1");
  const double x = static_cast<double>(d);
  switch (family) {
    case WeightFamily::Exponential: return -x * std::log(lambda);
    case WeightFamily::Polynomial: return -lambda * std::log(x);
    case WeightFamily::Stretched: return -std::pow(x, lambda);
  }
  return 0;
}

void LogSum::add(double ln_x) {
  if (ln_x == kNegInf) {
    ++count_;
    return;
  }
  if (count_ == 0 || scaled_ == 0) {
    max_ = ln_x;
    scaled_ = 1;
  } else if (ln_x <= max_) {
    scaled_ += std::exp(ln_x - max_);
  } else {
    scaled_ = scaled_ * std::exp(max_ - ln_x) + 1;
    max_ = ln_x;
  }
  ++count_;
}

double LogSum::value() const {
  if (count_ == 0 || scaled_ == 0) return kNegInf;
  return max_ + std::log(scaled_);
}

std::uint64_t Cutset::max_depth() const {
  std::uint64_t d = 0;
  for (const auto& e : edges) d = std::max<std::uint64_t>(d, e.depth());
  return d;
}

void Cutset::recompute_capacity() {
  LogSum s;
  for (const auto& e : edges) s.add(kind.ln_weight(e.depth()));
  ln_capacity = s.value();
}

void write_cutset_jsonl(const Cutset& cs, std::ostream& out) {
  for (const auto& e : cs.edges) {
    nlohmann::ordered_json j;
    j["label"] = to_string(e);
    j["depth"] = e.depth();
    j["ln_weight"] = cs.kind.ln_weight(e.depth());
    out << j.dump() << '\n';
  }
}

MincutResult mincut(const Truncation& t, const WeightKind& kind) {
  if (t.depth() < 1) throw std::invalid_argument("mincut needs truncation depth >= 1");
  using Index = Truncation::Index;
  const auto n = t.vertex_count();
  std::vector<double> cost(n);
  std::vector<char> cut(n, 0);
  for (unsigned level = t.depth(); level >= 1; --level) {
    const double here = kind.ln_weight(level);
    auto [begin, end] = t.level_range(level);
    for (Index v = begin; v < end; ++v) {
      auto [cb, ce] = t.children(v);
      if (cb == ce) {
        cost[v] = here;
        cut[v] = 1;
        continue;
      }
      LogSum below;
      for (Index c = cb; c < ce; ++c) below.add(cost[c]);
      const double b = below.value();
      cut[v] = here <= b;
      cost[v] = cut[v] ? here : b;
    }
  }
  MincutResult res;
  LogSum total;
  auto [rb, re] = t.children(0);
  for (Index c = rb; c < re; ++c) total.add(cost[c]);
  res.ln_value = total.value();

  res.witness.kind = kind;
  std::vector<Index> stack;
  for (Index c = re; c > rb; --c) stack.push_back(c - 1);
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    if (cut[v]) {
      res.witness.edges.push_back(t.label_of(v));
      continue;
    }
    auto [cb, ce] = t.children(v);
    for (Index c = ce; c > cb; --c) stack.push_back(c - 1);
  }
  res.witness.recompute_capacity();
  return res;
}

double mincut_by_states(const TreeRule& rule, const WeightKind& kind, std::uint64_t depth, std::uint64_t max_states) {
  if (depth < 1) throw std::invalid_argument("mincut needs depth >= 1");
  const double deepest = kind.ln_weight(depth);
  constexpr int kRay = -1;

  struct Node {
    std::vector<int> kids;  // indices into the next level, kRay for ray children
  };
  std::vector<std::vector<Node>> levels;
  std::vector<NodeState> frontier;

  const NodeState root = rule.canonicalize(rule.root, depth);
  if (rule.ray(root)) return deepest;
  frontier.push_back(root);
  for (std::uint64_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::map<NodeState, int> next_index;
    std::vector<NodeState> next;
    std::vector<Node> nodes(frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& c : rule.checked_children(frontier[i])) {
        NodeState s = rule.canonicalize(c.state, depth - d - 1);
        if (d + 1 == depth || rule.ray(s)) {
          nodes[i].kids.push_back(kRay);
          continue;
        }
        auto [it, inserted] = next_index.emplace(s, static_cast<int>(next.size()));
        if (inserted) next.push_back(std::move(s));
        nodes[i].kids.push_back(it->second);
      }
    }
    if (next.size() > max_states)
      throw ResourceCapError(rule.name + ": distinct-state cap exceeded at depth " + std::to_string(d + 1),
                             static_cast<unsigned>(d + 1), max_states);
    levels.push_back(std::move(nodes));
    frontier = std::move(next);
  }
  // levels[d] holds the non-ray states at depth d; an edge into a ray state at depth <= D costs w(D)
  std::vector<double> below;  // costs of edges into the states of level d+1
  for (std::size_t d = levels.size(); d-- > 0;) {
    std::vector<double> cost(levels[d].size());
    for (std::size_t i = 0; i < levels[d].size(); ++i) {
      LogSum s;
      for (int k : levels[d][i].kids) s.add(k == kRay ? deepest : below[k]);
      cost[i] = d == 0 ? s.value() : std::min(kind.ln_weight(d), s.value());
    }
    below = std::move(cost);
  }
  return below.at(0);
}

double level_sum(const BigInt& level_count, const WeightKind& kind, std::uint64_t n) {
  return ln_big(level_count) + kind.ln_weight(n);
}

double level_sum(const Truncation& t, const WeightKind& kind, unsigned n) {
  if (n > t.depth()) throw std::invalid_argument("level beyond truncation depth");
  auto [b, e] = t.level_range(n);
  return level_sum(BigInt(e - b), kind, n);
}

GrowthProfile growth_profile(const std::vector<BigInt>& ball_counts, std::optional<unsigned> lo,
                             std::optional<unsigned> hi) {
  if (ball_counts.size() < 9) throw std::invalid_argument("growth profile needs depth >= 8");
  const auto D = static_cast<unsigned>(ball_counts.size() - 1);
  GrowthProfile g;
  g.window_lo = lo.value_or(std::max(2u, D / 3));
  g.window_hi = std::min(hi.value_or(D), D);
  for (unsigned n = 2; n <= D; ++n)
    if (ball_counts[n] >= 3)
      g.points.push_back(GrowthPoint{n, std::log(ln_big(ball_counts[n])) / std::log(static_cast<double>(n))});

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (unsigned n = std::max(2u, g.window_lo); n <= g.window_hi; ++n) {
    if (ball_counts[n] < 3) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(ln_big(ball_counts[n]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("growth profile window is empty");
  g.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return g;
}

GrowthProfile growth_profile(const Truncation& t, std::optional<unsigned> lo, std::optional<unsigned> hi) {
  return growth_profile(t.ball_counts(), lo, hi);
}

std::pair<double, double> default_bracket(WeightFamily f, unsigned alphabet) {
  switch (f) {
    case WeightFamily::Exponential: return {1.0, alphabet + 1.0};
    case WeightFamily::Polynomial: return {0.01, 8.0};
    case WeightFamily::Stretched: return {0.01, 1.5};
  }
  return {0, 0};
}

std::vector<double> mincut_trace(const TreeRule& rule, const WeightKind& kind, const std::vector<std::uint64_t>& schedule,
                                 std::uint64_t max_states) {
  std::vector<double> out;
  out.reserve(schedule.size());
  for (auto d : schedule) out.push_back(mincut_by_states(rule, kind, d, max_states));
  return out;
}

bool is_decaying(const std::vector<double>& ln_values, const DecisionRule& d) {
  if (ln_values.empty()) throw std::invalid_argument("empty trace");
  const double last = ln_values.back();
  if (last <= std::log(d.theta)) return true;
  if (ln_values.size() < 2) return false;
  const double mid = ln_values[(ln_values.size() - 1) / 2];
  return last - mid <= std::log(d.rho);
}

EstimateReport estimate_branching(const TreeRule& rule, WeightFamily family, std::vector<std::uint64_t> schedule,
                                  const EstimateOptions& opt) {
  if (schedule.empty()) throw std::invalid_argument("empty depth schedule");
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end())
    throw std::invalid_argument("depth schedule must be strictly increasing");
  if (!(opt.decision.theta > 0 && opt.decision.theta < 1 && opt.decision.rho > 0 && opt.decision.rho < 1))
    throw std::invalid_argument("theta and rho must lie in (0,1)");

  EstimateReport r;
  r.rule_name = rule.name;
  r.family = family;
  r.schedule = schedule;
  r.decision = opt.decision;
  auto [lo, hi] = default_bracket(family, rule.alphabet);
  lo = opt.bracket_lo.value_or(lo);
  hi = opt.bracket_hi.value_or(hi);

  auto evaluate = [&](double lambda) {
    LambdaEvaluation e;
    e.lambda = lambda;
    e.ln_values = mincut_trace(rule, WeightKind(family, lambda), schedule, opt.max_states);
    e.decaying = is_decaying(e.ln_values, opt.decision);
    r.evaluations.push_back(e);
    return e.decaying;
  };

  if (evaluate(lo)) {
    r.lo = 0;
    r.hi = lo;
    r.lambda_star = 0;
  } else if (!evaluate(hi)) {
    r.lo = r.hi = r.lambda_star = hi;
  } else {
    while (hi - lo > opt.tolerance) {
      const double mid = 0.5 * (lo + hi);
      (evaluate(mid) ? hi : lo) = mid;
    }
    r.lo = lo;
    r.hi = hi;
    r.lambda_star = 0.5 * (lo + hi);
  }

  auto sorted = r.evaluations;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1].decaying && !sorted[i].decaying)
      throw InvariantViolation("decay verdict not monotone in lambda between " + std::to_string(sorted[i - 1].lambda) +
                               " and " + std::to_string(sorted[i].lambda));
  return r;
}

nlohmann::ordered_json to_json(const EstimateReport& r) {
  nlohmann::ordered_json j;
  j["rule"] = r.rule_name;
  j["family"] = to_string(r.family);
  j["lambda_star"] = r.lambda_star;
  j["bracket"] = {r.lo, r.hi};
  j["schedule"] = r.schedule;
  j["theta"] = r.decision.theta;
  j["rho"] = r.decision.rho;
  auto& evals = j["evaluations"] = nlohmann::ordered_json::array();
  for (const auto& e : r.evaluations) {
    nlohmann::ordered_json ej;
    ej["lambda"] = e.lambda;
    ej["ln_values"] = e.ln_values;
    ej["decaying"] = e.decaying;
    evals.push_back(ej);
  }
  return j;
}

nlohmann::ordered_json to_json(const GrowthProfile& g) {
  nlohmann::ordered_json j;
  j["window"] = {g.window_lo, g.window_hi};
  j["slope"] = g.slope;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : g.points) pts.push_back({{"n", p.n}, {"ratio", p.ratio}});
  return j;
}

}  // namespace treegauge
