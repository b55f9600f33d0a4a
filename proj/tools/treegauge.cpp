#include "treegauge/coding_shift.hpp"
#include "treegauge/constructions.hpp"
#include "treegauge/cover_analysis.hpp"
#include "treegauge/exponents.hpp"
#include "treegauge/truncation.hpp"
#include "treegauge/witnesses.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace treegauge;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kResource = 2, kInvariant = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string tree = "t13";
  unsigned depth = 16;
  std::string schedule;
  std::string family = "exponential";
  std::optional<double> lambda;
  double epsilon = 0.25;
  double theta = 1e-3;
  double rho = 0.7;
  std::string out;
  std::string format;
  std::uint64_t max_vertices = kDefaultMaxVertices;
};

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::vector<std::uint64_t> parse_schedule(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || v == 0)
      throw std::invalid_argument("bad schedule entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty schedule");
  return out;
}

struct TreeSpec {
  std::string kind;  // t13 | t0 | t-tilde | comb | cover
  StretchFunction f = StretchFunction::identity();
  std::optional<DirectedGraph> graph;
};

TreeSpec parse_tree(const std::string& text) {
  TreeSpec t;
  const auto colon = text.find(':');
  t.kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (t.kind == "t0" || t.kind == "t-tilde") {
    if (!arg.empty()) t.f = StretchFunction::parse(arg);
  } else if (t.kind == "cover") {
    if (arg.empty()) throw std::invalid_argument("cover needs a digraph file: cover:<file>");
    try {
      t.graph = read_digraph_json(arg);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad digraph file: ") + e.what());
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  } else if (t.kind != "t13" && t.kind != "comb") {
    throw std::invalid_argument("unknown tree '" + text + "'");
  } else if (!arg.empty()) {
    throw std::invalid_argument("tree '" + t.kind + "' takes no parameter");
  }
  return t;
}

/// Rule valid to the given depth. The saturated tree is certified for that depth only.
TreeRule make_rule(const TreeSpec& t, unsigned depth, const RunConfig& cfg) {
  if (t.kind == "t13") return t13_rule();
  if (t.kind == "t0") return stretch_rule(t.f);
  if (t.kind == "comb") return comb_rule();
  if (t.kind == "cover") return cover_rule(*t.graph);
  SaturationParams p;
  p.depth = depth;
  p.max_vertices = cfg.max_vertices;
  return saturate(t.f, p).rule;
}

Truncation make_truncation(const TreeSpec& t, unsigned depth, const RunConfig& cfg) {
  if (t.kind == "t-tilde") {
    SaturationParams p;
    p.depth = depth;
    p.max_vertices = cfg.max_vertices;
    return t_tilde_truncation(t.f, p);
  }
  return expand(make_rule(t, depth, cfg), depth, cfg.max_vertices);
}

std::vector<BigInt> make_level_counts(const TreeSpec& t, unsigned depth, const RunConfig& cfg) {
  if (t.kind == "t-tilde") {
    SaturationParams p;
    p.depth = depth;
    p.max_vertices = cfg.max_vertices;
    return saturate(t.f, p).level_counts;
  }
  if (t.kind == "cover") return cover_level_counts(*t.graph, depth);
  return count_levels(make_rule(t, depth, cfg), depth, cfg.max_vertices);
}

/// Output sink: the --out file when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw IoError("write failure");
  }

 private:
  std::ofstream file_;
};

WeightKind weight_kind(const RunConfig& cfg) {
  if (!cfg.lambda) throw std::invalid_argument("--lambda is required");
  return WeightKind(parse_family(cfg.family), *cfg.lambda);
}

int cmd_levels(const RunConfig& cfg) {
  const auto counts = make_level_counts(parse_tree(cfg.tree), cfg.depth, cfg);
  Sink sink(cfg.out);
  write_levels_csv(counts, sink.stream());
  sink.close();
  return kOk;
}

int cmd_profile(const RunConfig& cfg) {
  const auto counts = make_level_counts(parse_tree(cfg.tree), cfg.depth, cfg);
  const auto g = growth_profile(prefix_sums(counts));
  json j;
  j["tree"] = cfg.tree;
  j["depth"] = cfg.depth;
  j["profile"] = to_json(g);
  Sink sink(cfg.out);
  sink.stream() << j.dump(2) << '\n';
  sink.close();
  if (!cfg.out.empty()) std::cout << "slope " << num(g.slope) << " over n in [" << g.window_lo << ", " << g.window_hi << "]\n";
  return kOk;
}

int cmd_mincut(const RunConfig& cfg) {
  const auto spec = parse_tree(cfg.tree);
  const auto kind = weight_kind(cfg);
  json j;
  j["tree"] = cfg.tree;
  j["family"] = to_string(kind.family);
  j["lambda"] = kind.lambda;
  j["depth"] = cfg.depth;
  if (cfg.out.empty()) {
    const double v = mincut_by_states(make_rule(spec, cfg.depth, cfg), kind, cfg.depth, cfg.max_vertices);
    j["ln_value"] = v;
    j["value"] = std::exp(v);
  } else {
    const auto res = mincut(make_truncation(spec, cfg.depth, cfg), kind);
    j["ln_value"] = res.ln_value;
    j["value"] = std::exp(res.ln_value);
    j["witness_edges"] = res.witness.edges.size();
    Sink sink(cfg.out);
    write_cutset_jsonl(res.witness, sink.stream());
    sink.close();
  }
  std::cout << j.dump() << '\n';
  return kOk;
}

int cmd_estimate(const RunConfig& cfg) {
  const auto spec = parse_tree(cfg.tree);
  const auto family = parse_family(cfg.family);
  const auto schedule = parse_schedule(cfg.schedule.empty() ? "32,64,128" : cfg.schedule);
  const auto deepest = schedule.back();
  if (spec.kind == "t-tilde" && deepest > 4096) throw std::invalid_argument("t-tilde schedules are capped at 4096");
  EstimateOptions opt;
  opt.decision = {cfg.theta, cfg.rho};
  opt.max_states = cfg.max_vertices;
  const auto rule = make_rule(spec, static_cast<unsigned>(std::min<std::uint64_t>(deepest, 4096)), cfg);
  const auto report = estimate_branching(rule, family, schedule, opt);

  if (cfg.format == "json") {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    std::cout << "tree " << cfg.tree << "  family " << to_string(family) << "  lambda* " << num(report.lambda_star)
              << "  bracket [" << num(report.lo) << ", " << num(report.hi) << "]\n";
    std::cout << "lambda      verdict   ln value per depth\n";
    for (const auto& e : report.evaluations) {
      std::string row = num(e.lambda);
      row.resize(std::max<std::size_t>(row.size() + 1, 12), ' ');
      row += e.decaying ? "decays    " : "holds     ";
      for (double v : e.ln_values) row += num(v) + ' ';
      std::cout << row << '\n';
    }
  }
  if (!cfg.out.empty()) {
    Sink sink(cfg.out);
    sink.stream() << "lambda,depth,ln_value\n";
    for (const auto& e : report.evaluations)
      for (std::size_t i = 0; i < schedule.size(); ++i)
        sink.stream() << num(e.lambda) << ',' << schedule[i] << ',' << num(e.ln_values[i]) << '\n';
    sink.close();
  }
  return kOk;
}

int cmd_witness(const RunConfig& cfg) {
  const auto spec = parse_tree(cfg.tree);
  WitnessParams p;
  p.lambda = cfg.lambda.value_or(0.5);
  p.epsilon = cfg.epsilon;
  p.max_edges = cfg.max_vertices;
  p = p.resolved();
  json j;
  j["tree"] = cfg.tree;
  j["lambda"] = p.lambda;
  j["epsilon"] = p.epsilon;
  Cutset cs;
  double bound = p.epsilon;
  if (spec.kind == "t0") {
    cs = t0_cutset(spec.f, p);
    const auto v = verify_cutset(stretch_rule(spec.f), cs);
    if (!v.ok) throw InvariantViolation("t0 cutset failed verification at " + to_string(*v.counterexample));
    j["verified"] = true;
  } else if (spec.kind == "t-tilde") {
    SaturationParams sp;
    sp.depth = static_cast<unsigned>(p.N + 1);
    sp.max_vertices = cfg.max_vertices;
    const auto tt = t_tilde_truncation(spec.f, sp);
    auto r = t_tilde_cutset(spec.f, p, tt);
    cs = std::move(r.cutset);
    bound = 2 * p.epsilon;
    j["N"] = r.N;
    j["pi_capacity"] = std::exp(r.ln_pi_capacity);
    j["beta_capacity"] = std::exp(r.ln_beta_capacity);
    j["beta_edges"] = r.beta.size();
    j["verified"] = true;
  } else {
    throw std::invalid_argument("witness supports t0 and t-tilde");
  }
  j["edges"] = cs.edges.size();
  j["max_depth"] = cs.max_depth();
  j["capacity"] = std::exp(cs.ln_capacity);
  j["bound"] = bound;
  if (!cfg.out.empty()) {
    Sink sink(cfg.out);
    write_cutset_jsonl(cs, sink.stream());
    sink.close();
  }
  std::cout << j.dump() << '\n';
  std::cout << "capacity " << num(std::exp(cs.ln_capacity)) << " <= " << num(bound) << '\n';
  return kOk;
}

int cmd_closure(const RunConfig& cfg) {
  const auto t = make_truncation(parse_tree(cfg.tree), cfg.depth, cfg);
  Sink sink(cfg.out);
  sink.stream() << to_json(check_shift_closure(t)).dump() << '\n';
  sink.close();
  return kOk;
}

int cmd_classify(const RunConfig& cfg) {
  const auto spec = parse_tree(cfg.tree);
  if (spec.kind != "cover") throw std::invalid_argument("classify needs --tree cover:<file>");
  const auto c = classify_growth(*spec.graph);
  std::optional<ThetaReport> theta;
  if (!c.exponential) theta = theta_check(*spec.graph, c.d, 100, 10'000);
  Sink sink(cfg.out);
  sink.stream() << to_json(c, theta).dump() << '\n';
  sink.close();
  return kOk;
}

int cmd_export(const RunConfig& cfg) {
  const auto format = parse_export_format(cfg.format.empty() ? "dot" : cfg.format);
  const auto t = make_truncation(parse_tree(cfg.tree), cfg.depth, cfg);
  Sink sink(cfg.out);
  export_truncation(t, format, sink.stream());
  sink.close();
  return kOk;
}

int fail(int code, const std::string& kind, const std::string& message, json extra = json::object()) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treegauge: rule-defined trees and their growth and branching exponents"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  RunConfig cfg;
  app.add_option("--tree", cfg.tree, "t13 | t0[:s] | t-tilde[:s] | comb | cover:<file>");
  app.add_option("--depth", cfg.depth, "truncation depth");
  app.add_option("--schedule", cfg.schedule, "comma-separated depths for estimate");
  app.add_option("--family", cfg.family, "exponential | polynomial | stretched");
  app.add_option("--lambda", cfg.lambda, "weight parameter");
  app.add_option("--epsilon", cfg.epsilon, "witness budget");
  app.add_option("--theta", cfg.theta, "decay threshold");
  app.add_option("--rho", cfg.rho, "decay ratio");
  app.add_option("--out", cfg.out, "output path");
  app.add_option("--format", cfg.format, "export: dot | jsonl | csv-levels; estimate: table | json");
  app.add_option("--max-vertices", cfg.max_vertices, "vertex / state cap")->envname("TREEGAUGE_MAX_VERTICES");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"levels", "level and ball counts as CSV"},
      {"profile", "growth profile of ln ln |B(n)| against ln n"},
      {"mincut", "weighted min-cut; --out writes the witness cutset"},
      {"estimate", "bisection estimate of the critical lambda"},
      {"witness", "constructive small cutset for t0 or t-tilde"},
      {"closure", "shift-closure check of the label set"},
      {"classify", "growth class of a directed cover"},
      {"export", "write the truncation as DOT, JSON lines or CSV"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name = name] { cfg.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  try {
    if (cfg.command == "levels") return cmd_levels(cfg);
    if (cfg.command == "profile") return cmd_profile(cfg);
    if (cfg.command == "mincut") return cmd_mincut(cfg);
    if (cfg.command == "estimate") return cmd_estimate(cfg);
    if (cfg.command == "witness") return cmd_witness(cfg);
    if (cfg.command == "closure") return cmd_closure(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "export") return cmd_export(cfg);
    return fail(kUsage, "usage", "unknown command");
  } catch (const ResourceCapError& e) {
    return fail(kResource, "resource_cap", e.what(), {{"level_reached", e.level_reached()}, {"cap", e.cap()}});
  } catch (const IoError& e) {
    return fail(kResource, "io", e.what());
  } catch (const InvariantViolation& e) {
    return fail(kInvariant, "invariant_violation", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const std::out_of_range& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const std::logic_error& e) {
    return fail(kInvariant, "invariant_violation", e.what());
  } catch (const std::exception& e) {
    return fail(kResource, "runtime", e.what());
  }
}
