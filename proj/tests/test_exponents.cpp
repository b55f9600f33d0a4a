#include "helpers.hpp"
#include "oracles.hpp"

#include "treegauge/exponents.hpp"
#include "treegauge/witnesses.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace treegauge;
using namespace treegauge::test;

namespace {

const WeightKind kExp2(WeightFamily::Exponential, 2.0);

double value_of(const Truncation& t, const WeightKind& k) { return std::exp(mincut(t, k).ln_value); }

}  // namespace

TEST_SUITE("exponents") {

TEST_CASE("edge weights") {
  CHECK(kExp2.ln_weight(3) == doctest::Approx(-3 * std::log(2.0)));
  CHECK(WeightKind(WeightFamily::Polynomial, 1).ln_weight(10) == doctest::Approx(-std::log(10.0)));
  CHECK(WeightKind(WeightFamily::Stretched, 0.5).ln_weight(64) == doctest::Approx(-8));
  CHECK_THROWS_AS(WeightKind(WeightFamily::Polynomial, 0), std::invalid_argument);
  CHECK_THROWS_AS(WeightKind(WeightFamily::Stretched, -1), std::invalid_argument);
  CHECK_THROWS_AS(WeightKind(WeightFamily::Exponential, 0.5), std::invalid_argument);
  CHECK(parse_family("polynomial") == WeightFamily::Polynomial);
  CHECK(to_string(WeightFamily::Stretched) == "stretched");
  CHECK_THROWS_AS(parse_family("cubic"), std::invalid_argument);
}

TEST_CASE("log sums") {
  LogSum s;
  CHECK(s.empty());
  CHECK(std::isinf(s.value()));
  s.add(std::log(2.0));
  s.add(std::log(3.0));
  CHECK(s.value() == doctest::Approx(std::log(5.0)));
  LogSum tiny;  // would underflow as plain doubles
  for (int i = 0; i < 1000; ++i) tiny.add(-2000.0);
  CHECK(tiny.value() == doctest::Approx(-2000.0 + std::log(1000.0)));
}

TEST_CASE("binary tree mincut") {
  const auto bin = cover_rule(self_loop_graph(2));
  for (unsigned d = 1; d <= 16; ++d) {
    CAPTURE(d);
    const auto t = expand(bin, d);
    CHECK(value_of(t, kExp2) == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = mincut(t, WeightKind(WeightFamily::Exponential, 1.8));
    CHECK(std::exp(r.ln_value) == doctest::Approx(2 / 1.8).epsilon(1e-12));
    std::vector<std::string> heads;
    for (const auto& e : r.witness.edges) heads.push_back(to_string(e));
    CHECK(heads == std::vector<std::string>{"0", "1"});
  }
  // the tie at lambda = 2 goes to the shallowest level
  const auto w = mincut(expand(bin, 4), kExp2).witness;
  CHECK(w.edges.size() == 2);
}

TEST_CASE("single ray mincut is the deepest edge") {
  const auto ray = expand(cover_rule(self_loop_graph(1)), 30);
  for (const auto& k : {kExp2, WeightKind(WeightFamily::Polynomial, 1), WeightKind(WeightFamily::Stretched, 0.5)}) {
    const auto r = mincut(ray, k);
    CHECK(r.ln_value == doctest::Approx(k.ln_weight(30)));
    REQUIRE(r.witness.edges.size() == 1);
    CHECK(r.witness.edges[0].depth() == 30);
  }
}

TEST_CASE("level sums") {
  const auto t = expand(t13_rule(), 20);
  for (unsigned n = 1; n <= 20; ++n) CHECK(std::exp(level_sum(t, kExp2, n)) == doctest::Approx(1.0));
  const auto comb = count_levels(comb_rule(), 100);
  CHECK(std::exp(level_sum(comb[100], WeightKind(WeightFamily::Polynomial, 1), 100)) == doctest::Approx(4.0));

  SaturationParams p;
  p.depth = 96;
  const auto counts = saturate(StretchFunction::identity(), p).level_counts;
  const WeightKind st(WeightFamily::Stretched, 0.5);
  for (unsigned n = 16; n <= 96; ++n) {
    const double v = level_sum(counts[n], st, n);
    CHECK(v >= std::log(1e-3));
    CHECK(v <= std::log(1e6));
  }
}

TEST_CASE("mincut is bounded by every level and nonincreasing in depth") {
  const std::vector<TreeRule> rules = {t13_rule(), stretch_rule(StretchFunction::identity()), comb_rule(),
                                       cover_rule(loop_chain_graph(2))};
  const std::vector<WeightKind> kinds = {WeightKind(WeightFamily::Exponential, 1.5),
                                         WeightKind(WeightFamily::Polynomial, 1.2),
                                         WeightKind(WeightFamily::Stretched, 0.6)};
  for (const auto& rule : rules)
    for (const auto& k : kinds) {
      CAPTURE(rule.name);
      double prev = std::numeric_limits<double>::infinity();
      for (unsigned d = 1; d <= 14; ++d) {
        const auto t = expand(rule, d);
        const auto r = mincut(t, k);
        for (unsigned n = 1; n <= d; ++n) CHECK(r.ln_value <= level_sum(t, k, n) + 1e-12);
        CHECK(r.ln_value <= prev + 1e-12);
        prev = r.ln_value;
      }
    }
}

TEST_CASE("witness capacity matches and verifies") {
  const std::vector<TreeRule> rules = {t13_rule(), stretch_rule(StretchFunction::identity()), comb_rule(),
                                       cover_rule(self_loop_graph(3))};
  for (const auto& rule : rules)
    for (const auto& k : {WeightKind(WeightFamily::Exponential, 2.5), WeightKind(WeightFamily::Polynomial, 2),
                          WeightKind(WeightFamily::Stretched, 0.7)}) {
      const auto t = expand(rule, 9);
      const auto r = mincut(t, k);
      auto cs = r.witness;
      cs.recompute_capacity();
      CHECK(std::abs(cs.ln_capacity - r.ln_value) <= 1e-12 * std::max(1.0, std::abs(r.ln_value)));
      CHECK(verify_cutset(t, cs).ok);
      // no edge of the witness lies below another
      for (std::size_t i = 1; i < cs.edges.size(); ++i) {
        const auto& a = cs.edges[i - 1].digits;
        const auto& b = cs.edges[i].digits;
        CHECK_FALSE((a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin())));
      }
    }
}

TEST_CASE("mincut matches exhaustive enumeration") {
  const auto corpus = oracle_corpus(60, 2024);
  std::size_t subset_checked = 0;
  for (const auto& c : corpus) {
    CAPTURE(c.tree.vertex_count());
    CAPTURE(c.depth);
    const double ln_dp = mincut(c.tree, c.kind).ln_value;
    CHECK(std::abs(ln_dp - std::log(brute_min_cut(c.tree, c.kind))) <= 1e-9);
    if (c.tree.vertex_count() <= 17) {
      CHECK(std::abs(ln_dp - std::log(subset_min_cut(c.tree, c.kind))) <= 1e-9);
      ++subset_checked;
    }
  }
  CHECK(subset_checked >= 5);
}

TEST_CASE("state DP equals arena DP") {
  SaturationParams sp;
  sp.depth = 12;
  const std::vector<TreeRule> rules = {t13_rule(),
                                       stretch_rule(StretchFunction::identity()),
                                       stretch_rule(StretchFunction::parse("1/2")),
                                       comb_rule(),
                                       cover_rule(loop_chain_graph(3)),
                                       cover_rule(graph(3, {{1, 2}, {0, 0, 2}, {1}})),
                                       saturate(StretchFunction::identity(), sp).rule};
  for (const auto& rule : rules)
    for (const auto& k : {WeightKind(WeightFamily::Exponential, 1.7), WeightKind(WeightFamily::Polynomial, 1.5),
                          WeightKind(WeightFamily::Stretched, 0.5)})
      for (unsigned d = 1; d <= 12; ++d) {
        CAPTURE(rule.name);
        CAPTURE(d);
        CHECK(mincut_by_states(rule, k, d) == doctest::Approx(mincut(expand(rule, d), k).ln_value).epsilon(1e-12));
      }
}

TEST_CASE("ray shortcut reaches huge depths") {
  const WeightKind poly(WeightFamily::Polynomial, 1);
  CHECK(mincut_by_states(cover_rule(self_loop_graph(1)), poly, 1000000000000ULL) == doctest::Approx(-std::log(1e12)));
}

TEST_CASE("growth profiles") {
  const auto p = growth_profile(expand(t13_rule(), 20));
  REQUIRE(!p.points.empty());
  CHECK(p.points.back().n == 20);
  CHECK(p.points.back().ratio >= 0.85);
  CHECK(p.points.back().ratio <= 1.0);
  CHECK(p.window_lo == 6);
  CHECK(p.window_hi == 20);

  std::vector<BigInt> ray_balls;
  for (unsigned n = 0; n <= 4000; ++n) ray_balls.emplace_back(n + 1);
  const auto r = growth_profile(ray_balls, 100, 4000);
  CHECK(r.points.back().ratio < 0.3);
  CHECK(r.points.back().ratio < r.points[r.points.size() / 2].ratio);

  // ln ln of 2^(n^a) is a ln n + const, so the slope is a
  std::vector<BigInt> synthetic;
  for (unsigned n = 0; n <= 96; ++n) synthetic.push_back(pow2(static_cast<unsigned>(std::lround(std::pow(n, 0.5) * 40))));
  CHECK(growth_profile(synthetic, 32, 96).slope == doctest::Approx(0.5).epsilon(0.05));

  CHECK_THROWS_AS(growth_profile(expand(t13_rule(), 4)), std::invalid_argument);
  CHECK_THROWS_AS(growth_profile(ray_balls, 50, 40), std::invalid_argument);

  const auto j = to_json(p);
  CHECK(j["points"].size() == p.points.size());
  CHECK(j.contains("slope"));
}

TEST_CASE("decay verdict") {
  const DecisionRule d;
  CHECK(is_decaying({0.0, -3.0, std::log(1e-3)}, d));
  CHECK(is_decaying({0.0, -1.0, -1.0 + std::log(0.7)}, d));
  CHECK_FALSE(is_decaying({0.0, -1.0, -1.1}, d));
}

TEST_CASE("branching estimator calibration") {
  for (unsigned b : {2u, 3u}) {
    const auto r = estimate_branching(cover_rule(self_loop_graph(b)), WeightFamily::Exponential, {50, 100, 200});
    CHECK(r.lambda_star >= b - 0.1);
    CHECK(r.lambda_star <= b + 0.1);
    CHECK(r.lo <= r.lambda_star);
    CHECK(r.lambda_star <= r.hi);
    CHECK_FALSE(r.evaluations.empty());
  }
  const auto ray = estimate_branching(cover_rule(self_loop_graph(1)), WeightFamily::Polynomial, {16, 1000000000000000000ULL});
  CHECK(ray.lambda_star <= 0.02);

  const auto j = to_json(ray);
  CHECK(j["lambda_star"] == ray.lambda_star);
  CHECK(j["evaluations"].size() == ray.evaluations.size());
}

TEST_CASE("estimator input checks") {
  const auto rule = cover_rule(self_loop_graph(2));
  CHECK_THROWS_AS(estimate_branching(rule, WeightFamily::Exponential, {100, 50}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_branching(rule, WeightFamily::Exponential, {}), std::invalid_argument);
  EstimateOptions bad;
  bad.decision.rho = 1.5;
  CHECK_THROWS_AS(estimate_branching(rule, WeightFamily::Exponential, {10, 20}, bad), std::invalid_argument);
}

TEST_CASE("stretched tree decays under stretched weights") {
  const auto trace = mincut_trace(stretch_rule(StretchFunction::identity()), WeightKind(WeightFamily::Stretched, 0.6),
                                  {250, 500, 1000, 2000});
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
  CHECK(std::exp(trace.back()) <= 0.1);
}

TEST_CASE("cutset jsonl") {
  const auto r = mincut(expand(t13_rule(), 3), kExp2);
  std::ostringstream out;
  write_cutset_jsonl(r.witness, out);
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  CHECK(lines == r.witness.edges.size());
  CHECK(out.str().find("\"depth\"") != std::string::npos);
}

}  // TEST_SUITE
