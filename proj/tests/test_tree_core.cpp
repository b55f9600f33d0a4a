#include "helpers.hpp"

#include "treegauge/constructions.hpp"
#include "treegauge/truncation.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace treegauge;
using namespace treegauge::test;

TEST_SUITE("tree_core") {

TEST_CASE("expand gives the documented level sizes") {
  CHECK(expand(t13_rule(), 2).level_counts() == ints({1, 2, 4}));
  CHECK(expand(comb_rule(), 0).level_counts() == ints({1}));
  CHECK(expand(t13_rule(), 0).vertex_count() == 1);
  CHECK(expand(stretch_rule(StretchFunction::identity()), 6).level_counts() == ints({1, 2, 4, 4, 8, 8, 8}));
}

TEST_CASE("1-3 tree doubles exactly") {
  const auto counts = expand(t13_rule(), 20).level_counts();
  REQUIRE(counts.size() == 21);
  for (unsigned n = 0; n <= 20; ++n) CHECK(counts[n] == pow2(n));
}

TEST_CASE("single ray and comb level counts") {
  for (auto c : expand(cover_rule(self_loop_graph(1)), 30).level_counts()) CHECK(c == 1);
  const auto comb = expand(comb_rule(), 100).level_counts();
  for (unsigned n = 2; n <= 100; ++n) {
    CHECK(comb[n] >= 2 * n);
    CHECK(comb[n] <= 4 * n + 2);
    CHECK(comb[n] == 4 * n);  // origin arms and teeth each add one vertex per level
  }
}

TEST_CASE("ball counts are prefix sums") {
  CHECK(expand(t13_rule(), 3).ball_counts() == ints({1, 3, 7, 15}));
  CHECK(expand(cover_rule(self_loop_graph(1)), 4).ball_counts() == ints({1, 2, 3, 4, 5}));
  const auto t = expand(stretch_rule(StretchFunction::identity()), 30);
  CHECK(t.ball_counts() == prefix_sums(t.level_counts()));
  BigInt total = 0;
  for (auto& c : t.level_counts()) total += c;
  CHECK(total == BigInt(t.vertex_count()));
}

TEST_CASE("labels of the 1-3 tree") {
  const auto t = expand(t13_rule(), 4);
  CHECK(has(t, "12"));
  auto one = t.vertex_of(parse_label("1"));
  REQUIRE(one);
  auto [b, e] = t.children(*one);
  std::vector<std::string> kids;
  for (auto c = b; c < e; ++c) kids.push_back(to_string(t.label_of(c)));
  CHECK(kids == std::vector<std::string>{"10", "11", "12"});
  CHECK(t.label_of(0).empty());
  CHECK(t.vertex_of(Label{}) == Truncation::Index{0});
  CHECK_FALSE(t.vertex_of(parse_label("20")));
  CHECK_FALSE(t.vertex_of(parse_label("01")));
  for (Truncation::Index v = 0; v < t.vertex_count(); ++v) CHECK(t.vertex_of(t.label_of(v)) == v);
}

TEST_CASE("stretched tree labels") {
  const auto t = expand(stretch_rule(StretchFunction::identity()), 6);
  CHECK(has(t, "12020"));
  CHECK(has(t, "120"));
  CHECK_FALSE(has(t, "121"));
  CHECK_FALSE(has(t, "1210"));
  CHECK(has(t, "1202"));
}

TEST_CASE("stretched tree matches the golden depth-6 label file") {
  std::ifstream in(std::string(TREEGAUGE_TEST_DATA) + "/t0_depth6_labels.txt");
  REQUIRE(in);
  std::set<std::string> golden;
  for (std::string line; std::getline(in, line);) golden.insert(line == "-" ? "" : line);
  CHECK(golden.size() == 35);
  CHECK(label_set(expand(stretch_rule(StretchFunction::identity()), 6)) == golden);
}

TEST_CASE("export formats") {
  const auto t1 = expand(t13_rule(), 1);
  std::ostringstream dot;
  export_truncation(t1, ExportFormat::Dot, dot);
  const auto s = dot.str();
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
  };
  CHECK(count("[label=") == 3);
  CHECK(count("->") == 2);

  std::ostringstream csv;
  export_truncation(expand(t13_rule(), 4), ExportFormat::CsvLevels, csv);
  CHECK(csv.str().rfind("n,level_count,ball_count\n", 0) == 0);
  CHECK(csv.str().find("\n4,16,31\n") != std::string::npos);

  const auto t = expand(stretch_rule(StretchFunction::identity()), 10);
  std::ostringstream jl;
  export_truncation(t, ExportFormat::Jsonl, jl);
  std::size_t lines = 0;
  for (char c : jl.str()) lines += c == '\n';
  CHECK(lines == t.vertex_count());
  CHECK(jl.str().rfind("{\"label\":\"\",\"depth\":0}\n", 0) == 0);

  CHECK_THROWS_AS(parse_export_format("png"), std::invalid_argument);
}

TEST_CASE("exports echo provenance") {
  SaturationParams p;
  p.depth = 6;
  const auto t = t_tilde_truncation(StretchFunction::identity(), p);
  std::ostringstream dot;
  export_truncation(t, ExportFormat::Dot, dot);
  CHECK(dot.str().find("seed_depth_certified") != std::string::npos);
}

TEST_CASE("structural invariants") {
  for (const auto& rule : {t13_rule(), stretch_rule(StretchFunction::identity()), comb_rule()}) {
    const auto t = expand(rule, 12);
    for (Truncation::Index v = 1; v < t.vertex_count(); ++v) CHECK(t.depth_of(v) == t.depth_of(t.parent(v)) + 1);
    const auto again = expand(rule, 12);
    CHECK(label_set(t) == label_set(again));
    CHECK(t.level_counts() == again.level_counts());
    // prefix property
    const auto shallow = expand(rule, 7);
    std::set<std::string> prefix;
    for (const auto& l : label_set(t))
      if (l.size() <= 7) prefix.insert(l);
    CHECK(prefix == label_set(shallow));
  }
}

TEST_CASE("state counting agrees with explicit expansion") {
  const std::vector<TreeRule> rules = {t13_rule(), stretch_rule(StretchFunction::identity()),
                                       stretch_rule(StretchFunction::parse("1/3")),
                                       stretch_rule(StretchFunction::parse("3")), comb_rule(),
                                       cover_rule(loop_chain_graph(3))};
  for (const auto& rule : rules) {
    CAPTURE(rule.name);
    CHECK(count_levels(rule, 14) == expand(rule, 14).level_counts());
  }
}

TEST_CASE("vertex cap is an error naming the level") {
  try {
    expand(t13_rule(), 20, 1000);
    FAIL("expected a resource cap error");
  } catch (const ResourceCapError& e) {
    CHECK(e.level_reached() == 9);  // levels 0..8 hold 511 vertices, level 9 would reach 1023
    CHECK(std::string(e.what()).find("level 9") != std::string::npos);
  }
}

TEST_CASE("label text round trip") {
  CHECK(to_string(parse_label("12020")) == "12020");
  CHECK(parse_label("").empty());
  CHECK(to_string(Label{{1, 12, 0}}) == "1.12.0");
  CHECK(parse_label("1.12.0") == Label{{1, 12, 0}});
  CHECK_THROWS_AS(parse_label("1a"), std::invalid_argument);
}

}  // TEST_SUITE
