#include "treegauge/truncation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace treegauge {

std::uint64_t max_vertices_from_env() {
  if (const char* env = std::getenv("TREEGAUGE_MAX_VERTICES")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("TREEGAUGE_MAX_VERTICES is not an integer");
    }
  }
  return kDefaultMaxVertices;
}

unsigned Truncation::depth_of(Index v) const {
  auto it = std::upper_bound(level_begin_.begin(), level_begin_.end(), v);
  return static_cast<unsigned>(it - level_begin_.begin()) - 1;
}

std::vector<BigInt> Truncation::level_counts() const {
  std::vector<BigInt> out;
  out.reserve(depth_ + 1);
  for (unsigned n = 0; n <= depth_; ++n) out.emplace_back(level_begin_[n + 1] - level_begin_[n]);
  return out;
}

std::vector<BigInt> Truncation::ball_counts() const { return prefix_sums(level_counts()); }

std::vector<BigInt> prefix_sums(const std::vector<BigInt>& counts) {
  std::vector<BigInt> out;
  out.reserve(counts.size());
  BigInt acc = 0;
  for (const auto& c : counts) {
    acc += c;
    out.push_back(acc);
  }
  return out;
}

Label Truncation::label_of(Index v) const {
  std::vector<Digit> rev;
  while (parent_[v] != kNoParent) {
    rev.push_back(digit_[v]);
    v = parent_[v];
  }
  return Label(std::vector<Digit>(rev.rbegin(), rev.rend()));
}

std::optional<Truncation::Index> Truncation::vertex_of(const Label& l) const {
  if (l.depth() > depth_) return std::nullopt;
  Index v = 0;
  for (Digit d : l.digits) {
    auto [first, last] = children(v);
    auto it = std::lower_bound(digit_.begin() + first, digit_.begin() + last, d);
    if (it == digit_.begin() + last || *it != d) return std::nullopt;
    v = static_cast<Index>(it - digit_.begin());
  }
  return v;
}

Truncation expand(const TreeRule& rule, unsigned depth, std::uint64_t max_vertices) {
  Truncation t;
  t.depth_ = depth;
  t.rule_name_ = rule.name;
  t.provenance_ = rule.provenance;
  t.parent_.push_back(Truncation::kNoParent);
  t.digit_.push_back(0);
  t.level_begin_ = {0, 1};

  std::vector<NodeState> frontier{rule.canonicalize(rule.root, depth)};
  for (unsigned n = 0; n < depth; ++n) {
    std::vector<NodeState> next;
    const auto base = t.level_begin_[n];
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      t.first_child_.push_back(static_cast<Truncation::Index>(t.parent_.size()));
      for (auto& c : rule.checked_children(frontier[i])) {
        if (t.parent_.size() >= max_vertices)
          throw ResourceCapError(rule.name + ": vertex cap " + std::to_string(max_vertices) +
                                     " exceeded while building level " + std::to_string(n + 1),
                                 n + 1, max_vertices);
        t.parent_.push_back(static_cast<Truncation::Index>(base + i));
        t.digit_.push_back(c.digit);
        next.push_back(rule.canonicalize(c.state, depth - n - 1));
      }
    }
    frontier = std::move(next);
    t.level_begin_.push_back(static_cast<Truncation::Index>(t.parent_.size()));
  }
  // vertices at depth D have no children in the truncation
  while (t.first_child_.size() <= t.parent_.size())
    t.first_child_.push_back(static_cast<Truncation::Index>(t.parent_.size()));
  return t;
}

std::vector<BigInt> count_levels(const TreeRule& rule, unsigned depth, std::uint64_t max_states) {
  std::vector<BigInt> counts{1};
  std::map<NodeState, BigInt> current{{rule.canonicalize(rule.root, depth), BigInt(1)}};
  for (unsigned n = 0; n < depth; ++n) {
    std::map<NodeState, BigInt> next;
    BigInt level = 0;
    for (const auto& [state, mult] : current) {
      for (auto& c : rule.checked_children(state)) {
        next[rule.canonicalize(c.state, depth - n - 1)] += mult;
        level += mult;
      }
      if (next.size() > max_states)
        throw ResourceCapError(rule.name + ": distinct-state cap exceeded at level " + std::to_string(n + 1), n + 1,
                               max_states);
    }
    counts.push_back(level);
    current = std::move(next);
  }
  return counts;
}

Truncation Truncation::from_labels(std::vector<Label> labels, std::string rule_name,
                                   std::map<std::string, std::string> provenance) {
  // BFS order with canonical sibling order is (length, lexicographic)
  std::sort(labels.begin(), labels.end(), [](const Label& a, const Label& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.digits < b.digits;
  });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty() || !labels.front().empty()) throw std::invalid_argument("label set lacks the root");

  Truncation t;
  t.rule_name_ = std::move(rule_name);
  t.provenance_ = std::move(provenance);
  t.depth_ = static_cast<unsigned>(labels.back().depth());
  t.parent_.resize(labels.size());
  t.digit_.resize(labels.size());
  t.parent_[0] = kNoParent;
  t.digit_[0] = 0;
  t.level_begin_.assign(t.depth_ + 2, 0);
  for (const auto& l : labels) ++t.level_begin_[l.depth() + 1];
  for (unsigned n = 1; n < t.level_begin_.size(); ++n) t.level_begin_[n] += t.level_begin_[n - 1];

  // parents of a level appear in the same relative order as their children
  for (unsigned n = 1; n <= t.depth_; ++n) {
    Index p = t.level_begin_[n - 1];
    for (Index v = t.level_begin_[n]; v < t.level_begin_[n + 1]; ++v) {
      const auto& l = labels[v];
      while (p < t.level_begin_[n] &&
             !std::equal(labels[p].digits.begin(), labels[p].digits.end(), l.digits.begin()))
        ++p;
      if (p == t.level_begin_[n]) throw std::invalid_argument("label set is not prefix-closed: " + to_string(l));
      t.parent_[v] = p;
      t.digit_[v] = l.digits.back();
    }
  }
  t.first_child_.assign(labels.size() + 1, 0);
  {
    Index next_child = 1;
    for (Index v = 0; v < labels.size(); ++v) {
      t.first_child_[v] = next_child;
      while (next_child < labels.size() && t.parent_[next_child] == v) ++next_child;
    }
    t.first_child_[labels.size()] = next_child;
  }
  return t;
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "jsonl") return ExportFormat::Jsonl;
  if (name == "csv-levels" || name == "csv") return ExportFormat::CsvLevels;
  throw std::invalid_argument("unknown export format: " + name);
}

void write_levels_csv(const std::vector<BigInt>& level_counts, std::ostream& out) {
  out << "n,level_count,ball_count\n";
  BigInt ball = 0;
  for (std::size_t n = 0; n < level_counts.size(); ++n) {
    ball += level_counts[n];
    out << n << ',' << level_counts[n] << ',' << ball << '\n';
  }
}

void export_truncation(const Truncation& t, ExportFormat format, std::ostream& out) {
  switch (format) {
    case ExportFormat::Dot: {
      out << "digraph \"" << t.rule_name() << "\" {\n";
      for (const auto& [k, v] : t.provenance()) out << "  // " << k << "=" << v << "\n";
      for (Truncation::Index v = 0; v < t.vertex_count(); ++v) {
        const auto l = to_string(t.label_of(v));
        out << "  \"r" << l << "\" [label=\"" << (l.empty() ? "root" : l) << "\"];\n";
      }
      for (Truncation::Index v = 1; v < t.vertex_count(); ++v)
        out << "  \"r" << to_string(t.label_of(t.parent(v))) << "\" -> \"r" << to_string(t.label_of(v)) << "\";\n";
      out << "}\n";
      break;
    }
    case ExportFormat::Jsonl:
      for (Truncation::Index v = 0; v < t.vertex_count(); ++v) {
        nlohmann::ordered_json j;
        j["label"] = to_string(t.label_of(v));
        j["depth"] = t.depth_of(v);
        out << j.dump() << '\n';
      }
      break;
    case ExportFormat::CsvLevels: write_levels_csv(t.level_counts(), out); break;
  }
  if (!out) throw std::runtime_error("export: write failure");
}

}  // namespace treegauge
