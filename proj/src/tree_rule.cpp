#include "treegauge/tree_rule.hpp"

#include <sstream>
#include <stdexcept>

namespace treegauge {

std::vector<Child> TreeRule::checked_children(const NodeState& s) const {
  auto kids = children(s);
  if (kids.empty()) throw std::logic_error(name + ": state without children: " + describe(s));
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i].digit >= alphabet) throw std::logic_error(name + ": digit outside alphabet");
    if (i && kids[i].digit <= kids[i - 1].digit)
      throw std::logic_error(name + ": child digits not strictly increasing");
  }
  return kids;
}

T13State T13State::from_rank(unsigned level, const BigInt& rank) {
  if (rank < 0 || compare_pow2(rank, level) >= 0) throw std::invalid_argument("1-3 rank outside its level");
  return T13State{level, pow2(level) - rank};
}

BigInt T13State::rank() const { return pow2(level) - deficit; }

namespace {

std::string describe_t13(const T13State& s) {
  return "T13(" + std::to_string(s.level) + ",deficit " + s.deficit.str() + ")";
}

}  // namespace

std::string describe(const NodeState& s) {
  struct Visitor {
    std::string operator()(const T13State& t) const { return describe_t13(t); }
    std::string operator()(const StretchState& t) const {
      return "Stretch(" + std::to_string(t.zeros_left) + "," + describe_t13(t.target) + ")";
    }
    std::string operator()(const UnionState& u) const {
      std::ostringstream os;
      os << "Union{";
      for (std::size_t i = 0; i < u.members.size(); ++i) {
        if (i) os << ",";
        os << u.members[i].zeros_left << ":" << describe_t13(u.members[i].vertex);
      }
      os << "}";
      return os.str();
    }
    std::string operator()(const CombState& c) const {
      switch (c.kind) {
        case CombKind::SpineOrigin: return "Comb(origin)";
        case CombKind::SpineArm: return "Comb(arm)";
        case CombKind::Tooth: return "Comb(tooth)";
      }
      return "Comb(?)";
    }
    std::string operator()(const CoverState& c) const { return "Cover(" + std::to_string(c.vertex) + ")"; }
  };
  return std::visit(Visitor{}, s);
}

}  // namespace treegauge
