#include "treegauge/label.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace treegauge {

std::string to_string(const Label& l) {
  const bool wide = std::any_of(l.digits.begin(), l.digits.end(), [](Digit d) { return d >= 10; });
  std::string out;
  if (!wide) {
    out.reserve(l.digits.size());
    for (Digit d : l.digits) out.push_back(static_cast<char>('0' + d));
    return out;
  }
  for (std::size_t i = 0; i < l.digits.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(l.digits[i]);
  }
  return out;
}

Label parse_label(std::string_view text) {
  Label l;
  if (text.find('.') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad label character");
      l.digits.push_back(static_cast<Digit>(c - '0'));
    }
    return l;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = std::min(text.find('.', pos), text.size());
    unsigned v = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + next, v);
    if (ec != std::errc{} || p != text.data() + next || v > 255)
      throw std::invalid_argument("bad label component");
    l.digits.push_back(static_cast<Digit>(v));
    pos = next + 1;
  }
  return l;
}

Label shift_label(const Label& w) {
  if (w.empty()) throw std::invalid_argument("shift of the root label");
  return Label(std::vector<Digit>(w.digits.begin() + 1, w.digits.end()));
}

std::size_t count_nonzero(const Label& l) {
  return static_cast<std::size_t>(std::count_if(l.digits.begin(), l.digits.end(), [](Digit d) { return d != 0; }));
}

}  // namespace treegauge
