#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treegauge {

using Digit = std::uint8_t;

/// Vertex name: the digit sequence along the root path. The empty label is the root.
struct Label {
  std::vector<Digit> digits;

  Label() = default;
  explicit Label(std::vector<Digit> d) : digits(std::move(d)) {}

  std::size_t depth() const { return digits.size(); }
  bool empty() const { return digits.empty(); }

  Label child(Digit d) const {
    Label c = *this;
    c.digits.push_back(d);
    return c;
  }

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

/// Digits as characters when every digit is below 10, otherwise dot-separated.
std::string to_string(const Label& l);

/// Inverse of to_string. Accepts "" for the root. Throws std::invalid_argument.
Label parse_label(std::string_view text);

/// Removes the first digit. Throws std::invalid_argument on the root label.
Label shift_label(const Label& w);

std::size_t count_nonzero(const Label& l);

}  // namespace treegauge
