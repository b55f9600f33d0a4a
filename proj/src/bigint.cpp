#include "treegauge/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace treegauge {

BigInt pow2(unsigned k) {
  BigInt r = 1;
  r <<= k;
  return r;
}

BigInt pow3(unsigned k) { return boost::multiprecision::pow(BigInt(3), k); }

int compare_pow2(const BigInt& x, std::uint64_t k) {
  if (x <= 0) return -1;
  const auto top = boost::multiprecision::msb(x);
  if (top != k) return top < k ? -1 : 1;
  return boost::multiprecision::lsb(x) == k ? 0 : 1;
}

double ln_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("ln_big: non-positive argument");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  // keep the top 64 bits; the dropped tail is below double precision
  const unsigned shift = static_cast<unsigned>(bits) - 63;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace treegauge
