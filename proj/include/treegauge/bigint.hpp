#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace treegauge {

using BigInt = boost::multiprecision::cpp_int;

/// 2^k as an unbounded integer.
BigInt pow2(unsigned k);
BigInt pow3(unsigned k);

/// Sign of x - 2^k without materializing 2^k.
int compare_pow2(const BigInt& x, std::uint64_t k);

/// Natural log of a positive unbounded integer (finite for any size).
double ln_big(const BigInt& x);

std::string to_string(const BigInt& x);

}  // namespace treegauge
