#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace entromat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

inline BigInt int_pow(BigInt base, unsigned exp) {
    BigInt out = 1;
    while (exp) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

inline std::uint64_t u64_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

// Returns k with base^k == n, or -1 if n is not an exact power of base.
inline int exact_log(std::uint64_t n, std::uint64_t base) {
    if (n == 0 || base < 2) return -1;
    int k = 0;
    while (n > 1) {
        if (n % base != 0) return -1;
        n /= base;
        ++k;
    }
    return k;
}

}  // namespace entromat
