#pragma once

// Shared scalar types and small utilities used across the library.
// All exact arithmetic is done with arbitrary-precision integers and
// rationals; no floating point appears anywhere in the core.

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxcoh {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Gen = int;                    // generator index into CoxeterMatrix::generators
using Word = std::vector<Gen>;      // word in the generators
using ElemId = std::uint32_t;       // interned group element
using Subset = std::uint32_t;       // subset of generators as a bitmask

inline int popcount(Subset x) { return std::popcount(x); }

inline bool subset_contains(Subset big, Subset small) { return (small & ~big) == 0; }

inline std::vector<Gen> bits_of(Subset mask) {
  std::vector<Gen> out;
  for (Gen s = 0; mask != 0; ++s, mask >>= 1)
    if (mask & 1u) out.push_back(s);
  return out;
}

inline Subset full_mask(int rank) {
  return rank >= 32 ? ~Subset(0) : (Subset(1) << rank) - 1;
}

inline Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Factor a positive integer by trial division.  Torsion coefficients in
// this library are tiny, so nothing cleverer is needed.
inline std::map<Int, int> factor_small(Int n) {
  std::map<Int, int> fac;
  for (Int p = 2; p * p <= n; ++p)
    while (n % p == 0) { ++fac[p]; n /= p; }
  if (n > 1) ++fac[n];
  return fac;
}

// A torsion group can be presented either by invariant factors or by an
// unordered list of prime powers; the prime-power multiset is the
// canonical form used for comparisons.
inline std::multiset<Int> prime_power_multiset(const std::vector<Int>& factors) {
  std::multiset<Int> out;
  for (const Int& d : factors) {
    for (const auto& [p, e] : factor_small(d)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      out.insert(q);
    }
  }
  return out;
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Gen g : w) {
      h ^= static_cast<std::size_t>(g) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace coxcoh
