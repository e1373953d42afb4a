#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrap/errors.hpp"

namespace qrap {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kDefaultPrimeCap = 100'000'000;       // primes_in_range upper guard
inline constexpr u64 kDefaultTableThreshold = 10'000'000;  // residue table built up to here

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

// Exact integer square root and square test; no floating point in the result path.
u64 isqrt(u64 n);
bool is_square(u64 n);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(u64 n);

// Ascending, complete, duplicate-free primes in the closed interval [lo, hi].
// Segmented sieve; throws RangeTooLargeError when hi exceeds the cap.
std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 cap = kDefaultPrimeCap);

// Legendre character of a mod p by Euler's criterion (no table).
int chi_euler(u64 p, i64 a);

// An odd prime p together with a quadratic-residue lookup table. For p up to
// the table threshold, chi() is an O(1) lookup; above it, single queries fall
// back to Euler's criterion so construction never pays O(p).
//
// Immutable after construction; safe for unrestricted concurrent use.
class ResidueClassifier {
 public:
  explicit ResidueClassifier(u64 p, u64 table_threshold = kDefaultTableThreshold);

  u64 prime() const { return p_; }
  bool has_table() const { return !qr_.empty(); }

  // chi(a) in {-1, 0, +1}; a is reduced mod p internally, negatives allowed.
  int chi(i64 a) const {
    const i64 p = static_cast<i64>(p_);
    i64 r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    return chi_unit(static_cast<u64>(r));
  }

  // Fast path: r must already be in [1, p-1].
  int chi_unit(u64 r) const {
    if (!qr_.empty()) return qr_[r] ? 1 : -1;
    return powmod(r, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
  }

 private:
  u64 p_;
  std::vector<std::uint8_t> qr_;  // size p when tabled, entry i = 1 iff i is a QR
};

// Exact squareness of the product of xs (all positive); big-integer backed,
// immune to overflow of the product.
bool product_is_square(std::span<const i64> xs);

}  // namespace qrap
