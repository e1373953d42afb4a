#include "qrap/arith.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qrap {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  // integer Newton iteration from a power-of-two upper estimate
  u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
  for (;;) {
    const u64 y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

bool is_square(u64 n) {
  const u64 r = isqrt(n);
  return r * r == n;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for the full 64-bit range
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 cap) {
  if (lo > hi) throw std::invalid_argument("primes_in_range: lo > hi");
  if (hi > cap) throw RangeTooLargeError("primes_in_range: hi exceeds the configured cap");

  std::vector<u64> out;
  if (hi < 2) return out;
  lo = std::max<u64>(lo, 2);

  // base primes up to sqrt(hi)
  const u64 root = isqrt(hi);
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr u64 kSegment = 1 << 20;
  std::vector<std::uint8_t> seg;
  for (u64 low = lo; low <= hi; low += kSegment) {
    const u64 high = std::min(hi, low + kSegment - 1);
    seg.assign(high - low + 1, 1);
    for (u64 p : base) {
      u64 start = std::max(p * p, ((low + p - 1) / p) * p);
      for (u64 j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (u64 v = low; v <= high; ++v) {
      if (seg[v - low] && v >= 2) out.push_back(v);
    }
    if (high == hi) break;  // avoid wrap-around when hi is near UINT64_MAX
  }
  return out;
}

int chi_euler(u64 p, i64 a) {
  const i64 ps = static_cast<i64>(p);
  i64 r = a % ps;
  if (r < 0) r += ps;
  if (r == 0) return 0;
  return powmod(static_cast<u64>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

ResidueClassifier::ResidueClassifier(u64 p, u64 table_threshold) : p_(p) {
  if (p < 3 || (p & 1) == 0 || !is_prime(p)) {
    throw std::invalid_argument("ResidueClassifier: p must be an odd prime");
  }
  if (p <= table_threshold) {
    qr_.assign(p, 0);
    for (u64 x = 1; x <= (p - 1) / 2; ++x) qr_[(x * x) % p] = 1;
  }
}

bool product_is_square(std::span<const i64> xs) {
  mpz_t prod, v;
  mpz_init_set_ui(prod, 1);
  mpz_init(v);
  for (i64 x : xs) {
    if (x <= 0) {
      mpz_clear(prod);
      mpz_clear(v);
      throw std::domain_error("product_is_square: factors must be positive");
    }
    mpz_set_si(v, static_cast<long>(x));
    mpz_mul(prod, prod, v);
  }
  const bool square = mpz_perfect_square_p(prod) != 0;
  mpz_clear(prod);
  mpz_clear(v);
  return square;
}

}  // namespace qrap
