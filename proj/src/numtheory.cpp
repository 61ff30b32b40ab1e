#include "spherepts/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spherepts/errors.hpp"

namespace spherepts::numtheory {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialBound = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
// of an odd composite n; the polynomial constant is stepped deterministically
// until one is found.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += kBatch;
      }
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      // Batched gcd overshot; replay one step at a time.
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::map<u64, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++acc[n];
    return;
  }
  const u64 d = pollard_brent(n);
  factor_into(d, acc);
  factor_into(n / d, acc);
}

}  // namespace

std::uint64_t FactoredInteger::product() const {
  u64 p = 1;
  for (const auto& f : factors)
    for (int e = 0; e < f.exponent; ++e) p *= f.prime;
  return p;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  // The double seed can be off by one or two near 2^64; settle it exactly.
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::uint64_t n) {
  // Squares mod 64 occupy 12 residues; rejects ~81% of inputs cheaply.
  constexpr u64 kSquaresMod64 = [] {
    u64 mask = 0;
    for (u64 i = 0; i < 64; ++i) mask |= u64{1} << (i * i % 64);
    return mask;
  }();
  if (((kSquaresMod64 >> (n & 63)) & 1) == 0) return false;
  const u64 r = isqrt(n);
  return r * r == n;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3 * 10^24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0 || n >= (u64{1} << 63))
    throw DomainError("factorize: n must satisfy 1 <= n < 2^63");
  FactoredInteger out;
  out.n = n;
  u64 rest = n;
  for (const std::uint32_t p : small_primes()) {
    if (static_cast<u64>(p) * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (rest > 1) {
    std::map<u64, int> big;
    factor_into(rest, big);
    for (const auto& [p, e] : big) out.factors.push_back({p, e});
  }
  return out;
}

bool is_squarefree(std::uint64_t n) {
  const auto f = factorize(n);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

FourPowerSplit strip_four_powers(std::uint64_t n) {
  if (n == 0) throw DomainError("strip_four_powers: n must be positive");
  FourPowerSplit s{0, n};
  while (s.m % 4 == 0) {
    s.m /= 4;
    ++s.a;
  }
  return s;
}

bool three_squares_representable(std::uint64_t n) {
  return strip_four_powers(n).m % 8 != 7;
}

bool admits_primitive(std::uint64_t n) {
  const u64 r = n % 8;
  return r != 0 && r != 4 && r != 7;
}

}  // namespace spherepts::numtheory
