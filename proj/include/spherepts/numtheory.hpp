#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spherepts::numtheory {

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n together with its prime factorization, primes strictly increasing.
struct FactoredInteger {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  // Product of prime^exponent; equals n for any value built by factorize().
  std::uint64_t product() const;
};

// Floor of the square root, decided by integer comparisons only.
std::uint64_t isqrt(std::uint64_t n);

bool is_perfect_square(std::uint64_t n);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Complete factorization for 1 <= n < 2^63: trial division by small primes,
// then Pollard rho (Brent variant) on the remaining cofactor.
FactoredInteger factorize(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

struct FourPowerSplit {
  int a = 0;           // exponent of 4
  std::uint64_t m = 0;  // n / 4^a, not divisible by 4
};

// n = 4^a * m with 4 not dividing m.
FourPowerSplit strip_four_powers(std::uint64_t n);

// Legendre/Gauss: n is a sum of three squares iff n != 4^a (8b + 7).
bool three_squares_representable(std::uint64_t n);

// Residue test n mod 8 not in {0, 4, 7}. Necessary for a primitive
// representation as a sum of three squares; per-point primitivity is checked
// in the lattice module.
bool admits_primitive(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace spherepts::numtheory
