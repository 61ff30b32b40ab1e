#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "spherepts/point_set.hpp"

namespace spherepts::lattice {

// Integer vector with up to four coordinates. Coordinates past the owning
// set's dimension are zero, so dot products can always run over all four.
struct LatticePoint {
  std::array<std::int64_t, 4> coords{};

  auto operator<=>(const LatticePoint&) const = default;
};

__int128 dot(const LatticePoint& a, const LatticePoint& b);
__int128 norm_squared(const LatticePoint& a);
LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
bool is_zero(const LatticePoint& a);

// All x in Z^dim with |x|^2 = n, in lexicographic order.
struct SolutionSet {
  std::uint64_t n = 0;
  int dim = 3;
  std::vector<LatticePoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Largest n accepted by the enumerators, per dimension. The dimension-3 loop
// costs about (pi/4) n perfect-square tests, dimension 4 about n^{3/2}.
struct EnumerationLimits {
  std::uint64_t dim2 = 1'000'000'000'000ULL;
  std::uint64_t dim3 = 200'000'000ULL;
  std::uint64_t dim4 = 1'000'000ULL;

  std::uint64_t ceiling(int dim) const;
};

SolutionSet enumerate_solutions(std::uint64_t n, int dim, const EnumerationLimits& limits = {});

// Same value as enumerate_solutions(n, dim).size() without storing points.
std::uint64_t count_solutions(std::uint64_t n, int dim, const EnumerationLimits& limits = {});

// Points whose coordinate gcd is 1.
SolutionSet filter_primitive(const SolutionSet& s);

// coords / sqrt(n) on S^{dim-1}. Throws EmptySetError for an empty set.
UnitPointSet project_to_sphere(const SolutionSet& s);

// A(n, t): number of ordered pairs (x, y) with <x, y> = t.
struct PairCorrelationTable {
  std::uint64_t n = 0;
  std::map<std::int64_t, std::uint64_t> entries;

  std::uint64_t at(std::int64_t t) const;
  std::uint64_t total() const;
};

PairCorrelationTable pair_correlation(const SolutionSet& s);

// Rational squared chord radius r^2 = num / den.
struct SquaredRadius {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Ordered pairs x != y of the projected set at chord distance < r, decided
// exactly: den * |x - y|^2 < num * n. Uses an integer cell grid so small radii
// cost O(N).
std::uint64_t ripley_exact(const SolutionSet& s, SquaredRadius r2);

// The same count read off the pair-correlation table: sum of A(n, t) over
// t <= n - 1 with den * (2n - 2t) < num * n.
std::uint64_t ripley_from_table(const PairCorrelationTable& table, SquaredRadius r2);

// K_h: ordered pairs with x - y = h. h must be nonzero.
std::uint64_t shifted_count(const SolutionSet& s, const LatticePoint& h);

// K_{h,k}: quadruples with x - y = h and z - w = k; the defining sum
// factorizes, so this is K_h * K_k.
std::uint64_t double_shifted_count(const SolutionSet& s, const LatticePoint& h,
                                   const LatticePoint& k);

// Independent route for K_{h,k}: lists the matching pairs by an O(N^2) scan
// and counts their Cartesian product. Only accepted for N <= 200.
std::uint64_t double_shifted_count_direct(const SolutionSet& s, const LatticePoint& h,
                                          const LatticePoint& k);

// Two solutions (a, x) and (-a, x) of x1^2 + ... + x4^2 = n with a in {1, 2}.
struct ClosePair {
  LatticePoint first;
  LatticePoint second;
  int a = 0;
  double distance = 0.0;  // chord distance of the projections, 2a / sqrt(n)
};

// n odd, n >= 2. Throws RepresentationError naming the obstruction if neither
// n - 1 nor n - 4 is a sum of three squares.
ClosePair close_pair_dim4(std::uint64_t n);

// Canonical three-square decomposition of m (x1 >= x2 >= x3 >= 0, x1 as large
// as possible), or nothing.
bool three_square_decomposition(std::uint64_t m, std::array<std::int64_t, 3>& out);

}  // namespace spherepts::lattice
