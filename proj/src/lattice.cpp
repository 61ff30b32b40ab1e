#include "spherepts/lattice.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "spherepts/errors.hpp"
#include "spherepts/numtheory.hpp"
#include "spherepts/parallel.hpp"

namespace spherepts::lattice {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

void check_dim(int dim) {
  if (dim < 2 || dim > 4) throw DomainError("dimension must be 2, 3 or 4");
}

void check_budget(u64 n, int dim, const EnumerationLimits& limits) {
  if (n == 0) throw DomainError("n must be positive");
  if (n > limits.ceiling(dim)) {
    throw BudgetExceeded("n = " + std::to_string(n) + " exceeds the dimension-" +
                         std::to_string(dim) + " enumeration ceiling " +
                         std::to_string(limits.ceiling(dim)));
  }
}

// Visits every nonnegative tuple (x_1, ..., x_dim) with sum of squares n and
// x_1 in [lo, hi]. The last coordinate is found by a perfect-square test.
template <typename Visit>
void visit_nonnegative(u64 n, int dim, u64 lo, u64 hi, Visit&& visit) {
  std::array<i64, 4> x{};
  auto rec = [&](auto&& self, int depth, u64 rest) -> void {
    if (depth == dim - 1) {
      if (numtheory::is_perfect_square(rest)) {
        x[depth] = static_cast<i64>(numtheory::isqrt(rest));
        visit(x);
      }
      return;
    }
    const u64 top = numtheory::isqrt(rest);
    for (u64 v = 0; v <= top; ++v) {
      x[depth] = static_cast<i64>(v);
      self(self, depth + 1, rest - v * v);
    }
  };
  for (u64 v = lo; v <= hi; ++v) {
    x[0] = static_cast<i64>(v);
    if (dim == 1) {
      if (v * v == n) visit(x);
    } else {
      rec(rec, 1, n - v * v);
    }
  }
}

int nonzero_count(const std::array<i64, 4>& x, int dim) {
  int z = 0;
  for (int i = 0; i < dim; ++i) z += x[i] != 0;
  return z;
}

// Splits [0, isqrt(n)] into blocks for the worker pool.
struct Blocks {
  u64 top;
  u64 width;
  std::size_t count;
};

Blocks make_blocks(u64 n) {
  const u64 top = numtheory::isqrt(n);
  const u64 width = std::max<u64>(1, (top + 1) / 64);
  return {top, width, static_cast<std::size_t>((top + 1 + width - 1) / width)};
}

}  // namespace

__int128 dot(const LatticePoint& a, const LatticePoint& b) {
  __int128 s = 0;
  for (int i = 0; i < 4; ++i) s += static_cast<__int128>(a.coords[i]) * b.coords[i];
  return s;
}

__int128 norm_squared(const LatticePoint& a) { return dot(a, a); }

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r;
  for (int i = 0; i < 4; ++i) r.coords[i] = a.coords[i] - b.coords[i];
  return r;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r;
  for (int i = 0; i < 4; ++i) r.coords[i] = a.coords[i] + b.coords[i];
  return r;
}

bool is_zero(const LatticePoint& a) {
  return std::all_of(a.coords.begin(), a.coords.end(), [](i64 c) { return c == 0; });
}

std::uint64_t EnumerationLimits::ceiling(int dim) const {
  switch (dim) {
    case 2:
      return dim2;
    case 3:
      return dim3;
    case 4:
      return dim4;
    default:
      throw DomainError("dimension must be 2, 3 or 4");
  }
}

SolutionSet enumerate_solutions(std::uint64_t n, int dim, const EnumerationLimits& limits) {
  check_dim(dim);
  check_budget(n, dim, limits);
  const Blocks blocks = make_blocks(n);
  std::vector<std::vector<LatticePoint>> parts(blocks.count);
  parallel_blocks(blocks.count, [&](std::size_t b) {
    const u64 lo = b * blocks.width;
    const u64 hi = std::min(blocks.top, lo + blocks.width - 1);
    auto& out = parts[b];
    visit_nonnegative(n, dim, lo, hi, [&](const std::array<i64, 4>& x) {
      // Expand the 2^z sign patterns of the nonzero coordinates.
      std::array<int, 4> nz{};
      int z = 0;
      for (int i = 0; i < dim; ++i)
        if (x[i] != 0) nz[z++] = i;
      for (u64 mask = 0; mask < (u64{1} << z); ++mask) {
        LatticePoint p;
        for (int i = 0; i < dim; ++i) p.coords[i] = x[i];
        for (int j = 0; j < z; ++j)
          if (mask >> j & 1) p.coords[nz[j]] = -p.coords[nz[j]];
        out.push_back(p);
      }
    });
  });
  SolutionSet s;
  s.n = n;
  s.dim = dim;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  s.points.reserve(total);
  for (auto& p : parts) s.points.insert(s.points.end(), p.begin(), p.end());
  std::sort(s.points.begin(), s.points.end());
  return s;
}

std::uint64_t count_solutions(std::uint64_t n, int dim, const EnumerationLimits& limits) {
  check_dim(dim);
  check_budget(n, dim, limits);
  const Blocks blocks = make_blocks(n);
  std::vector<u64> partial(blocks.count, 0);
  parallel_blocks(blocks.count, [&](std::size_t b) {
    const u64 lo = b * blocks.width;
    const u64 hi = std::min(blocks.top, lo + blocks.width - 1);
    u64 c = 0;
    visit_nonnegative(n, dim, lo, hi, [&](const std::array<i64, 4>& x) {
      c += u64{1} << nonzero_count(x, dim);
    });
    partial[b] = c;
  });
  return std::accumulate(partial.begin(), partial.end(), u64{0});
}

SolutionSet filter_primitive(const SolutionSet& s) {
  SolutionSet out;
  out.n = s.n;
  out.dim = s.dim;
  for (const auto& p : s.points) {
    u64 g = 0;
    for (int i = 0; i < s.dim; ++i)
      g = numtheory::gcd(g, static_cast<u64>(p.coords[i] < 0 ? -p.coords[i] : p.coords[i]));
    if (g == 1) out.points.push_back(p);
  }
  return out;
}

UnitPointSet project_to_sphere(const SolutionSet& s) {
  if (s.empty()) throw EmptySetError("cannot project an empty solution set");
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.n));
  std::vector<double> coords;
  coords.reserve(s.size() * static_cast<std::size_t>(s.dim));
  for (const auto& p : s.points)
    for (int i = 0; i < s.dim; ++i) coords.push_back(static_cast<double>(p.coords[i]) * scale);
  return UnitPointSet(s.dim - 1, std::move(coords), Provenance::arithmetic(s.n));
}

std::uint64_t PairCorrelationTable::at(std::int64_t t) const {
  const auto it = entries.find(t);
  return it == entries.end() ? 0 : it->second;
}

std::uint64_t PairCorrelationTable::total() const {
  u64 sum = 0;
  for (const auto& [t, c] : entries) sum += c;
  return sum;
}

PairCorrelationTable pair_correlation(const SolutionSet& s) {
  PairCorrelationTable table;
  table.n = s.n;
  // Dot products lie in [-n, n]; a dense histogram is fine at desk scale and
  // keeps the inner loop branch-free.
  const std::size_t N = s.size();
  if (N == 0) return table;
  if (s.n <= 50'000'000ULL) {
    std::vector<u64> hist(2 * s.n + 1, 0);
    const auto offset = static_cast<i64>(s.n);
    for (std::size_t i = 0; i < N; ++i) {
      const auto& x = s.points[i].coords;
      for (std::size_t j = 0; j < N; ++j) {
        const auto& y = s.points[j].coords;
        const i64 t = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
        ++hist[static_cast<std::size_t>(t + offset)];
      }
    }
    for (std::size_t k = 0; k < hist.size(); ++k)
      if (hist[k] != 0) table.entries.emplace(static_cast<i64>(k) - offset, hist[k]);
  } else {
    std::unordered_map<i64, u64> hist;
    for (const auto& x : s.points)
      for (const auto& y : s.points) ++hist[static_cast<i64>(dot(x, y))];
    for (const auto& [t, c] : hist) table.entries.emplace(t, c);
  }
  return table;
}

std::uint64_t ripley_exact(const SolutionSet& s, SquaredRadius r2) {
  if (r2.den == 0) throw DomainError("ripley_exact: zero denominator");
  const std::size_t N = s.size();
  if (N < 2 || r2.num == 0) return 0;
  using u128 = unsigned __int128;
  const u128 bound = static_cast<u128>(r2.num) * s.n;  // den * |x-y|^2 < bound
  // Pairs within the radius differ by less than `side` in every coordinate,
  // so only adjacent cells need to be compared.
  const u128 need = (bound + r2.den - 1) / r2.den;  // ceil(num * n / den)

  // Tiny radii: |x - y|^2 <= need - 1 leaves only a handful of difference
  // vectors h, each counted by binary search over the sorted points.
  if (need <= 5) {
    const auto max_d = static_cast<i64>(need) - 1;
    std::vector<LatticePoint> shifts;
    LatticePoint h;
    const std::function<void(int, i64)> collect = [&](int axis, i64 used) {
      if (axis == s.dim) {
        if (used > 0) shifts.push_back(h);
        return;
      }
      for (i64 v = -2; v <= 2; ++v) {
        if (used + v * v > max_d) continue;
        h.coords[axis] = v;
        collect(axis + 1, used + v * v);
      }
      h.coords[axis] = 0;
    };
    collect(0, 0);
    if (shifts.size() <= 64) {
      u64 count = 0;
      for (const auto& d : shifts)
        for (const auto& y : s.points)
          if (std::binary_search(s.points.begin(), s.points.end(), y + d)) ++count;
      return count;
    }
  }

  u64 side = numtheory::isqrt(static_cast<u64>(std::min<u128>(need, ~u64{0} >> 2)));
  if (static_cast<u128>(side) * side < need) ++side;
  side = std::max<u64>(side, 1);
  const auto cell_of = [&](const LatticePoint& p) {
    std::array<i64, 4> c{};
    for (int i = 0; i < s.dim; ++i) {
      const i64 v = p.coords[i];
      const auto sd = static_cast<i64>(side);
      c[i] = v >= 0 ? v / sd : -((-v + sd - 1) / sd);
    }
    return c;
  };
  struct CellHash {
    std::size_t operator()(const std::array<i64, 4>& c) const {
      u64 h = 0x9e3779b97f4a7c15ULL;
      for (i64 v : c) h = (h ^ static_cast<u64>(v)) * 0x100000001b3ULL;
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::array<i64, 4>, std::vector<std::uint32_t>, CellHash> cells;
  cells.reserve(N);
  for (std::size_t i = 0; i < N; ++i)
    cells[cell_of(s.points[i])].push_back(static_cast<std::uint32_t>(i));

  int offsets_per_axis = 3;
  int num_offsets = 1;
  for (int i = 0; i < s.dim; ++i) num_offsets *= offsets_per_axis;

  u64 count = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto& x = s.points[i];
    const auto base = cell_of(x);
    for (int o = 0; o < num_offsets; ++o) {
      auto key = base;
      int rem = o;
      for (int a = 0; a < s.dim; ++a) {
        key[a] += rem % 3 - 1;
        rem /= 3;
      }
      const auto it = cells.find(key);
      if (it == cells.end()) continue;
      for (const std::uint32_t j : it->second) {
        if (j == i) continue;
        const u128 d2 = static_cast<u128>(norm_squared(x - s.points[j]));
        if (d2 * r2.den < bound) ++count;
      }
    }
  }
  return count;
}

std::uint64_t ripley_from_table(const PairCorrelationTable& table, SquaredRadius r2) {
  if (r2.den == 0) throw DomainError("ripley_from_table: zero denominator");
  using i128 = __int128;
  const auto n = static_cast<i128>(table.n);
  u64 count = 0;
  for (const auto& [t, c] : table.entries) {
    if (t > static_cast<i64>(table.n) - 1) continue;  // x = y
    if (static_cast<i128>(r2.den) * (2 * n - 2 * static_cast<i128>(t)) <
        static_cast<i128>(r2.num) * n)
      count += c;
  }
  return count;
}

namespace {

void check_shift(const SolutionSet& s, const LatticePoint& h) {
  if (is_zero(h)) throw DomainError("shift vector must be nonzero");
  for (int i = s.dim; i < 4; ++i)
    if (h.coords[i] != 0) throw DomainError("shift vector has more coordinates than the set");
}

}  // namespace

std::uint64_t shifted_count(const SolutionSet& s, const LatticePoint& h) {
  check_shift(s, h);
  // x - y = h forces |h|^2 <= 4n.
  if (norm_squared(h) > 4 * static_cast<__int128>(s.n)) return 0;
  // Points are sorted, so membership of y + h is a binary search.
  u64 count = 0;
  for (const auto& y : s.points)
    if (std::binary_search(s.points.begin(), s.points.end(), y + h)) ++count;
  return count;
}

std::uint64_t double_shifted_count(const SolutionSet& s, const LatticePoint& h,
                                   const LatticePoint& k) {
  const u64 kh = shifted_count(s, h);
  const u64 kk = shifted_count(s, k);
  return kh * kk;
}

std::uint64_t double_shifted_count_direct(const SolutionSet& s, const LatticePoint& h,
                                          const LatticePoint& k) {
  check_shift(s, h);
  check_shift(s, k);
  if (s.size() > 200)
    throw BudgetExceeded("double_shifted_count_direct is limited to N <= 200");
  std::vector<std::pair<std::size_t, std::size_t>> with_h;
  std::vector<std::pair<std::size_t, std::size_t>> with_k;
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = 0; y < s.size(); ++y) {
      const LatticePoint d = s.points[x] - s.points[y];
      if (d == h) with_h.emplace_back(x, y);
      if (d == k) with_k.emplace_back(x, y);
    }
  }
  u64 count = 0;
  for ([[maybe_unused]] const auto& xy : with_h)
    for ([[maybe_unused]] const auto& zw : with_k) ++count;
  return count;
}

bool three_square_decomposition(std::uint64_t m, std::array<std::int64_t, 3>& out) {
  for (u64 x1 = numtheory::isqrt(m);; --x1) {
    const u64 r1 = m - x1 * x1;
    // x2 <= x1 and x2^2 >= r1 / 2 keep the triple sorted.
    for (u64 x2 = std::min(x1, numtheory::isqrt(r1));; --x2) {
      const u64 r2 = r1 - x2 * x2;
      if (r2 > x2 * x2) break;
      if (numtheory::is_perfect_square(r2)) {
        out = {static_cast<i64>(x1), static_cast<i64>(x2),
               static_cast<i64>(numtheory::isqrt(r2))};
        return true;
      }
      if (x2 == 0) break;
    }
    if (3 * x1 * x1 < m || x1 == 0) break;
  }
  return false;
}

ClosePair close_pair_dim4(std::uint64_t n) {
  if (n < 2 || n % 2 == 0) throw DomainError("close_pair_dim4 requires odd n >= 2");
  std::string obstruction;
  for (int a = 1; a <= 2; ++a) {
    const u64 a2 = static_cast<u64>(a) * a;
    if (n < a2) continue;
    const u64 m = n - a2;
    std::array<i64, 3> x{};
    if (m == 0 || !numtheory::three_squares_representable(m)) {
      const auto split = m == 0 ? numtheory::FourPowerSplit{} : numtheory::strip_four_powers(m);
      obstruction += " n - " + std::to_string(a2) + " = 4^" + std::to_string(split.a) + " * " +
                     std::to_string(split.m) + (m == 0 ? " (zero)" : " (7 mod 8)") + ";";
      continue;
    }
    if (!three_square_decomposition(m, x)) continue;
    ClosePair out;
    out.a = a;
    out.first.coords = {a, x[0], x[1], x[2]};
    out.second.coords = {-a, x[0], x[1], x[2]};
    out.distance = 2.0 * a / std::sqrt(static_cast<double>(n));
    return out;
  }
  throw RepresentationError("no close pair for n = " + std::to_string(n) + ":" + obstruction);
}

}  // namespace spherepts::lattice
