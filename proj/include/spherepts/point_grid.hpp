#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "spherepts/point_set.hpp"

namespace spherepts {

// Uniform cubic cell hash over the ambient cube [-1, 1]^{k+1} holding the
// points of a UnitPointSet. Answers exact nearest-neighbour and fixed-radius
// queries; distances are computed with squared_distance() exactly as a brute
// force scan would, so results match it bit for bit.
class PointGrid {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  PointGrid(const UnitPointSet& points, double cell_side);

  // Cell side giving about `per_cell` points per occupied cell for N points
  // spread over S^k.
  static double occupancy_side(std::size_t N, int sphere_dim, double per_cell = 2.0);

  struct Hit {
    double squared_distance = std::numeric_limits<double>::infinity();
    std::size_t index = npos;
  };

  // Nearest point to q other than `exclude`. Expands rings of cells until no
  // unvisited cell can hold anything closer.
  Hit nearest(std::span<const double> q, std::size_t exclude = npos) const;

  // Calls fn(j, squared_distance) for every point j != exclude in the cells
  // adjacent to q's cell. Complete for radii up to the cell side.
  template <typename Fn>
  void for_each_near(std::span<const double> q, std::size_t exclude, Fn&& fn) const {
    std::array<std::int64_t, 4> base{};
    cell_coords(q, base);
    int total = 1;
    for (int a = 0; a < dim_; ++a) total *= 3;
    for (int o = 0; o < total; ++o) {
      std::array<std::int64_t, 4> c = base;
      int rem = o;
      bool inside = true;
      for (int a = 0; a < dim_; ++a) {
        c[a] += rem % 3 - 1;
        rem /= 3;
        inside = inside && c[a] >= 0 && c[a] < cells_per_axis_;
      }
      if (!inside) continue;
      visit_cell(c, q, exclude, fn);
    }
  }

  double cell_side() const { return side_; }

 private:
  void cell_coords(std::span<const double> q, std::array<std::int64_t, 4>& out) const;
  std::uint64_t key(const std::array<std::int64_t, 4>& c) const;

  template <typename Fn>
  void visit_cell(const std::array<std::int64_t, 4>& c, std::span<const double> q,
                  std::size_t exclude, Fn&& fn) const {
    const auto it = slots_.find(key(c));
    if (it == slots_.end()) return;
    const auto [begin, end] = it->second;
    for (std::uint32_t s = begin; s < end; ++s) {
      const std::size_t j = order_[s];
      if (j == exclude) continue;
      fn(j, squared_distance(q, points_->point(j)));
    }
  }

  const UnitPointSet* points_;
  int dim_;
  double side_;
  std::int64_t cells_per_axis_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> slots_;
};

}  // namespace spherepts
