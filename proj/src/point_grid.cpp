#include "spherepts/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spherepts/errors.hpp"

namespace spherepts {

PointGrid::PointGrid(const UnitPointSet& points, double cell_side)
    : points_(&points), dim_(points.ambient_dim()), side_(cell_side) {
  if (!(cell_side > 0.0)) throw DomainError("PointGrid: cell side must be positive");
  side_ = std::min(side_, 2.0);
  cells_per_axis_ = static_cast<std::int64_t>(std::floor(2.0 / side_)) + 1;
  if (std::pow(static_cast<double>(cells_per_axis_), dim_) > 1.8e19)
    throw BudgetExceeded("PointGrid: too many cells for a 64-bit key");

  const std::size_t N = points.size();
  std::vector<std::uint64_t> keys(N);
  std::array<std::int64_t, 4> c{};
  for (std::size_t i = 0; i < N; ++i) {
    cell_coords(points.point(i), c);
    keys[i] = key(c);
  }
  order_.resize(N);
  for (std::size_t i = 0; i < N; ++i) order_[i] = static_cast<std::uint32_t>(i);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  slots_.reserve(N);
  std::size_t s = 0;
  while (s < N) {
    std::size_t e = s;
    while (e < N && keys[order_[e]] == keys[order_[s]]) ++e;
    slots_.emplace(keys[order_[s]],
                   std::make_pair(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(e)));
    s = e;
  }
}

double PointGrid::occupancy_side(std::size_t N, int sphere_dim, double per_cell) {
  // Surface measure of S^1, S^2, S^3.
  constexpr double kArea[] = {2.0 * std::numbers::pi, 4.0 * std::numbers::pi,
                              2.0 * std::numbers::pi * std::numbers::pi};
  if (sphere_dim < 1 || sphere_dim > 3) throw DomainError("sphere dimension must be 1, 2 or 3");
  if (N == 0) return 2.0;
  const double area_per_cell = per_cell * kArea[sphere_dim - 1] / static_cast<double>(N);
  return std::min(2.0, std::pow(area_per_cell, 1.0 / sphere_dim));
}

void PointGrid::cell_coords(std::span<const double> q, std::array<std::int64_t, 4>& out) const {
  for (int a = 0; a < dim_; ++a) {
    auto c = static_cast<std::int64_t>(std::floor((q[a] + 1.0) / side_));
    out[a] = std::clamp<std::int64_t>(c, 0, cells_per_axis_ - 1);
  }
}

std::uint64_t PointGrid::key(const std::array<std::int64_t, 4>& c) const {
  std::uint64_t k = 0;
  for (int a = 0; a < dim_; ++a)
    k = k * static_cast<std::uint64_t>(cells_per_axis_) + static_cast<std::uint64_t>(c[a]);
  return k;
}

PointGrid::Hit PointGrid::nearest(std::span<const double> q, std::size_t exclude) const {
  Hit best;
  std::array<std::int64_t, 4> base{};
  cell_coords(q, base);
  auto consider = [&](std::size_t j, double d2) {
    if (d2 < best.squared_distance || (d2 == best.squared_distance && j < best.index)) {
      best.squared_distance = d2;
      best.index = j;
    }
  };
  for (std::int64_t ring = 0; ring <= cells_per_axis_; ++ring) {
    // Visit every cell whose Chebyshev offset from `base` is exactly `ring`.
    const std::int64_t width = 2 * ring + 1;
    std::int64_t total = 1;
    for (int a = 0; a < dim_; ++a) total *= width;
    for (std::int64_t o = 0; o < total; ++o) {
      std::array<std::int64_t, 4> c = base;
      std::int64_t rem = o;
      bool on_shell = false;
      bool inside = true;
      for (int a = 0; a < dim_; ++a) {
        const std::int64_t off = rem % width - ring;
        rem /= width;
        on_shell = on_shell || off == ring || off == -ring;
        c[a] += off;
        inside = inside && c[a] >= 0 && c[a] < cells_per_axis_;
      }
      if (!on_shell || !inside) continue;
      visit_cell(c, q, exclude, consider);
    }
    // Anything outside rings 0..ring is farther than ring * side.
    const double reach = static_cast<double>(ring) * side_;
    if (best.squared_distance < reach * reach * (1.0 - 1e-12)) break;
  }
  return best;
}

}  // namespace spherepts
