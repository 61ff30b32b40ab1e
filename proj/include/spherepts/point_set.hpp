#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spherepts {

// Where a unit point set came from.
struct Provenance {
  enum class Kind { arithmetic, random, rigid };

  Kind kind = Kind::random;
  std::uint64_t n = 0;     // arithmetic: the integer n
  std::uint64_t seed = 0;  // random: generator seed
  std::string params;      // rigid: human-readable patch parameters

  static Provenance arithmetic(std::uint64_t n) { return {Kind::arithmetic, n, 0, {}}; }
  static Provenance random(std::uint64_t seed) { return {Kind::random, 0, seed, {}}; }
  static Provenance rigid(std::string params) {
    return {Kind::rigid, 0, 0, std::move(params)};
  }
};

std::string to_string(Provenance::Kind kind);

// Unit vectors on S^k, stored row-major with stride k + 1.
class UnitPointSet {
 public:
  UnitPointSet(int sphere_dim, std::vector<double> coords, Provenance provenance);

  int sphere_dim() const { return sphere_dim_; }
  int ambient_dim() const { return sphere_dim_ + 1; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(ambient_dim()); }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    const auto d = static_cast<std::size_t>(ambient_dim());
    return {coords_.data() + i * d, d};
  }
  std::span<const double> coords() const { return coords_; }
  const Provenance& provenance() const { return provenance_; }

  // Largest | |P|^2 - 1 | over the set.
  double max_norm_error() const;

 private:
  int sphere_dim_;
  std::vector<double> coords_;
  Provenance provenance_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace spherepts
