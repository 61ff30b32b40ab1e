#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spherepts/point_set.hpp"

namespace spherepts::baselines {

// N independent uniform points on S^k (k = 2 or 3): normalized vectors of
// independent standard normals from Rng(seed).
UnitPointSet sample_uniform_sphere(std::size_t N, int k, std::uint64_t seed);

struct HexPatchOptions {
  std::size_t n_target = 1000;  // density: n_target points per full sphere
  double cap_fraction = 0.05;   // share of the sphere covered by the patch
};

// Triangular-lattice patch with spacing s, s^2 = 8 pi / (sqrt(3) n_target),
// truncated to the disc of radius 2 sqrt(cap_fraction) and carried to S^2 by
// the inverse Lambert azimuthal equal-area map centred at (0, 0, 1). That
// map sends planar distance rho from the centre to chord distance rho from
// the pole, so the disc lands exactly on a cap of the requested fraction.
UnitPointSet hex_patch(const HexPatchOptions& options);

// Planar triangular-lattice points before mapping, in the same order as the
// points of hex_patch(options).
std::vector<std::array<double, 2>> hex_patch_planar(const HexPatchOptions& options);

// Named statistics available to monte_carlo.
enum class Statistic {
  energy_deviation,  // E - N (N - 1)
  ripley,            // K_r at params["r"]
  min_spacing,
  covering,          // estimate at params["mesh"]
  spacing_ks,        // KS distance of the spacing measure to 1 - e^{-x}
  cap_discrepancy,   // params["caps"] caps
};

std::string to_string(Statistic s);
std::optional<Statistic> parse_statistic(const std::string& name);

struct MonteCarloSummary {
  std::string statistic;
  std::map<std::string, double> params;
  std::size_t N = 0;
  int k = 2;
  std::uint64_t seed = 0;
  std::size_t runs = 0;
  std::vector<double> values;
  double mean = 0.0;
  std::optional<double> stddev;  // sample standard deviation; absent for one run

  double standard_error() const;
};

// Evaluates `stat` on `runs` independent uniform samples. Run i draws its
// points with seed split_seed(seed, i); values are stored by run index.
MonteCarloSummary monte_carlo(Statistic stat, const std::map<std::string, double>& params,
                              std::size_t N, int k, std::size_t runs, std::uint64_t seed);

// Evaluates an arbitrary statistic the same way.
MonteCarloSummary monte_carlo(const std::string& name,
                              const std::function<double(const UnitPointSet&)>& statistic,
                              std::size_t N, int k, std::size_t runs, std::uint64_t seed);

// Mean and sample standard deviation of `values`.
void summarize(MonteCarloSummary& s);

}  // namespace spherepts::baselines
