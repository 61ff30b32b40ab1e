#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "spherepts/lattice.hpp"

namespace spherepts {

// Defaults for seeds, binning, probe meshes, budgets and the calibration
// bands used by the experiment reports. Values come from the built-in table
// below, optionally overridden by a `key = value` file (see
// config/defaults.conf for the keys and their meaning).
struct Config {
  std::uint64_t seed = 20100501;
  std::size_t runs = 20;

  int histogram_bins = 50;
  double histogram_hi = 5.0;

  double mesh_s2 = 1e-3;
  double mesh_s3 = 5e-2;
  std::size_t max_probes = 60'000'000;
  std::size_t num_caps = 10'000;

  lattice::EnumerationLimits limits;
  // energy/ripley O(N^2) kernels are refused above this N without --force.
  std::size_t pair_budget_n = 20'000;

  double ensemble_delta = 0.2;
  double ensemble_median_lo = 0.5;
  double ensemble_median_hi = 2.0;
  double ensemble_zscore_max = 1.0;

  double spacing_ks_max = 0.02;
  double fig2_ks_max = 0.05;
  std::size_t fig1_window_points = 120;
  std::uint64_t fig1_n = 1299709;
  std::uint64_t fig2_n = 179424691;

  // Parses `path`, overriding the fields it names. Unknown keys and
  // malformed lines throw DomainError with the line number.
  void load(const std::string& path);
  void set(const std::string& key, const std::string& value);

  // The current values as key/value pairs, in the same format load() reads.
  std::map<std::string, std::string> entries() const;
};

}  // namespace spherepts
