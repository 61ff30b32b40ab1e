#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spherepts/lattice.hpp"
#include "spherepts/point_set.hpp"

namespace spherepts::stats {

// All distances in this module are Euclidean chord distances |P - Q|.

// Normalized surface measure of the cap {x : |x - x0| < r} on S^k, k = 2 or 3.
// S^2: r^2 / 4. S^3: (theta - sin(theta) cos(theta)) / pi with
// theta = arccos(1 - r^2 / 2).
double cap_fraction(int k, double r);

struct RipleyProfile {
  std::vector<double> thresholds;     // increasing chord radii in (0, 2]
  std::vector<std::uint64_t> counts;  // ordered pairs i != j with |P_i - P_j| < r
  // counts / (N^2 r^2 / 4) on S^2, counts / (N (N - 1) V(r)) on S^3.
  std::vector<double> normalized;
};

// Throws DomainError for unsorted thresholds or N < 2.
RipleyProfile ripley(const UnitPointSet& points, std::span<const double> thresholds);

// Ripley counts for an arithmetic set with exact integer threshold decisions;
// each r^2 is given as a fraction.
RipleyProfile ripley(const lattice::SolutionSet& set,
                     std::span<const lattice::SquaredRadius> thresholds);

// d_j = min over i != j of |P_i - P_j|.
std::vector<double> nn_distances(const UnitPointSet& points);

// O(N^2) reference for nn_distances.
std::vector<double> nn_distances_bruteforce(const UnitPointSet& points);

struct Histogram {
  std::vector<double> edges;   // bins + 1 edges; the overflow bin is [edges.back(), inf)
  std::vector<double> masses;  // bins + 1 masses, summing to 1
};

struct HistogramSpec {
  int bins = 50;
  double lo = 0.0;
  double hi = 5.0;
};

Histogram make_histogram(std::span<const double> values, const HistogramSpec& spec = {});

struct SpacingMeasure {
  std::size_t N = 0;
  std::vector<double> raw;  // (N / 4) d_j^2 per point
  Histogram histogram;

  double mean() const;
};

// Raw values (N / 4) d_j^2. A single point yields an empty measure.
SpacingMeasure spacing_measure(const UnitPointSet& points, const HistogramSpec& spec = {});

// Kolmogorov-Smirnov distance between the empirical law of `values` and the
// unit exponential law 1 - e^{-x}.
double ks_distance_exponential(std::span<const double> values);

// Sum over ordered pairs i != j of 1 / |P_i - P_j|, each unordered pair
// counted twice. Fixed row blocks with Neumaier summation inside and across
// blocks, so a configuration always yields the same bits.
// Throws CoincidentPoints if two points coincide.
double energy(const UnitPointSet& points);

// Minimum pairwise chord distance. Coincident points give 0.
double min_spacing(const UnitPointSet& points);

struct CoveringEstimate {
  double estimate = 0.0;     // attained distance, a lower bound for M
  double error_bound = 0.0;  // M <= estimate + error_bound
  std::size_t probes = 0;
};

struct CoveringOptions {
  double mesh = 1e-3;
  std::size_t max_probes = 60'000'000;
  // Number of best probes refined by local ascent.
  std::size_t refine = 32;
};

// Covering radius by a probe grid whose own covering radius is at most
// `mesh`, followed by local ascent from the best probes. Throws
// BudgetExceeded when the grid would exceed max_probes.
CoveringEstimate covering_radius(const UnitPointSet& points, const CoveringOptions& options = {});

// Number of probes the grid for (sphere_dim, mesh) would use.
std::size_t covering_probe_count(int sphere_dim, double mesh);

// Dimension-4 arithmetic sets: half the largest gap between consecutive
// realized distances sqrt(2 - 2a / sqrt(n)) to the pole (1, 0, 0, 0), over
// the realized first coordinates a. A lower bound for the covering radius.
double pole_annulus_gap(const UnitPointSet& points);

// Max over `num_caps` random caps (uniform center, chord radius uniform in
// (0, 2]) of |fraction of points inside - cap_fraction|.
double cap_discrepancy(const UnitPointSet& points, std::size_t num_caps, std::uint64_t seed);

struct StatsOptions {
  bool energy = false;
  bool ripley = false;
  bool spacing = false;
  bool min_spacing = false;
  bool covering = false;
  bool discrepancy = false;
  std::vector<double> thresholds;
  HistogramSpec histogram;
  CoveringOptions covering_options;
  std::size_t num_caps = 10'000;
  std::uint64_t seed = 1;
};

struct StatsReport {
  std::size_t N = 0;
  std::optional<double> energy;
  std::optional<double> energy_deviation;  // E - N (N - 1)
  std::optional<RipleyProfile> ripley;
  std::optional<SpacingMeasure> spacing;
  std::optional<double> min_spacing;
  std::optional<CoveringEstimate> covering;
  std::optional<double> discrepancy;
};

StatsReport compute_report(const UnitPointSet& points, const StatsOptions& options);

}  // namespace spherepts::stats
