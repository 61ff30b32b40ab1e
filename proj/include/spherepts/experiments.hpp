#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spherepts/baselines.hpp"
#include "spherepts/config.hpp"
#include "spherepts/lattice.hpp"
#include "spherepts/sphere_stats.hpp"

namespace spherepts::experiments {

// ---------------------------------------------------------------- enumerate

struct EnumerateSummary {
  std::uint64_t n = 0;
  int dim = 3;
  std::uint64_t N = 0;
  std::uint64_t residue_mod8 = 0;
  bool squarefree = false;
};

// Enumerates and, when out_path is nonempty, writes the point-set CSV.
EnumerateSummary run_enumerate(std::uint64_t n, int dim, const std::string& out_path,
                               const Config& config);

// -------------------------------------------------------------------- table1

struct Table1Row {
  std::uint64_t n = 0;
  std::size_t N = 0;
  double integer_deviation = 0.0;  // E - N (N - 1) for the projected lattice points
  baselines::MonteCarloSummary random;  // same statistic on uniform points, same N
};

// Rows for n = 104773, 104761, 1299763 (or `ns` if given).
std::vector<Table1Row> run_table1(const Config& config, const std::vector<std::uint64_t>& ns = {});

std::string format_table1(const std::vector<Table1Row>& rows);
std::string table1_csv(const std::vector<Table1Row>& rows);

// ------------------------------------------------------------------ ensemble

struct EnsembleOptions {
  std::uint64_t r_min = 1;
  std::uint64_t r_max = 1000;
  double delta = 0.2;             // r = n^{delta - 1/2}
  bool squarefree_only = false;
  std::vector<int> exclude_residues;  // n mod 8 classes to skip
  bool include_empty = false;         // also emit rows with N = 0
  std::vector<lattice::LatticePoint> shifts;  // h for the sums of K_h
};

struct EnsembleRow {
  std::uint64_t n = 0;
  std::uint64_t N = 0;
  bool squarefree = false;
  int residue_mod8 = 0;
  double r = 0.0;
  std::uint64_t ripley = 0;   // K_r
  double expected = 0.0;      // N^2 r^2 / 4
  double normalized = 0.0;    // K_r / expected
  double deviation = 0.0;     // K_r - expected
  double min_spacing_times_N = 0.0;
};

struct EnsembleSummary {
  std::size_t count = 0;
  double mean_deviation = 0.0;
  double variance_deviation = 0.0;  // sample variance
  double median_normalized = 0.0;
  double zscore = 0.0;  // mean_deviation / sqrt(variance_deviation)
};

struct ShiftSum {
  lattice::LatticePoint h;
  std::uint64_t total = 0;  // sum of K_h(E(n)) over every n in [r_min, r_max]
};

struct EnsembleResult {
  std::vector<EnsembleRow> rows;  // sorted by n
  EnsembleSummary summary;
  std::vector<ShiftSum> shift_sums;
};

EnsembleResult run_ensemble(const EnsembleOptions& options, const Config& config);

// Recomputes the summary from rows.
EnsembleSummary summarize_rows(const std::vector<EnsembleRow>& rows);

std::string ensemble_rows_csv(const std::vector<EnsembleRow>& rows);

// ------------------------------------------------------------------- scaling

enum class ScalingTarget {
  min_spacing_S2,
  min_spacing_S3,
  covering_S3,
  covering_arith_S3,
  min_spacing_arith_S3,
};

std::string to_string(ScalingTarget t);
std::optional<ScalingTarget> parse_scaling_target(const std::string& s);

struct ScalingOptions {
  // Random targets: N values lo, lo * factor, ... <= hi.
  // Arithmetic targets: `count` odd n values spread log-uniformly in [lo, hi].
  double lo = 256;
  double hi = 16384;
  double factor = 2;
  std::size_t count = 20;
  std::size_t seeds = 20;
  double mesh = 0.0;  // covering targets; 0 picks a mesh from N
};

// Default grid for each target.
ScalingOptions default_scaling(ScalingTarget t);

struct ScalingPoint {
  std::uint64_t n = 0;  // arithmetic targets only
  std::size_t N = 0;
  std::uint64_t seed = 0;  // random targets only
  double value = 0.0;
};

struct ScalingResult {
  ScalingTarget target;
  std::vector<ScalingPoint> points;
  double slope = 0.0;  // least squares of log(value) on log(N)
  double intercept = 0.0;
};

ScalingResult run_scaling(ScalingTarget target, const ScalingOptions& options, const Config& config);

// Least squares fit y = intercept + slope * x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::string scaling_csv(const ScalingResult& result);

// ------------------------------------------------------------------ fig data

struct PlanarPatch {
  std::string label;
  std::vector<std::array<double, 2>> xy;  // Lambert coordinates around the window centre
};

struct Fig1Data {
  std::uint64_t n = 0;
  std::size_t N = 0;
  double window_radius = 0.0;  // chord radius of the window cap
  PlanarPatch arithmetic, random, rigid;
};

// Window of about config.fig1_window_points points around a fixed centre in
// the projected lattice points of config.fig1_n, a uniform sample of the same
// size and a hexagonal patch of the same density.
Fig1Data run_fig1(const Config& config);

struct Fig2Data {
  std::uint64_t n = 0;
  std::size_t N = 0;
  stats::SpacingMeasure spacing;
  double ks = 0.0;
  std::vector<std::array<double, 2>> curve;  // (s, e^{-s})
};

Fig2Data run_fig2(const Config& config);

std::string patch_csv(const PlanarPatch& patch);
std::string curve_csv(const std::vector<std::array<double, 2>>& curve);

// Lambert azimuthal equal-area coordinates of unit vector p in the tangent
// frame at `center` (S^2 only).
std::array<double, 2> lambert(std::span<const double> p, const std::array<double, 3>& center);

}  // namespace spherepts::experiments
