#include "spherepts/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "spherepts/errors.hpp"
#include "spherepts/io.hpp"
#include "spherepts/numtheory.hpp"
#include "spherepts/parallel.hpp"
#include "spherepts/random.hpp"

namespace spherepts::experiments {

namespace {

std::string num(double v, int precision = 17) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

EnumerateSummary run_enumerate(std::uint64_t n, int dim, const std::string& out_path,
                               const Config& config) {
  const auto set = lattice::enumerate_solutions(n, dim, config.limits);
  if (!out_path.empty()) io::write_point_set(out_path, set);
  return {n, dim, set.size(), n % 8, numtheory::is_squarefree(n)};
}

// -------------------------------------------------------------------- table1

std::vector<Table1Row> run_table1(const Config& config, const std::vector<std::uint64_t>& ns) {
  const std::vector<std::uint64_t> values =
      ns.empty() ? std::vector<std::uint64_t>{104773, 104761, 1299763} : ns;
  std::vector<Table1Row> rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Table1Row row;
    row.n = values[i];
    const auto set = lattice::enumerate_solutions(row.n, 3, config.limits);
    const auto points = lattice::project_to_sphere(set);
    row.N = points.size();
    const double N = static_cast<double>(row.N);
    row.integer_deviation = stats::energy(points) - N * (N - 1.0);
    row.random = baselines::monte_carlo(baselines::Statistic::energy_deviation, {}, row.N, 2,
                                        config.runs, split_seed(config.seed, row.n));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "E - N(N-1)\n";
  os << std::setw(8) << "N" << std::setw(12) << "n" << std::setw(16) << "integer" << std::setw(16)
     << "random" << std::setw(14) << "random sd" << '\n';
  os << std::fixed << std::setprecision(1);
  for (const auto& r : rows) {
    os << std::setw(8) << r.N << std::setw(12) << r.n << std::setw(16) << r.integer_deviation
       << std::setw(16) << r.random.mean << std::setw(14) << r.random.stddev.value_or(0.0) << '\n';
  }
  os << "random column: mean of " << (rows.empty() ? 0 : rows.front().random.runs)
     << " runs of uniform points\n";
  return os.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "n,N,integer,random_mean,random_std,runs\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.N << ',' << num(r.integer_deviation) << ',' << num(r.random.mean) << ','
       << (r.random.stddev ? num(*r.random.stddev) : std::string()) << ',' << r.random.runs
       << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------ ensemble

EnsembleSummary summarize_rows(const std::vector<EnsembleRow>& rows) {
  EnsembleSummary s;
  s.count = rows.size();
  if (rows.empty()) return s;
  const double n = static_cast<double>(rows.size());
  double sum = 0.0;
  for (const auto& r : rows) sum += r.deviation;
  s.mean_deviation = sum / n;
  if (rows.size() > 1) {
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.deviation - s.mean_deviation) * (r.deviation - s.mean_deviation);
    s.variance_deviation = ss / (n - 1.0);
  }
  std::vector<double> norm;
  for (const auto& r : rows) norm.push_back(r.normalized);
  std::sort(norm.begin(), norm.end());
  const std::size_t m = norm.size() / 2;
  s.median_normalized = norm.size() % 2 ? norm[m] : 0.5 * (norm[m - 1] + norm[m]);
  s.zscore = s.variance_deviation > 0.0 ? s.mean_deviation / std::sqrt(s.variance_deviation) : 0.0;
  return s;
}

EnsembleResult run_ensemble(const EnsembleOptions& options, const Config& config) {
  EnsembleResult result;
  for (const auto& h : options.shifts) result.shift_sums.push_back({h, 0});
  if (options.r_min > options.r_max) return result;
  if (options.r_max > config.limits.dim3)
    throw BudgetExceeded("ensemble: R_max exceeds the dimension-3 enumeration ceiling");
  const std::uint64_t lo = std::max<std::uint64_t>(1, options.r_min);
  const std::uint64_t count = options.r_max >= lo ? options.r_max - lo + 1 : 0;

  struct Slot {
    std::optional<EnsembleRow> row;
    std::vector<std::uint64_t> shift;
  };
  std::vector<Slot> slots(count);
  parallel_blocks(count, [&](std::size_t i) {
    const std::uint64_t n = lo + i;
    auto& slot = slots[i];
    const auto set = lattice::enumerate_solutions(n, 3, config.limits);
    for (const auto& h : options.shifts) slot.shift.push_back(lattice::shifted_count(set, h));

    const int residue = static_cast<int>(n % 8);
    if (set.empty() && !options.include_empty) return;
    if (std::find(options.exclude_residues.begin(), options.exclude_residues.end(), residue) !=
        options.exclude_residues.end())
      return;
    const bool sqf = numtheory::is_squarefree(n);
    if (options.squarefree_only && !sqf) return;

    EnsembleRow row;
    row.n = n;
    row.N = set.size();
    row.squarefree = sqf;
    row.residue_mod8 = residue;
    row.r = std::pow(static_cast<double>(n), options.delta - 0.5);
    const double N = static_cast<double>(row.N);
    row.expected = N * N * row.r * row.r / 4.0;
    if (row.N >= 2) {
      const auto points = lattice::project_to_sphere(set);
      const std::array<double, 1> t{std::min(row.r, 2.0)};
      row.ripley = stats::ripley(points, t).counts.front();
      row.min_spacing_times_N = stats::min_spacing(points) * N;
    }
    row.normalized = row.expected > 0.0 ? static_cast<double>(row.ripley) / row.expected : 0.0;
    row.deviation = static_cast<double>(row.ripley) - row.expected;
    slot.row = row;
  });
  for (const auto& slot : slots) {
    if (slot.row) result.rows.push_back(*slot.row);
    for (std::size_t k = 0; k < slot.shift.size(); ++k) result.shift_sums[k].total += slot.shift[k];
  }
  result.summary = summarize_rows(result.rows);
  return result;
}

std::string ensemble_rows_csv(const std::vector<EnsembleRow>& rows) {
  std::ostringstream os;
  os << "n,N,squarefree,n_mod_8,r,K_r,expected,normalized,deviation,m_times_N\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.N << ',' << (r.squarefree ? 1 : 0) << ',' << r.residue_mod8 << ','
       << num(r.r) << ',' << r.ripley << ',' << num(r.expected) << ',' << num(r.normalized) << ','
       << num(r.deviation) << ',' << num(r.min_spacing_times_N) << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------- scaling

std::string to_string(ScalingTarget t) {
  switch (t) {
    case ScalingTarget::min_spacing_S2:
      return "min_spacing_S2";
    case ScalingTarget::min_spacing_S3:
      return "min_spacing_S3";
    case ScalingTarget::covering_S3:
      return "covering_S3";
    case ScalingTarget::covering_arith_S3:
      return "covering_arith_S3";
    case ScalingTarget::min_spacing_arith_S3:
      return "min_spacing_arith_S3";
  }
  return "unknown";
}

std::optional<ScalingTarget> parse_scaling_target(const std::string& s) {
  for (auto t : {ScalingTarget::min_spacing_S2, ScalingTarget::min_spacing_S3,
                 ScalingTarget::covering_S3, ScalingTarget::covering_arith_S3,
                 ScalingTarget::min_spacing_arith_S3})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

ScalingOptions default_scaling(ScalingTarget t) {
  ScalingOptions o;
  switch (t) {
    case ScalingTarget::min_spacing_S2:
    case ScalingTarget::min_spacing_S3:
      o.lo = 256;
      o.hi = 16384;
      o.factor = 2;
      o.seeds = 20;
      break;
    case ScalingTarget::covering_S3:
      o.lo = 64;
      o.hi = 4096;
      o.factor = 2;
      o.seeds = 8;
      break;
    case ScalingTarget::covering_arith_S3:
      o.lo = 1e3;
      o.hi = 1e5;
      o.count = 30;
      break;
    case ScalingTarget::min_spacing_arith_S3:
      o.lo = 1e3;
      o.hi = 3e4;
      o.count = 20;
      break;
  }
  return o;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

namespace {

std::vector<std::uint64_t> odd_grid(const ScalingOptions& o) {
  std::set<std::uint64_t> values;
  const std::size_t count = std::max<std::size_t>(o.count, 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    auto n = static_cast<std::uint64_t>(std::llround(o.lo * std::pow(o.hi / o.lo, t)));
    values.insert(std::max<std::uint64_t>(3, n | 1));
  }
  return {values.begin(), values.end()};
}

std::vector<std::size_t> geometric_grid(const ScalingOptions& o) {
  if (!(o.factor > 1.0) || !(o.lo >= 2.0) || o.hi < o.lo)
    throw DomainError("scaling: random grids need lo >= 2, hi >= lo and factor > 1");
  std::vector<std::size_t> out;
  for (double v = o.lo; v <= o.hi * (1 + 1e-12); v *= o.factor)
    out.push_back(static_cast<std::size_t>(std::llround(v)));
  return out;
}

}  // namespace

ScalingResult run_scaling(ScalingTarget target, const ScalingOptions& options, const Config& config) {
  ScalingResult res;
  res.target = target;
  const std::uint64_t base_seed = split_seed(config.seed, static_cast<std::uint64_t>(target) + 100);

  if (target == ScalingTarget::covering_arith_S3 || target == ScalingTarget::min_spacing_arith_S3) {
    const auto ns = odd_grid(options);
    res.points.resize(ns.size());
    parallel_blocks(ns.size(), [&](std::size_t i) {
      const auto set = lattice::enumerate_solutions(ns[i], 4, config.limits);
      const auto points = lattice::project_to_sphere(set);
      ScalingPoint p;
      p.n = ns[i];
      p.N = points.size();
      p.value = target == ScalingTarget::covering_arith_S3 ? stats::pole_annulus_gap(points)
                                                           : stats::min_spacing(points);
      res.points[i] = p;
    });
  } else {
    const int k = target == ScalingTarget::min_spacing_S2 ? 2 : 3;
    if (options.seeds == 0) throw DomainError("scaling: seeds must be positive");
    const auto Ns = geometric_grid(options);
    res.points.resize(Ns.size() * options.seeds);
    parallel_blocks(res.points.size(), [&](std::size_t idx) {
      const std::size_t N = Ns[idx / options.seeds];
      const std::uint64_t seed = split_seed(split_seed(base_seed, N), idx % options.seeds);
      const auto points = baselines::sample_uniform_sphere(N, k, seed);
      ScalingPoint p;
      p.N = N;
      p.seed = seed;
      if (target == ScalingTarget::covering_S3) {
        stats::CoveringOptions co;
        co.mesh = options.mesh > 0.0 ? options.mesh
                                     : 0.5 * std::pow(static_cast<double>(N), -1.0 / 3.0);
        co.max_probes = config.max_probes;
        p.value = stats::covering_radius(points, co).estimate;
      } else {
        p.value = stats::min_spacing(points);
      }
      res.points[idx] = p;
    });
  }
  std::vector<double> x, y;
  for (const auto& p : res.points) {
    if (!(p.value > 0.0)) continue;
    x.push_back(std::log(static_cast<double>(p.N)));
    y.push_back(std::log(p.value));
  }
  std::tie(res.slope, res.intercept) = fit_line(x, y);
  return res;
}

std::string scaling_csv(const ScalingResult& r) {
  std::ostringstream os;
  os << "# target=" << to_string(r.target) << " slope=" << num(r.slope)
     << " intercept=" << num(r.intercept) << '\n';
  os << "n,N,seed,value\n";
  for (const auto& p : r.points)
    os << p.n << ',' << p.N << ',' << p.seed << ',' << num(p.value) << '\n';
  return os.str();
}

// ------------------------------------------------------------------ fig data

std::array<double, 2> lambert(std::span<const double> p, const std::array<double, 3>& c) {
  // Tangent frame (u, v, c).
  std::array<double, 3> u{};
  if (std::abs(c[2]) < 0.9)
    u = {-c[1], c[0], 0.0};
  else
    u = {0.0, -c[2], c[1]};
  const double nu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (double& x : u) x /= nu;
  const std::array<double, 3> v{c[1] * u[2] - c[2] * u[1], c[2] * u[0] - c[0] * u[2],
                                c[0] * u[1] - c[1] * u[0]};
  const double a = p[0] * u[0] + p[1] * u[1] + p[2] * u[2];
  const double b = p[0] * v[0] + p[1] * v[1] + p[2] * v[2];
  const double z = p[0] * c[0] + p[1] * c[1] + p[2] * c[2];
  const double f = std::sqrt(2.0 / (1.0 + z));
  return {a * f, b * f};
}

namespace {

PlanarPatch window(const UnitPointSet& points, const std::array<double, 3>& c, double radius,
                   std::string label) {
  PlanarPatch patch;
  patch.label = std::move(label);
  const std::span<const double> center(c.data(), 3);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (squared_distance(points.point(i), center) < radius * radius)
      patch.xy.push_back(lambert(points.point(i), c));
  return patch;
}

}  // namespace

Fig1Data run_fig1(const Config& config) {
  Fig1Data d;
  d.n = config.fig1_n;
  const auto set = lattice::enumerate_solutions(d.n, 3, config.limits);
  const auto arith = lattice::project_to_sphere(set);
  d.N = arith.size();
  const double fraction =
      std::min(1.0, static_cast<double>(config.fig1_window_points) / static_cast<double>(d.N));
  d.window_radius = 2.0 * std::sqrt(fraction);
  // A generic direction, away from the coordinate planes and diagonals.
  std::array<double, 3> c{0.3, 0.5, 0.81};
  const double nc = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  for (double& x : c) x /= nc;
  d.arithmetic = window(arith, c, d.window_radius, "arithmetic");
  d.random = window(baselines::sample_uniform_sphere(d.N, 2, config.seed), c, d.window_radius,
                    "random");
  d.rigid.label = "rigid";
  d.rigid.xy = baselines::hex_patch_planar({d.N, fraction});
  return d;
}

Fig2Data run_fig2(const Config& config) {
  Fig2Data d;
  d.n = config.fig2_n;
  const auto set = lattice::enumerate_solutions(d.n, 3, config.limits);
  const auto points = lattice::project_to_sphere(set);
  d.N = points.size();
  d.spacing = stats::spacing_measure(points, {config.histogram_bins, 0.0, config.histogram_hi});
  d.ks = stats::ks_distance_exponential(d.spacing.raw);
  constexpr int kSamples = 201;
  for (int i = 0; i < kSamples; ++i) {
    const double s = config.histogram_hi * i / (kSamples - 1);
    d.curve.push_back({s, std::exp(-s)});
  }
  return d;
}

std::string patch_csv(const PlanarPatch& patch) {
  std::ostringstream os;
  os << "x,y\n";
  for (const auto& [x, y] : patch.xy) os << num(x) << ',' << num(y) << '\n';
  return os.str();
}

std::string curve_csv(const std::vector<std::array<double, 2>>& curve) {
  std::ostringstream os;
  os << "s,density\n";
  for (const auto& [s, f] : curve) os << num(s) << ',' << num(f) << '\n';
  return os.str();
}

}  // namespace spherepts::experiments
