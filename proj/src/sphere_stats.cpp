#include "spherepts/sphere_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "spherepts/errors.hpp"
#include "spherepts/parallel.hpp"
#include "spherepts/point_grid.hpp"
#include "spherepts/random.hpp"

namespace spherepts::stats {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier's variant of compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_pairs(const UnitPointSet& points, const char* what) {
  if (points.size() < 2) throw DomainError(std::string(what) + " needs at least two points");
}

// Relative measure of a cap of chord radius r, also defined on the circle.
double cap_measure(int k, double r) {
  if (k == 1) return 2.0 * std::asin(std::min(1.0, r / 2.0)) / kPi;
  return cap_fraction(k, r);
}

}  // namespace

double cap_fraction(int k, double r) {
  if (k != 2 && k != 3) throw DomainError("cap_fraction: k must be 2 or 3");
  if (!(r >= 0.0 && r <= 2.0)) throw DomainError("cap_fraction: r must lie in [0, 2]");
  if (k == 2) return r * r / 4.0;
  // For small r the closed form cancels badly; use the series in theta.
  const double theta = 2.0 * std::asin(r / 2.0);
  if (theta < 1e-3) {
    const double t3 = theta * theta * theta;
    return (2.0 / 3.0) * t3 / kPi * (1.0 - theta * theta / 5.0);
  }
  return (theta - std::sin(theta) * std::cos(theta)) / kPi;
}

namespace {

RipleyProfile finish_profile(std::size_t N, int k, std::span<const double> thresholds,
                             std::vector<std::uint64_t> counts) {
  RipleyProfile p;
  p.thresholds.assign(thresholds.begin(), thresholds.end());
  p.counts = std::move(counts);
  const double n = static_cast<double>(N);
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double r = thresholds[i];
    double expected = 0.0;
    if (k == 2)
      expected = n * n * r * r / 4.0;
    else
      expected = n * (n - 1.0) * cap_measure(k, std::min(r, 2.0));
    p.normalized.push_back(expected > 0.0 ? static_cast<double>(p.counts[i]) / expected : 0.0);
  }
  return p;
}

void check_thresholds(std::span<const double> thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0)) throw DomainError("ripley: thresholds must be positive");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
      throw DomainError("ripley: thresholds must be strictly increasing");
  }
}

}  // namespace

RipleyProfile ripley(const UnitPointSet& points, std::span<const double> thresholds) {
  require_pairs(points, "ripley");
  check_thresholds(thresholds);
  const std::size_t N = points.size();
  if (thresholds.empty()) return finish_profile(N, points.sphere_dim(), thresholds, {});
  std::vector<double> r2(thresholds.size());
  for (std::size_t i = 0; i < r2.size(); ++i) r2[i] = thresholds[i] * thresholds[i];
  // bucket[b] counts pairs whose d^2 falls below r2[b] but not below r2[b-1].
  std::vector<std::uint64_t> bucket(r2.size() + 1, 0);
  const double r_max = thresholds.back();
  auto tally = [&](double d2, std::uint64_t weight) {
    const auto b = static_cast<std::size_t>(std::upper_bound(r2.begin(), r2.end(), d2) - r2.begin());
    bucket[b] += weight;
  };
  if (r_max < 0.5 && N > 1000) {
    const PointGrid grid(points, r_max);
    for (std::size_t i = 0; i < N; ++i)
      grid.for_each_near(points.point(i), i, [&](std::size_t, double d2) { tally(d2, 1); });
  } else {
    for (std::size_t i = 0; i < N; ++i) {
      const auto pi = points.point(i);
      for (std::size_t j = i + 1; j < N; ++j) tally(squared_distance(pi, points.point(j)), 2);
    }
  }
  std::vector<std::uint64_t> counts(r2.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t b = 0; b < r2.size(); ++b) {
    running += bucket[b];
    counts[b] = running;
  }
  return finish_profile(N, points.sphere_dim(), thresholds, std::move(counts));
}

RipleyProfile ripley(const lattice::SolutionSet& set,
                     std::span<const lattice::SquaredRadius> thresholds) {
  if (set.size() < 2) throw DomainError("ripley needs at least two points");
  std::vector<double> radii;
  for (const auto& t : thresholds) radii.push_back(std::sqrt(t.value()));
  check_thresholds(radii);
  std::vector<std::uint64_t> counts;
  const bool small = std::all_of(thresholds.begin(), thresholds.end(),
                                 [](const auto& t) { return t.value() < 0.25; });
  if (small || set.size() > 5000) {
    for (const auto& t : thresholds) counts.push_back(lattice::ripley_exact(set, t));
  } else {
    const auto table = lattice::pair_correlation(set);
    for (const auto& t : thresholds) counts.push_back(lattice::ripley_from_table(table, t));
  }
  return finish_profile(set.size(), set.dim - 1, radii, std::move(counts));
}

std::vector<double> nn_distances(const UnitPointSet& points) {
  require_pairs(points, "nn_distances");
  const std::size_t N = points.size();
  if (N <= 2000) return nn_distances_bruteforce(points);
  const PointGrid grid(points, PointGrid::occupancy_side(N, points.sphere_dim()));
  std::vector<double> d(N);
  const std::size_t block = 4096;
  parallel_blocks((N + block - 1) / block, [&](std::size_t b) {
    const std::size_t end = std::min(N, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i)
      d[i] = std::sqrt(grid.nearest(points.point(i), i).squared_distance);
  });
  return d;
}

std::vector<double> nn_distances_bruteforce(const UnitPointSet& points) {
  require_pairs(points, "nn_distances");
  const std::size_t N = points.size();
  std::vector<double> best(N, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < N; ++i) {
    const auto pi = points.point(i);
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d2 = squared_distance(pi, points.point(j));
      best[i] = std::min(best[i], d2);
      best[j] = std::min(best[j], d2);
    }
  }
  for (double& v : best) v = std::sqrt(v);
  return best;
}

Histogram make_histogram(std::span<const double> values, const HistogramSpec& spec) {
  if (spec.bins < 1 || !(spec.hi > spec.lo)) throw DomainError("invalid histogram spec");
  Histogram h;
  const double width = (spec.hi - spec.lo) / spec.bins;
  for (int b = 0; b <= spec.bins; ++b) h.edges.push_back(spec.lo + b * width);
  h.masses.assign(static_cast<std::size_t>(spec.bins) + 1, 0.0);
  if (values.empty()) return h;
  std::vector<std::uint64_t> counts(h.masses.size(), 0);
  for (double v : values) {
    std::size_t b;
    if (v >= spec.hi)
      b = static_cast<std::size_t>(spec.bins);
    else
      b = static_cast<std::size_t>(std::clamp(std::floor((v - spec.lo) / width), 0.0,
                                              static_cast<double>(spec.bins - 1)));
    ++counts[b];
  }
  for (std::size_t b = 0; b < counts.size(); ++b)
    h.masses[b] = static_cast<double>(counts[b]) / static_cast<double>(values.size());
  return h;
}

double SpacingMeasure::mean() const {
  if (raw.empty()) return 0.0;
  CompensatedSum s;
  for (double v : raw) s.add(v);
  return s.value() / static_cast<double>(raw.size());
}

SpacingMeasure spacing_measure(const UnitPointSet& points, const HistogramSpec& spec) {
  SpacingMeasure m;
  m.N = points.size();
  if (points.size() >= 2) {
    const double scale = static_cast<double>(m.N) / 4.0;
    for (double d : nn_distances(points)) m.raw.push_back(scale * d * d);
  }
  m.histogram = make_histogram(m.raw, spec);
  return m;
}

double ks_distance_exponential(std::span<const double> values) {
  if (values.empty()) throw DomainError("ks_distance_exponential: no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = v[i] <= 0.0 ? 0.0 : -std::expm1(-v[i]);
    worst = std::max({worst, std::abs(F - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - F)});
  }
  return worst;
}

double energy(const UnitPointSet& points) {
  require_pairs(points, "energy");
  const std::size_t N = points.size();
  constexpr std::size_t kRows = 64;
  const std::size_t blocks = (N + kRows - 1) / kRows;
  std::vector<CompensatedSum> partial(blocks);
  std::vector<std::size_t> coincident(blocks, PointGrid::npos);
  parallel_blocks(blocks, [&](std::size_t b) {
    CompensatedSum acc;
    const std::size_t end = std::min(N, (b + 1) * kRows);
    for (std::size_t i = b * kRows; i < end; ++i) {
      const auto pi = points.point(i);
      for (std::size_t j = i + 1; j < N; ++j) {
        const double d2 = squared_distance(pi, points.point(j));
        if (d2 == 0.0) {
          coincident[b] = i;
          return;
        }
        acc.add(1.0 / std::sqrt(d2));
      }
    }
    partial[b] = acc;
  });
  for (std::size_t b = 0; b < blocks; ++b)
    if (coincident[b] != PointGrid::npos)
      throw CoincidentPoints("energy: point " + std::to_string(coincident[b]) +
                             " coincides with another point");
  CompensatedSum total;
  for (const auto& p : partial) {
    total.add(p.sum);
    total.add(p.carry);
  }
  return 2.0 * total.value();
}

double min_spacing(const UnitPointSet& points) {
  const auto d = nn_distances(points);
  return *std::min_element(d.begin(), d.end());
}

namespace {

// Visits the probe grid row by row. Every point of S^k lies within geodesic
// (hence chord) distance `mesh` of some probe:
//  S^1: angles spaced <= 2 mesh.
//  S^2: latitude rows spaced <= mesh, each row spaced <= mesh / sin(theta),
//       so half a row step plus half a column step stays <= mesh.
//  S^3: Hopf coordinates (eta, xi1, xi2) with
//       x = (cos eta cos xi1, cos eta sin xi1, sin eta cos xi2, sin eta sin xi2);
//       the three half-steps are each <= mesh / 3 in the metric
//       d eta^2 + cos^2 eta d xi1^2 + sin^2 eta d xi2^2.
class ProbeGrid {
 public:
  ProbeGrid(int k, double mesh) : k_(k), mesh_(mesh) {
    if (!(mesh > 0.0)) throw DomainError("covering: mesh must be positive");
    if (k == 1) {
      rows_ = 1;
    } else if (k == 2) {
      rows_ = static_cast<std::size_t>(std::ceil(kPi / mesh)) + 1;
    } else if (k == 3) {
      rows_ = static_cast<std::size_t>(std::ceil((kPi / 2.0) / (2.0 * mesh / 3.0))) + 1;
    } else {
      throw DomainError("covering: sphere dimension must be 1, 2 or 3");
    }
  }

  std::size_t rows() const { return rows_; }

  std::size_t row_size(std::size_t row) const {
    const auto [a, b] = row_counts(row);
    return a * b;
  }

  template <typename Fn>
  void visit_row(std::size_t row, Fn&& fn) const {
    std::array<double, 4> p{};
    const auto [c1, c2] = row_counts(row);
    if (k_ == 1) {
      for (std::size_t i = 0; i < c1; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c1);
        p[0] = std::cos(phi);
        p[1] = std::sin(phi);
        fn(std::span<const double>(p.data(), 2));
      }
    } else if (k_ == 2) {
      const double theta = row_angle(row);
      const double st = std::sin(theta), ct = std::cos(theta);
      for (std::size_t i = 0; i < c1; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c1);
        p[0] = st * std::cos(phi);
        p[1] = st * std::sin(phi);
        p[2] = ct;
        fn(std::span<const double>(p.data(), 3));
      }
    } else {
      const double eta = row_angle(row);
      const double ce = std::cos(eta), se = std::sin(eta);
      for (std::size_t i = 0; i < c1; ++i) {
        const double xi1 = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c1);
        const double a = ce * std::cos(xi1), b = ce * std::sin(xi1);
        for (std::size_t j = 0; j < c2; ++j) {
          const double xi2 = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(c2);
          p[0] = a;
          p[1] = b;
          p[2] = se * std::cos(xi2);
          p[3] = se * std::sin(xi2);
          fn(std::span<const double>(p.data(), 4));
        }
      }
    }
  }

 private:
  double row_angle(std::size_t row) const {
    const double span = k_ == 2 ? kPi : kPi / 2.0;
    return span * static_cast<double>(row) / static_cast<double>(rows_ - 1);
  }

  std::pair<std::size_t, std::size_t> row_counts(std::size_t row) const {
    auto steps = [](double length, double step) {
      if (length <= 1e-15) return std::size_t{1};
      return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / step)));
    };
    if (k_ == 1) return {steps(2.0 * kPi, 2.0 * mesh_), 1};
    const double ang = row_angle(row);
    if (k_ == 2) return {steps(2.0 * kPi * std::sin(ang), mesh_), 1};
    const double step = 2.0 * mesh_ / 3.0;
    return {steps(2.0 * kPi * std::cos(ang), step), steps(2.0 * kPi * std::sin(ang), step)};
  }

  int k_;
  double mesh_;
  std::size_t rows_;
};

struct Probe {
  double distance;
  std::array<double, 4> at;

  bool operator<(const Probe& o) const { return distance > o.distance; }  // min-heap
};

double nearest_distance(const PointGrid& grid, std::span<const double> q) {
  return std::sqrt(grid.nearest(q).squared_distance);
}

// Pattern-search ascent of the distance-to-nearest-point function.
double ascend(const PointGrid& grid, std::array<double, 4> x, int dim, double step) {
  double best = nearest_distance(grid, std::span<const double>(x.data(), dim));
  std::array<double, 4> y{};
  while (step > 1e-10) {
    bool moved = false;
    for (int axis = 0; axis < dim && !moved; ++axis) {
      for (const double sign : {1.0, -1.0}) {
        y = x;
        y[axis] += sign * step;
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += y[a] * y[a];
        const double inv = 1.0 / std::sqrt(s);
        for (int a = 0; a < dim; ++a) y[a] *= inv;
        const double d = nearest_distance(grid, std::span<const double>(y.data(), dim));
        if (d > best) {
          best = d;
          x = y;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

std::size_t covering_probe_count(int sphere_dim, double mesh) {
  const ProbeGrid grid(sphere_dim, mesh);
  std::size_t total = 0;
  for (std::size_t r = 0; r < grid.rows(); ++r) total += grid.row_size(r);
  return total;
}

CoveringEstimate covering_radius(const UnitPointSet& points, const CoveringOptions& options) {
  if (points.empty()) throw EmptySetError("covering_radius: empty point set");
  const int k = points.sphere_dim();
  const ProbeGrid probes(k, options.mesh);
  const std::size_t total = covering_probe_count(k, options.mesh);
  if (total > options.max_probes)
    throw BudgetExceeded("covering_radius: mesh " + std::to_string(options.mesh) + " needs " +
                         std::to_string(total) + " probes (limit " +
                         std::to_string(options.max_probes) + ")");
  const PointGrid grid(points, PointGrid::occupancy_side(points.size(), k));
  const int dim = points.ambient_dim();
  const std::size_t keep = std::max<std::size_t>(1, options.refine);

  std::vector<std::vector<Probe>> best_per_row(probes.rows());
  parallel_blocks(probes.rows(), [&](std::size_t row) {
    std::priority_queue<Probe> heap;
    probes.visit_row(row, [&](std::span<const double> q) {
      const double d = nearest_distance(grid, q);
      if (heap.size() < keep || d > heap.top().distance) {
        Probe p{d, {}};
        std::copy(q.begin(), q.end(), p.at.begin());
        heap.push(p);
        if (heap.size() > keep) heap.pop();
      }
    });
    auto& out = best_per_row[row];
    while (!heap.empty()) {
      out.push_back(heap.top());
      heap.pop();
    }
  });
  std::vector<Probe> all;
  for (const auto& row : best_per_row) all.insert(all.end(), row.begin(), row.end());
  std::sort(all.begin(), all.end(), [](const Probe& a, const Probe& b) {
    if (a.distance != b.distance) return a.distance > b.distance;
    return a.at < b.at;
  });
  if (all.size() > keep) all.resize(keep);

  CoveringEstimate out;
  out.probes = total;
  out.error_bound = options.mesh;
  out.estimate = all.empty() ? 0.0 : all.front().distance;
  for (const auto& p : all)
    out.estimate = std::max(out.estimate, ascend(grid, p.at, dim, options.mesh));
  return out;
}

double pole_annulus_gap(const UnitPointSet& points) {
  if (points.sphere_dim() != 3 || points.provenance().kind != Provenance::Kind::arithmetic ||
      points.provenance().n < 2)
    throw DomainError("pole_annulus_gap needs a dimension-4 arithmetic set with n >= 2");
  const double root_n = std::sqrt(static_cast<double>(points.provenance().n));
  std::set<std::int64_t> realized;
  for (std::size_t i = 0; i < points.size(); ++i)
    realized.insert(std::llround(points.point(i)[0] * root_n));
  std::vector<double> r;
  for (const std::int64_t a : realized)
    r.push_back(std::sqrt(std::max(0.0, 2.0 - 2.0 * static_cast<double>(a) / root_n)));
  std::sort(r.begin(), r.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) gap = std::max(gap, r[i] - r[i - 1]);
  return gap / 2.0;
}

double cap_discrepancy(const UnitPointSet& points, std::size_t num_caps, std::uint64_t seed) {
  if (points.empty()) throw EmptySetError("cap_discrepancy: empty point set");
  if (num_caps == 0) throw DomainError("cap_discrepancy: need at least one cap");
  const int k = points.sphere_dim();
  if (k != 2 && k != 3) throw DomainError("cap_discrepancy: sphere must be S^2 or S^3");
  Rng rng(seed);
  const std::size_t N = points.size();
  std::array<double, 4> c{};
  const std::span<double> center(c.data(), static_cast<std::size_t>(points.ambient_dim()));
  double worst = 0.0;
  for (std::size_t cap = 0; cap < num_caps; ++cap) {
    rng.unit_vector(center);
    const double r = 2.0 * (1.0 - rng.uniform());
    const double r2 = r * r;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < N; ++i)
      inside += squared_distance(center, points.point(i)) < r2 ? 1 : 0;
    const double frac = static_cast<double>(inside) / static_cast<double>(N);
    worst = std::max(worst, std::abs(frac - cap_fraction(k, r)));
  }
  return worst;
}

StatsReport compute_report(const UnitPointSet& points, const StatsOptions& options) {
  StatsReport rep;
  rep.N = points.size();
  const bool pairs = rep.N >= 2;
  if (options.energy && pairs) {
    rep.energy = energy(points);
    const double n = static_cast<double>(rep.N);
    rep.energy_deviation = *rep.energy - n * (n - 1.0);
  }
  if (options.ripley && pairs) rep.ripley = ripley(points, options.thresholds);
  if (options.spacing && pairs) rep.spacing = spacing_measure(points, options.histogram);
  if (options.min_spacing && pairs) rep.min_spacing = min_spacing(points);
  if (options.covering) rep.covering = covering_radius(points, options.covering_options);
  if (options.discrepancy) rep.discrepancy = cap_discrepancy(points, options.num_caps, options.seed);
  return rep;
}

}  // namespace spherepts::stats
