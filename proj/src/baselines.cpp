#include "spherepts/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "spherepts/errors.hpp"
#include "spherepts/parallel.hpp"
#include "spherepts/random.hpp"
#include "spherepts/sphere_stats.hpp"

namespace spherepts::baselines {

UnitPointSet sample_uniform_sphere(std::size_t N, int k, std::uint64_t seed) {
  if (N == 0) throw DomainError("sample_uniform_sphere: N must be positive");
  if (k != 2 && k != 3) throw DomainError("sample_uniform_sphere: k must be 2 or 3");
  const auto dim = static_cast<std::size_t>(k + 1);
  std::vector<double> coords(N * dim);
  Rng rng(seed);
  for (std::size_t i = 0; i < N; ++i) rng.unit_vector(std::span<double>(coords.data() + i * dim, dim));
  return UnitPointSet(k, std::move(coords), Provenance::random(seed));
}

std::vector<std::array<double, 2>> hex_patch_planar(const HexPatchOptions& options) {
  if (options.n_target < 7) throw DomainError("hex_patch: n_target must be at least 7");
  if (!(options.cap_fraction > 0.0 && options.cap_fraction <= 1.0))
    throw DomainError("hex_patch: cap_fraction must lie in (0, 1]");
  const double s = std::sqrt(8.0 * std::numbers::pi /
                             (std::sqrt(3.0) * static_cast<double>(options.n_target)));
  const double radius = 2.0 * std::sqrt(options.cap_fraction);
  const double row_height = s * std::sqrt(3.0) / 2.0;
  const auto rows = static_cast<long>(std::ceil(radius / row_height)) + 1;
  const auto cols = static_cast<long>(std::ceil(radius / s)) + rows + 1;
  std::vector<std::array<double, 2>> out;
  for (long j = -rows; j <= rows; ++j) {
    for (long i = -cols; i <= cols; ++i) {
      const double x = s * (static_cast<double>(i) + 0.5 * static_cast<double>(j));
      const double y = row_height * static_cast<double>(j);
      if (x * x + y * y <= radius * radius) out.push_back({x, y});
    }
  }
  return out;
}

UnitPointSet hex_patch(const HexPatchOptions& options) {
  const auto planar = hex_patch_planar(options);
  std::vector<double> coords;
  coords.reserve(planar.size() * 3);
  for (const auto& [x, y] : planar) {
    const double rho2 = x * x + y * y;
    const double f = std::sqrt(1.0 - rho2 / 4.0);
    coords.push_back(x * f);
    coords.push_back(y * f);
    coords.push_back(1.0 - rho2 / 2.0);
  }
  std::ostringstream params;
  params << "hex n_target=" << options.n_target << " cap_fraction=" << options.cap_fraction;
  return UnitPointSet(2, std::move(coords), Provenance::rigid(params.str()));
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::energy_deviation:
      return "energy_deviation";
    case Statistic::ripley:
      return "ripley";
    case Statistic::min_spacing:
      return "min_spacing";
    case Statistic::covering:
      return "covering";
    case Statistic::spacing_ks:
      return "spacing_ks";
    case Statistic::cap_discrepancy:
      return "cap_discrepancy";
  }
  return "unknown";
}

std::optional<Statistic> parse_statistic(const std::string& name) {
  for (auto s : {Statistic::energy_deviation, Statistic::ripley, Statistic::min_spacing,
                 Statistic::covering, Statistic::spacing_ks, Statistic::cap_discrepancy})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

double MonteCarloSummary::standard_error() const {
  if (!stddev || runs == 0) return 0.0;
  return *stddev / std::sqrt(static_cast<double>(runs));
}

void summarize(MonteCarloSummary& s) {
  s.runs = s.values.size();
  if (s.values.empty()) {
    s.mean = 0.0;
    s.stddev.reset();
    return;
  }
  const double n = static_cast<double>(s.values.size());
  s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / n;
  if (s.values.size() < 2) {
    s.stddev.reset();
    return;
  }
  double ss = 0.0;
  for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / (n - 1.0));
}

MonteCarloSummary monte_carlo(const std::string& name,
                              const std::function<double(const UnitPointSet&)>& statistic,
                              std::size_t N, int k, std::size_t runs, std::uint64_t seed) {
  if (runs == 0) throw DomainError("monte_carlo: runs must be at least 1");
  MonteCarloSummary s;
  s.statistic = name;
  s.N = N;
  s.k = k;
  s.seed = seed;
  s.values.assign(runs, 0.0);
  parallel_blocks(runs, [&](std::size_t run) {
    const auto points = sample_uniform_sphere(N, k, split_seed(seed, run));
    s.values[run] = statistic(points);
  });
  summarize(s);
  return s;
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

MonteCarloSummary monte_carlo(Statistic stat, const std::map<std::string, double>& params,
                              std::size_t N, int k, std::size_t runs, std::uint64_t seed) {
  std::function<double(const UnitPointSet&)> fn;
  switch (stat) {
    case Statistic::energy_deviation:
      fn = [](const UnitPointSet& p) {
        const double n = static_cast<double>(p.size());
        return stats::energy(p) - n * (n - 1.0);
      };
      break;
    case Statistic::ripley: {
      const double r = param(params, "r", 0.1);
      fn = [r](const UnitPointSet& p) {
        const std::array<double, 1> t{r};
        return static_cast<double>(stats::ripley(p, t).counts.front());
      };
      break;
    }
    case Statistic::min_spacing:
      fn = [](const UnitPointSet& p) { return stats::min_spacing(p); };
      break;
    case Statistic::covering: {
      stats::CoveringOptions opt;
      opt.mesh = param(params, "mesh", k == 2 ? 1e-2 : 5e-2);
      fn = [opt](const UnitPointSet& p) { return stats::covering_radius(p, opt).estimate; };
      break;
    }
    case Statistic::spacing_ks:
      fn = [](const UnitPointSet& p) {
        return stats::ks_distance_exponential(stats::spacing_measure(p).raw);
      };
      break;
    case Statistic::cap_discrepancy: {
      const auto caps = static_cast<std::size_t>(param(params, "caps", 1000));
      fn = [caps, seed](const UnitPointSet& p) {
        return stats::cap_discrepancy(p, caps, mix64(seed ^ 0xcafef00dULL));
      };
      break;
    }
  }
  auto s = monte_carlo(to_string(stat), fn, N, k, runs, seed);
  s.params = params;
  return s;
}

}  // namespace spherepts::baselines
