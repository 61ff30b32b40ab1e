#include "spherepts/config.hpp"

#include <fstream>
#include <sstream>

#include "spherepts/errors.hpp"

namespace spherepts {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw DomainError("config: " + key + " expects a number, got '" + v + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  // Accept scientific notation for large integer budgets (2e8).
  const double d = to_double(key, v);
  if (d < 0 || d != static_cast<double>(static_cast<std::uint64_t>(d)))
    throw DomainError("config: " + key + " expects a nonnegative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "seed") seed = to_uint(key, value);
  else if (key == "runs") runs = to_uint(key, value);
  else if (key == "histogram.bins") histogram_bins = static_cast<int>(to_uint(key, value));
  else if (key == "histogram.hi") histogram_hi = to_double(key, value);
  else if (key == "covering.mesh_s2") mesh_s2 = to_double(key, value);
  else if (key == "covering.mesh_s3") mesh_s3 = to_double(key, value);
  else if (key == "covering.max_probes") max_probes = to_uint(key, value);
  else if (key == "discrepancy.caps") num_caps = to_uint(key, value);
  else if (key == "budget.dim2") limits.dim2 = to_uint(key, value);
  else if (key == "budget.dim3") limits.dim3 = to_uint(key, value);
  else if (key == "budget.dim4") limits.dim4 = to_uint(key, value);
  else if (key == "budget.pair_n") pair_budget_n = to_uint(key, value);
  else if (key == "ensemble.delta") ensemble_delta = to_double(key, value);
  else if (key == "ensemble.median_lo") ensemble_median_lo = to_double(key, value);
  else if (key == "ensemble.median_hi") ensemble_median_hi = to_double(key, value);
  else if (key == "ensemble.zscore_max") ensemble_zscore_max = to_double(key, value);
  else if (key == "spacing.ks_max") spacing_ks_max = to_double(key, value);
  else if (key == "fig2.ks_max") fig2_ks_max = to_double(key, value);
  else if (key == "fig1.window_points") fig1_window_points = to_uint(key, value);
  else if (key == "fig1.n") fig1_n = to_uint(key, value);
  else if (key == "fig2.n") fig2_n = to_uint(key, value);
  else throw DomainError("config: unknown key '" + key + "'");
}

void Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config: " + path + ":" + std::to_string(lineno) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::map<std::string, std::string> Config::entries() const {
  return {
      {"seed", std::to_string(seed)},
      {"runs", std::to_string(runs)},
      {"histogram.bins", std::to_string(histogram_bins)},
      {"histogram.hi", fmt(histogram_hi)},
      {"covering.mesh_s2", fmt(mesh_s2)},
      {"covering.mesh_s3", fmt(mesh_s3)},
      {"covering.max_probes", std::to_string(max_probes)},
      {"discrepancy.caps", std::to_string(num_caps)},
      {"budget.dim2", std::to_string(limits.dim2)},
      {"budget.dim3", std::to_string(limits.dim3)},
      {"budget.dim4", std::to_string(limits.dim4)},
      {"budget.pair_n", std::to_string(pair_budget_n)},
      {"ensemble.delta", fmt(ensemble_delta)},
      {"ensemble.median_lo", fmt(ensemble_median_lo)},
      {"ensemble.median_hi", fmt(ensemble_median_hi)},
      {"ensemble.zscore_max", fmt(ensemble_zscore_max)},
      {"spacing.ks_max", fmt(spacing_ks_max)},
      {"fig2.ks_max", fmt(fig2_ks_max)},
      {"fig1.window_points", std::to_string(fig1_window_points)},
      {"fig1.n", std::to_string(fig1_n)},
      {"fig2.n", std::to_string(fig2_n)},
  };
}

}  // namespace spherepts
