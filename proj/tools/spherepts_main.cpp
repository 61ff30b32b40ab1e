// spherepts: lattice points on spheres and their local statistics.
//
// Exit codes: 0 success, 1 unexpected failure, 2 budget refusal,
// 3 invalid arguments, 4 non-representable n where a nonempty set is needed.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spherepts/baselines.hpp"
#include "spherepts/config.hpp"
#include "spherepts/errors.hpp"
#include "spherepts/experiments.hpp"
#include "spherepts/io.hpp"
#include "spherepts/lattice.hpp"
#include "spherepts/numtheory.hpp"
#include "spherepts/parallel.hpp"
#include "spherepts/sphere_stats.hpp"

namespace {

using namespace spherepts;

constexpr int kExitBudget = 2;
constexpr int kExitArgs = 3;
constexpr int kExitEmpty = 4;

struct NonRepresentable : Error {
  using Error::Error;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_text(path, content);
    std::cerr << "wrote " << path << '\n';
  }
}

lattice::LatticePoint parse_shift(const std::string& text) {
  lattice::LatticePoint h;
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw DomainError("shift '" + text + "' has more than four coordinates");
    h.coords[i++] = std::stoll(item);
  }
  return h;
}

std::string to_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice points on spheres: enumeration and local statistics"};
  app.require_subcommand(1);
  std::string config_path;
  unsigned threads = 0;
  app.add_option("--config", config_path, "key = value defaults file");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "write the solution set of |x|^2 = n");
  std::uint64_t en_n = 0;
  int en_dim = 3;
  std::string en_out, en_pairs;
  enumerate->add_option("--n", en_n, "the integer n")->required();
  enumerate->add_option("--dim", en_dim, "number of squares (2, 3 or 4)");
  enumerate->add_option("--out", en_out, "point-set CSV path");
  enumerate->add_option("--pairs", en_pairs, "also write the pair-correlation CSV A(n,t)");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "statistics of one point set as JSON");
  std::string st_in, st_out, st_hist, st_profile;
  std::uint64_t st_n = 0, st_random = 0, st_seed = 0;
  int st_dim = 3, st_k = 2;
  bool st_energy = false, st_ripley = false, st_spacing = false, st_min = false,
       st_cover = false, st_disc = false, st_all = false, st_force = false;
  std::vector<double> st_r;
  double st_mesh = 0.0;
  std::size_t st_caps = 0;
  stats_cmd->add_option("--in", st_in, "point-set CSV");
  stats_cmd->add_option("--n", st_n, "enumerate this n instead of reading a file");
  stats_cmd->add_option("--dim", st_dim, "dimension for --n");
  stats_cmd->add_option("--random", st_random, "use this many uniform random points");
  stats_cmd->add_option("--k", st_k, "sphere dimension for --random (2 or 3)");
  stats_cmd->add_option("--seed", st_seed, "seed for --random and cap sampling");
  stats_cmd->add_flag("--energy", st_energy);
  stats_cmd->add_flag("--ripley", st_ripley);
  stats_cmd->add_flag("--spacing", st_spacing);
  stats_cmd->add_flag("--min-spacing", st_min);
  stats_cmd->add_flag("--covering", st_cover);
  stats_cmd->add_flag("--discrepancy", st_disc);
  stats_cmd->add_flag("--all", st_all);
  stats_cmd->add_flag("--force", st_force, "lift the O(N^2) pair budget");
  stats_cmd->add_option("--r", st_r, "Ripley thresholds (chord radii)")->delimiter(',');
  stats_cmd->add_option("--mesh", st_mesh, "covering probe mesh");
  stats_cmd->add_option("--caps", st_caps, "caps sampled for the discrepancy");
  stats_cmd->add_option("--out", st_out, "report JSON path (default stdout)");
  stats_cmd->add_option("--hist-out", st_hist, "spacing histogram CSV");
  stats_cmd->add_option("--profile-out", st_profile, "Ripley profile CSV");

  // table1
  auto* table1 = app.add_subcommand("table1", "energy deviations E - N(N-1), integer vs random");
  std::string t1_out;
  std::size_t t1_runs = 0;
  std::uint64_t t1_seed = 0;
  table1->add_option("--out", t1_out, "CSV path");
  table1->add_option("--runs", t1_runs, "random runs per row");
  table1->add_option("--seed", t1_seed, "master seed");

  // ensemble
  auto* ensemble = app.add_subcommand("ensemble", "K_r over a range of n");
  experiments::EnsembleOptions ens;
  std::vector<std::string> ens_shifts;
  double ens_delta = -1.0;
  std::string ens_out;
  ensemble->add_option("--rmin", ens.r_min, "first n");
  ensemble->add_option("--rmax", ens.r_max, "last n")->required();
  ensemble->add_option("--delta", ens_delta, "r = n^(delta - 1/2)");
  ensemble->add_flag("--squarefree", ens.squarefree_only, "keep squarefree n only");
  ensemble->add_option("--exclude", ens.exclude_residues, "skip n in this class mod 8");
  ensemble->add_flag("--include-empty", ens.include_empty, "emit rows with N = 0 too");
  ensemble->add_option("--shift", ens_shifts, "h for sum of K_h, e.g. 2,0,0");
  ensemble->add_option("--out", ens_out, "rows CSV path");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "log-log slope of a statistic against N");
  std::string sc_target, sc_out;
  double sc_lo = 0, sc_hi = 0, sc_factor = 0, sc_mesh = -1;
  std::size_t sc_count = 0, sc_seeds = 0;
  scaling->add_option("--target", sc_target,
                      "min_spacing_S2|min_spacing_S3|covering_S3|covering_arith_S3|"
                      "min_spacing_arith_S3")
      ->required();
  scaling->add_option("--lo", sc_lo, "smallest N (random) or n (arithmetic)");
  scaling->add_option("--hi", sc_hi, "largest N or n");
  scaling->add_option("--factor", sc_factor, "ratio between consecutive N (random)");
  scaling->add_option("--count", sc_count, "number of odd n (arithmetic)");
  scaling->add_option("--seeds", sc_seeds, "samples per N (random)");
  scaling->add_option("--mesh", sc_mesh, "covering probe mesh (0 = automatic)");
  scaling->add_option("--out", sc_out, "per-point CSV path");

  // figdata
  auto* figdata = app.add_subcommand("figdata", "CSV bundles for plotting");
  std::string fd_which, fd_out = ".";
  figdata->add_option("--which", fd_which, "fig1 or fig2")->required();
  figdata->add_option("--out", fd_out, "output directory");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Monte Carlo summary on uniform points");
  std::string bl_stat, bl_out;
  std::size_t bl_N = 0, bl_runs = 0;
  int bl_k = 2;
  std::uint64_t bl_seed = 0;
  double bl_r = -1, bl_mesh = -1, bl_caps = -1;
  baseline->add_option("--stat", bl_stat,
                       "energy_deviation|ripley|min_spacing|covering|spacing_ks|cap_discrepancy")
      ->required();
  baseline->add_option("--N", bl_N, "points per run")->required();
  baseline->add_option("--k", bl_k, "sphere dimension (2 or 3)");
  baseline->add_option("--runs", bl_runs, "number of runs");
  baseline->add_option("--seed", bl_seed, "master seed");
  baseline->add_option("--r", bl_r, "Ripley threshold");
  baseline->add_option("--mesh", bl_mesh, "covering mesh");
  baseline->add_option("--caps", bl_caps, "caps for the discrepancy");
  baseline->add_option("--out", bl_out, "summary JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgs;
  }

  try {
    Config config;
    if (!config_path.empty()) config.load(config_path);
    set_thread_count(threads);

    if (*enumerate) {
      const auto set = lattice::enumerate_solutions(en_n, en_dim, config.limits);
      if (!en_out.empty()) io::write_point_set(en_out, set);
      if (!en_pairs.empty()) {
        std::ofstream out(en_pairs);
        io::write_pair_correlation(out, lattice::pair_correlation(set));
      }
      nlohmann::json j{{"n", en_n},
                       {"dim", en_dim},
                       {"N", set.size()},
                       {"n_mod_8", en_n % 8},
                       {"squarefree", numtheory::is_squarefree(en_n)}};
      if (set.empty()) j["note"] = "no solutions; empty set written";
      std::cout << j.dump() << '\n';
      return 0;
    }

    if (*stats_cmd) {
      const int sources = !st_in.empty() + (st_n != 0) + (st_random != 0);
      if (sources != 1) throw DomainError("stats: give exactly one of --in, --n, --random");
      std::optional<UnitPointSet> points;
      if (st_random != 0) {
        points = baselines::sample_uniform_sphere(st_random, st_k, st_seed);
      } else {
        const auto set = st_in.empty() ? lattice::enumerate_solutions(st_n, st_dim, config.limits)
                                       : io::read_point_set(st_in);
        if (set.empty())
          throw NonRepresentable("n = " + std::to_string(set.n) + " has no representation");
        points = lattice::project_to_sphere(set);
      }
      stats::StatsOptions opt;
      opt.energy = st_energy || st_all;
      opt.ripley = st_ripley || st_all;
      opt.spacing = st_spacing || st_all;
      opt.min_spacing = st_min || st_all;
      opt.covering = st_cover || st_all;
      opt.discrepancy = st_disc || st_all;
      opt.thresholds = st_r;
      if (opt.ripley && opt.thresholds.empty()) opt.thresholds = {0.05, 0.1, 0.2, 0.5, 1.0, 1.999};
      opt.histogram = {config.histogram_bins, 0.0, config.histogram_hi};
      opt.covering_options.mesh =
          st_mesh > 0 ? st_mesh : (points->sphere_dim() == 3 ? config.mesh_s3 : config.mesh_s2);
      opt.covering_options.max_probes = config.max_probes;
      opt.num_caps = st_caps ? st_caps : config.num_caps;
      opt.seed = st_seed ? st_seed : config.seed;
      if ((opt.energy || (opt.ripley && points->size() <= 1000)) &&
          points->size() > config.pair_budget_n && !st_force)
        throw BudgetExceeded("stats: N = " + std::to_string(points->size()) +
                             " exceeds the pair budget " + std::to_string(config.pair_budget_n) +
                             " (use --force)");
      const auto report = stats::compute_report(*points, opt);
      auto j = io::to_json(report);
      j["provenance"] = io::to_json(points->provenance());
      emit(st_out, to_text(j));
      if (!st_hist.empty() && report.spacing) {
        std::ofstream out(st_hist);
        io::write_histogram(out, report.spacing->histogram);
      }
      if (!st_profile.empty() && report.ripley) {
        std::ofstream out(st_profile);
        io::write_profile(out, *report.ripley);
      }
      return 0;
    }

    if (*table1) {
      if (t1_runs) config.runs = t1_runs;
      if (t1_seed) config.seed = t1_seed;
      const auto rows = experiments::run_table1(config);
      std::cout << experiments::format_table1(rows);
      if (!t1_out.empty()) emit(t1_out, experiments::table1_csv(rows));
      return 0;
    }

    if (*ensemble) {
      ens.delta = ens_delta >= 0 ? ens_delta : config.ensemble_delta;
      for (const auto& s : ens_shifts) ens.shifts.push_back(parse_shift(s));
      const auto res = experiments::run_ensemble(ens, config);
      if (!ens_out.empty()) emit(ens_out, experiments::ensemble_rows_csv(res.rows));
      nlohmann::json j;
      j["count"] = res.summary.count;
      j["mean_deviation"] = res.summary.mean_deviation;
      j["variance_deviation"] = res.summary.variance_deviation;
      j["median_normalized"] = res.summary.median_normalized;
      j["zscore"] = res.summary.zscore;
      j["delta"] = ens.delta;
      j["label"] = "conjecture support, not verification";
      j["shift_sums"] = nlohmann::json::array();
      for (const auto& s : res.shift_sums) {
        std::vector<std::int64_t> h(s.h.coords.begin(), s.h.coords.begin() + 3);
        j["shift_sums"].push_back({{"h", h}, {"total", s.total}});
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*scaling) {
      const auto target = experiments::parse_scaling_target(sc_target);
      if (!target) throw DomainError("unknown scaling target '" + sc_target + "'");
      auto opt = experiments::default_scaling(*target);
      if (sc_lo > 0) opt.lo = sc_lo;
      if (sc_hi > 0) opt.hi = sc_hi;
      if (sc_factor > 0) opt.factor = sc_factor;
      if (sc_count > 0) opt.count = sc_count;
      if (sc_seeds > 0) opt.seeds = sc_seeds;
      if (sc_mesh >= 0) opt.mesh = sc_mesh;
      const auto res = experiments::run_scaling(*target, opt, config);
      if (!sc_out.empty()) emit(sc_out, experiments::scaling_csv(res));
      nlohmann::json j{{"target", sc_target},
                       {"slope", res.slope},
                       {"intercept", res.intercept},
                       {"points", res.points.size()}};
      std::cout << j.dump() << '\n';
      return 0;
    }

    if (*figdata) {
      namespace fs = std::filesystem;
      fs::create_directories(fd_out);
      if (fd_which == "fig1") {
        const auto d = experiments::run_fig1(config);
        io::write_text((fs::path(fd_out) / "fig1_arithmetic.csv").string(),
                       experiments::patch_csv(d.arithmetic));
        io::write_text((fs::path(fd_out) / "fig1_random.csv").string(),
                       experiments::patch_csv(d.random));
        io::write_text((fs::path(fd_out) / "fig1_rigid.csv").string(),
                       experiments::patch_csv(d.rigid));
        nlohmann::json j{{"n", d.n},
                         {"N", d.N},
                         {"window_radius", d.window_radius},
                         {"arithmetic_points", d.arithmetic.xy.size()},
                         {"random_points", d.random.xy.size()},
                         {"rigid_points", d.rigid.xy.size()}};
        std::cout << j.dump() << '\n';
      } else if (fd_which == "fig2") {
        const auto d = experiments::run_fig2(config);
        std::ofstream hist(fs::path(fd_out) / "fig2_histogram.csv");
        io::write_histogram(hist, d.spacing.histogram);
        io::write_text((fs::path(fd_out) / "fig2_curve.csv").string(),
                       experiments::curve_csv(d.curve));
        nlohmann::json j{{"n", d.n}, {"N", d.N}, {"ks", d.ks}, {"mean", d.spacing.mean()}};
        io::write_text((fs::path(fd_out) / "fig2_summary.json").string(), j.dump(2) + "\n");
        std::cout << j.dump() << '\n';
      } else {
        throw DomainError("--which must be fig1 or fig2");
      }
      return 0;
    }

    if (*baseline) {
      const auto stat = baselines::parse_statistic(bl_stat);
      if (!stat) throw DomainError("unknown statistic '" + bl_stat + "'");
      std::map<std::string, double> params;
      if (bl_r > 0) params["r"] = bl_r;
      if (bl_mesh > 0) params["mesh"] = bl_mesh;
      if (bl_caps > 0) params["caps"] = bl_caps;
      if (*stat == baselines::Statistic::energy_deviation && bl_N > config.pair_budget_n)
        throw BudgetExceeded("baseline: N exceeds the pair budget");
      const auto summary = baselines::monte_carlo(*stat, params, bl_N, bl_k,
                                                  bl_runs ? bl_runs : config.runs,
                                                  bl_seed ? bl_seed : config.seed);
      emit(bl_out, to_text(io::to_json(summary)));
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const NonRepresentable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const EmptySetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
