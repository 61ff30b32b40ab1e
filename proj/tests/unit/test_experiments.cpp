#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spherepts/config.hpp"
#include "spherepts/errors.hpp"
#include "spherepts/experiments.hpp"
#include "spherepts/io.hpp"
#include "spherepts/lattice.hpp"

using namespace spherepts;
using namespace spherepts::experiments;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("spherepts_test_" + name);
}

}  // namespace

TEST(PointSetFile, RoundTrip) {
  const auto set = lattice::enumerate_solutions(1001, 3);
  std::stringstream ss;
  io::write_point_set(ss, set);
  EXPECT_EQ(lines(ss.str()).front(), "3,1001");
  const auto back = io::read_point_set(ss);
  EXPECT_EQ(back.points, set.points);
  EXPECT_EQ(back.n, 1001u);
  EXPECT_EQ(back.dim, 3);
}

TEST(PointSetFile, RejectsBadRows) {
  std::stringstream wrong_norm("3,5\n1,2,1\n");
  EXPECT_THROW(io::read_point_set(wrong_norm), DomainError);
  std::stringstream wrong_width("3,5\n1,2\n");
  EXPECT_THROW(io::read_point_set(wrong_width), DomainError);
  std::stringstream junk("3,5\n1,x,0\n");
  EXPECT_THROW(io::read_point_set(junk), DomainError);
  std::stringstream empty_ok("3,7\n");
  EXPECT_TRUE(io::read_point_set(empty_ok).empty());
}

TEST(CsvSchemas, Headers) {
  std::stringstream pc, hist, prof;
  const auto set = lattice::enumerate_solutions(50, 3);
  io::write_pair_correlation(pc, lattice::pair_correlation(set));
  EXPECT_EQ(lines(pc.str()).front(), "t,count");
  const auto pts = lattice::project_to_sphere(set);
  const auto sm = stats::spacing_measure(pts);
  io::write_histogram(hist, sm.histogram);
  const auto hl = lines(hist.str());
  EXPECT_EQ(hl.front(), "lo,hi,mass");
  EXPECT_EQ(hl.size(), 52u);
  EXPECT_NE(hl.back().find(",inf,"), std::string::npos);
  const std::vector<double> r{0.5, 1.0};
  io::write_profile(prof, stats::ripley(pts, r));
  EXPECT_EQ(lines(prof.str()).front(), "r,count,normalized");
  EXPECT_EQ(lines(prof.str()).size(), 3u);
}

TEST(JsonSchema, ReportFieldsAndNulls) {
  stats::StatsOptions opt;
  opt.energy = true;
  opt.spacing = true;
  const auto pts = lattice::project_to_sphere(lattice::enumerate_solutions(101, 3));
  const auto j = io::to_json(stats::compute_report(pts, opt));
  for (const char* key : {"N", "energy", "energy_deviation", "ripley", "spacing", "min_spacing",
                          "covering_radius_estimate", "discrepancy_estimate"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["ripley"].is_null());
  EXPECT_TRUE(j["covering_radius_estimate"].is_null());
  EXPECT_TRUE(j["energy"].is_number());
  EXPECT_EQ(j["spacing"]["histogram"]["masses"].size(), 51u);
  // Round trip through text keeps doubles bit for bit.
  const auto back = nlohmann::json::parse(j.dump());
  EXPECT_EQ(back["energy"].get<double>(), j["energy"].get<double>());
}

TEST(JsonSchema, MonteCarlo) {
  const auto s = baselines::monte_carlo(baselines::Statistic::ripley, {{"r", 0.1}}, 300, 2, 3, 5);
  const auto j = io::to_json(s);
  EXPECT_EQ(j["name"], "ripley");
  EXPECT_EQ(j["params"]["r"], 0.1);
  EXPECT_EQ(j["params"]["N"], 300);
  EXPECT_EQ(j["params"]["k"], 2);
  EXPECT_EQ(j["runs"], 3);
  EXPECT_EQ(j["values"].size(), 3u);
  EXPECT_TRUE(j["std"].is_number());
}

TEST(ConfigFile, LoadAndReject) {
  const auto path = temp_path("conf");
  {
    std::ofstream out(path);
    out << "# comment\nseed = 7\nruns=3  # trailing\nbudget.dim3 = 2e8\n";
  }
  Config c;
  c.load(path.string());
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.runs, 3u);
  EXPECT_EQ(c.limits.dim3, 200'000'000u);
  EXPECT_THROW(c.set("no.such", "1"), DomainError);
  EXPECT_THROW(c.set("runs", "-1"), DomainError);
  EXPECT_THROW(c.set("runs", "abc"), DomainError);
  std::filesystem::remove(path);
}

TEST(ConfigFile, ShippedDefaultsMatchBuiltIns) {
  Config shipped;
  shipped.load(SPHEREPTS_SOURCE_DIR "/config/defaults.conf");
  EXPECT_EQ(shipped.entries(), Config{}.entries());
}

TEST(Ensemble, ShiftSumOracle) {
  EnsembleOptions opt;
  opt.r_min = 1;
  opt.r_max = 1000;
  opt.squarefree_only = true;  // filters do not touch the shift sums
  opt.shifts = {lattice::LatticePoint{{2, 0, 0, 0}}};
  const auto res = run_ensemble(opt, Config{});
  // x - y = (2,0,0) with |x| = |y| forces x = (1, b, c), y = (-1, b, c).
  std::uint64_t brute = 0;
  for (std::int64_t b = -32; b <= 32; ++b)
    for (std::int64_t c = -32; c <= 32; ++c) brute += 1 + b * b + c * c <= 1000;
  ASSERT_EQ(res.shift_sums.size(), 1u);
  EXPECT_EQ(res.shift_sums[0].total, brute);
}

TEST(Ensemble, RowsAndSummaryConsistent) {
  EnsembleOptions opt;
  opt.r_min = 1;
  opt.r_max = 600;
  opt.exclude_residues = {7};
  const auto res = run_ensemble(opt, Config{});
  ASSERT_FALSE(res.rows.empty());
  for (const auto& r : res.rows) {
    ASSERT_NE(r.residue_mod8, 7);
    ASSERT_GT(r.N, 0u);
    ASSERT_EQ(r.N, lattice::count_solutions(r.n, 3));
    const double rr = std::pow(double(r.n), 0.2 - 0.5);
    ASSERT_NEAR(r.expected, double(r.N) * r.N * rr * rr / 4, 1e-9 * r.expected);
  }
  EXPECT_TRUE(std::is_sorted(res.rows.begin(), res.rows.end(),
                             [](const auto& a, const auto& b) { return a.n < b.n; }));
  const auto again = summarize_rows(res.rows);
  EXPECT_EQ(again.count, res.summary.count);
  EXPECT_EQ(again.mean_deviation, res.summary.mean_deviation);
  EXPECT_EQ(again.median_normalized, res.summary.median_normalized);
  const auto csv = lines(ensemble_rows_csv(res.rows));
  EXPECT_EQ(csv.front(), "n,N,squarefree,n_mod_8,r,K_r,expected,normalized,deviation,m_times_N");
  EXPECT_EQ(csv.size(), res.rows.size() + 1);
}

TEST(Ensemble, SummaryStatistics) {
  std::vector<EnsembleRow> rows(4);
  const double dev[] = {1, 2, 3, 6}, norm[] = {0.5, 0.9, 1.1, 4.0};
  for (int i = 0; i < 4; ++i) {
    rows[i].deviation = dev[i];
    rows[i].normalized = norm[i];
  }
  const auto s = summarize_rows(rows);
  EXPECT_DOUBLE_EQ(s.mean_deviation, 3.0);
  EXPECT_DOUBLE_EQ(s.variance_deviation, 14.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.median_normalized, 1.0);
  EXPECT_DOUBLE_EQ(s.zscore, 3.0 / std::sqrt(14.0 / 3.0));
}

TEST(Table1, IntegerColumnAndCsv) {
  Config c;
  c.runs = 2;
  const auto rows = run_table1(c, {104773});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].N, 1224u);
  EXPECT_NEAR(rows[0].integer_deviation, -285.443, 1e-3);
  EXPECT_EQ(rows[0].random.runs, 2u);
  const auto csv = lines(table1_csv(rows));
  EXPECT_EQ(csv.front(), "n,N,integer,random_mean,random_std,runs");
  EXPECT_EQ(csv.size(), 2u);
}

TEST(Scaling, FitLineExact) {
  const auto [slope, intercept] = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  EXPECT_NEAR(slope, 2.0, 1e-14);
  EXPECT_NEAR(intercept, 1.0, 1e-14);
}

TEST(Scaling, SmallRunAndCsv) {
  ScalingOptions opt = default_scaling(ScalingTarget::min_spacing_S2);
  opt.hi = 1024;
  opt.seeds = 2;
  const auto res = run_scaling(ScalingTarget::min_spacing_S2, opt, Config{});
  EXPECT_EQ(res.points.size(), 3u * 2u);
  EXPECT_LT(res.slope, 0.0);
  const auto csv = lines(scaling_csv(res));
  EXPECT_EQ(csv[0].rfind("# target=min_spacing_S2 slope=", 0), 0u);
  EXPECT_EQ(csv[1], "n,N,seed,value");
  for (const char* t : {"min_spacing_S2", "min_spacing_S3", "covering_S3", "covering_arith_S3",
                        "min_spacing_arith_S3"})
    EXPECT_EQ(to_string(*parse_scaling_target(t)), t);
}

TEST(Lambert, CentreAndEqualDistance) {
  const std::array<double, 3> c{0, 0, 1};
  const double north[] = {0, 0, 1};
  const auto o = lambert(north, c);
  EXPECT_NEAR(o[0], 0, 1e-15);
  EXPECT_NEAR(o[1], 0, 1e-15);
  const double p[] = {std::sin(0.3), 0, std::cos(0.3)};
  const auto q = lambert(p, c);
  EXPECT_NEAR(std::hypot(q[0], q[1]), 2 * std::sin(0.15), 1e-14);
}
