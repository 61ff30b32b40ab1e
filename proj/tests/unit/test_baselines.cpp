#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "spherepts/baselines.hpp"
#include "spherepts/errors.hpp"
#include "spherepts/random.hpp"
#include "spherepts/sphere_stats.hpp"

using namespace spherepts;
using namespace spherepts::baselines;

TEST(Uniform, NormsAndDeterminism) {
  for (int k : {2, 3}) {
    const auto a = sample_uniform_sphere(1000, k, 42);
    const auto b = sample_uniform_sphere(1000, k, 42);
    const auto c = sample_uniform_sphere(1000, k, 43);
    const auto vec = [](const UnitPointSet& p) {
      return std::vector<double>(p.coords().begin(), p.coords().end());
    };
    EXPECT_EQ(vec(a), vec(b));
    EXPECT_NE(vec(a), vec(c));
    EXPECT_LT(a.max_norm_error(), 1e-15);
    EXPECT_EQ(a.ambient_dim(), k + 1);
  }
  EXPECT_THROW(sample_uniform_sphere(10, 4, 1), DomainError);
}

TEST(Uniform, MomentsMatchIsotropy) {
  // E[x_i] = 0 and E[x_i^2] = 1 / (k + 1).
  const std::size_t N = 200000;
  for (int k : {2, 3}) {
    const auto pts = sample_uniform_sphere(N, k, 99);
    const int d = k + 1;
    std::vector<double> m1(d), m2(d);
    for (std::size_t i = 0; i < N; ++i)
      for (int c = 0; c < d; ++c) {
        m1[c] += pts.point(i)[c];
        m2[c] += pts.point(i)[c] * pts.point(i)[c];
      }
    for (int c = 0; c < d; ++c) {
      EXPECT_NEAR(m1[c] / N, 0.0, 5 / std::sqrt(double(N)));
      EXPECT_NEAR(m2[c] / N, 1.0 / d, 5 * 0.3 / std::sqrt(double(N)));
    }
  }
}

TEST(Uniform, ZCoordinateIsUniformOnS2) {
  // Archimedes: z is uniform on [-1, 1]. Chi-square over 20 bins.
  const std::size_t N = 100000;
  const auto pts = sample_uniform_sphere(N, 2, 5);
  std::vector<double> bins(20);
  for (std::size_t i = 0; i < N; ++i) bins[std::min<std::size_t>(19, (pts.point(i)[2] + 1) * 10)] += 1;
  double chi2 = 0;
  for (double b : bins) chi2 += (b - N / 20.0) * (b - N / 20.0) / (N / 20.0);
  EXPECT_LT(chi2, 43.8);  // 0.999 quantile, 19 dof
}

TEST(SplitSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(split_seed(20100501, i));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_EQ(split_seed(1, 2), split_seed(1, 2));
}

TEST(HexPatch, PlanarLatticeHasSixEqualNeighbours) {
  HexPatchOptions opt;
  opt.n_target = 4000;
  const auto xy = hex_patch_planar(opt);
  const double s = std::sqrt(8 * std::numbers::pi / (std::sqrt(3.0) * opt.n_target));
  const double R = 2 * std::sqrt(opt.cap_fraction);
  std::size_t interior = 0;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    if (std::hypot(xy[i][0], xy[i][1]) > R - 2 * s) continue;
    ++interior;
    int near = 0;
    for (std::size_t j = 0; j < xy.size(); ++j) {
      if (i == j) continue;
      const double d = std::hypot(xy[i][0] - xy[j][0], xy[i][1] - xy[j][1]);
      if (d < 1.5 * s) {
        ++near;
        EXPECT_NEAR(d / s, 1.0, 0.01);
      }
    }
    EXPECT_EQ(near, 6);
  }
  EXPECT_GT(interior, 50u);
}

TEST(HexPatch, SphericalSpacingIsNearlyConstant) {
  HexPatchOptions opt;
  opt.n_target = 4000;
  const auto pts = hex_patch(opt);
  EXPECT_LT(pts.max_norm_error(), 1e-15);
  const auto nn = stats::nn_distances_bruteforce(pts);
  double mean = 0, var = 0;
  for (double d : nn) mean += d;
  mean /= nn.size();
  for (double d : nn) var += (d - mean) * (d - mean);
  EXPECT_LT(std::sqrt(var / (nn.size() - 1)) / mean, 0.05);
  // Min spacing times sqrt(N) for the triangular lattice: sqrt(8 pi / sqrt 3).
  const double m = stats::min_spacing(pts) * std::sqrt(double(opt.n_target));
  EXPECT_NEAR(m / std::sqrt(8 * std::numbers::pi / std::sqrt(3.0)), 1.0, 0.15);
}

TEST(HexPatch, CoversRequestedFraction) {
  HexPatchOptions opt;
  opt.n_target = 10000;
  opt.cap_fraction = 0.1;
  EXPECT_NEAR(double(hex_patch(opt).size()) / opt.n_target, opt.cap_fraction, 0.01);
  opt.n_target = 3;
  EXPECT_THROW(hex_patch(opt), DomainError);
}

TEST(MonteCarlo, DeterministicAndIndexed) {
  const auto a = monte_carlo(Statistic::min_spacing, {}, 500, 2, 4, 17);
  const auto b = monte_carlo(Statistic::min_spacing, {}, 500, 2, 4, 17);
  EXPECT_EQ(a.values, b.values);
  ASSERT_EQ(a.values.size(), 4u);
  // Run i uses split_seed(seed, i).
  EXPECT_EQ(a.values[2], stats::min_spacing(sample_uniform_sphere(500, 2, split_seed(17, 2))));
  ASSERT_TRUE(a.stddev.has_value());
  double mean = 0;
  for (double v : a.values) mean += v;
  EXPECT_NEAR(a.mean, mean / 4, 1e-15);
  EXPECT_NEAR(a.standard_error(), *a.stddev / 2, 1e-15);
  EXPECT_FALSE(monte_carlo(Statistic::min_spacing, {}, 50, 2, 1, 1).stddev.has_value());
}

TEST(MonteCarlo, RandomEnergyDeviationIsUnbiasedAtSmallN) {
  // E[1 / |P - Q|] = 1 on S^2, so E - N (N - 1) has mean 0.
  const auto s = monte_carlo(Statistic::energy_deviation, {}, 400, 2, 60, 3);
  EXPECT_LT(std::abs(s.mean), 4 * s.standard_error());
}

TEST(MonteCarlo, NamedStatistics) {
  for (const char* name : {"energy_deviation", "ripley", "min_spacing", "covering", "spacing_ks", "cap_discrepancy"}) {
    const auto st = parse_statistic(name);
    ASSERT_TRUE(st.has_value()) << name;
    EXPECT_EQ(to_string(*st), name);
  }
  EXPECT_FALSE(parse_statistic("nope").has_value());
}
