#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "nppq/spectra.hpp"
#include "oracles.hpp"

using namespace nppq;

namespace {

// Gap scan through full Kronecker-built matrices and Eigen's solver.
double oracle_gap(const NppInstance& inst, const std::vector<double>& h, int points,
                  std::size_t d) {
  const oracle::Mat hd = oracle::drive(h);
  const oracle::Mat hp = oracle::problem(inst.weights);
  double gap = INFINITY;
  for (int k = 0; k < points; ++k) {
    const double lam = static_cast<double>(k) / (points - 1);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es((1 - lam) * hd + lam * hp);
    gap = std::min(gap, es.eigenvalues()(d) - es.eigenvalues()(0));
  }
  return gap;
}

}  // namespace

TEST(Gap, PerfectPairAgainstDenseScan) {
  const auto inst = make_instance({1, 1});
  const auto scan = scan_gap(inst, DriveSpec::uniform(2), 101);
  EXPECT_EQ(scan.d, 2u);
  // Independent numpy eigvalsh scan over the same grid, then a bounded
  // scalar minimization between the neighbouring grid points.
  EXPECT_NEAR(scan.grid_gap, 0.2491057437854365, 1e-12);
  EXPECT_NEAR(scan.grid_gap, oracle_gap(inst, {1, 1}, 101, 2), 1e-12);
  EXPECT_NEAR(scan.relevant_gap, 0.24902723735408555, 1e-10);
  EXPECT_NEAR(scan.argmin_lambda, 0.9922178982922172, 1e-5);
}

TEST(Gap, MatchesOracleOnRandomInstances) {
  for (const int n : {3, 5, 6}) {
    const auto inst = generate_instance(n, 11 * n);
    DriveSpec drive = DriveSpec::uniform(n);
    drive.h[0] = 0.4;
    const auto scan = scan_gap(inst, drive, 41);
    EXPECT_NEAR(scan.grid_gap, oracle_gap(inst, drive.h, 41, scan.d), 1e-10);
    EXPECT_LE(scan.relevant_gap, scan.grid_gap);
    const auto full = scan_gap(inst, drive, 41, ScanOptions{.use_sectors = false});
    EXPECT_NEAR(scan.relevant_gap, full.relevant_gap, 1e-10);
  }
}

TEST(Gap, EndpointEqualsDiagonalGap) {
  for (int n = 2; n <= 9; ++n) {
    const auto inst = generate_instance(n, 500 + n);
    const auto scan = scan_gap(inst, DriveSpec::uniform(n), 21);
    const auto hp = build_hp(inst);
    auto d = hp.diag.diag;
    std::sort(d.begin(), d.end());
    const double expected = d[hp.degeneracy()] - d[0];
    EXPECT_EQ(scan.diagonal_gap, expected);
    EXPECT_EQ(diagonal_gap(hp), expected);
    ASSERT_EQ(scan.lambda_grid.back(), 1.0);
    const auto& last = scan.levels.back();
    EXPECT_EQ(last[scan.d] - last[0], expected);
    EXPECT_LE(scan.relevant_gap, scan.diagonal_gap);
    EXPECT_GE(scan.relevant_gap, 0.0);
    EXPECT_EQ(last.size(), scan.d + 2);
  }
}

TEST(Gap, GridRefinementContract) {
  for (const int n : {4, 6}) {
    const auto inst = generate_instance(n, 77 + n);
    const auto coarse = scan_gap(inst, DriveSpec::uniform(n), 101);
    const auto fine = scan_gap(inst, DriveSpec::uniform(n), 201);
    EXPECT_LT(std::abs(coarse.relevant_gap - fine.relevant_gap), 1e-3);
    EXPECT_LE(fine.relevant_gap, fine.grid_gap);
  }
}

TEST(Gap, UniformDriveGroundAtZero) {
  const auto inst = generate_instance(6, 4);
  const DriveSpec drive{{1.0, 0.5, 0.3, 0.9, 0.2, 0.7}};
  const auto lv = lowest_levels(build_hp(inst).diag, drive, 0.0, 3);
  EXPECT_NEAR(lv[0], -drive.total(), 1e-12);
  const auto lv_full = lowest_levels(build_hp(inst).diag, drive, 0.0, 3, false);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(lv[k], lv_full[k], 1e-12);
}

TEST(Gap, PartialLambdaRangeAndGuards) {
  const auto inst = generate_instance(4, 9);
  ScanOptions opts;
  opts.lambda_lo = -0.2;
  opts.lambda_hi = 1.3;
  const auto scan = scan_gap(inst, DriveSpec::uniform(4), 31, opts);
  EXPECT_EQ(scan.lambda_grid.front(), -0.2);
  EXPECT_EQ(scan.lambda_grid.back(), 1.3);
  EXPECT_TRUE(std::count(scan.lambda_grid.begin(), scan.lambda_grid.end(), 0.0));
  EXPECT_TRUE(std::count(scan.lambda_grid.begin(), scan.lambda_grid.end(), 1.0));
  EXPECT_TRUE(std::is_sorted(scan.lambda_grid.begin(), scan.lambda_grid.end()));

  EXPECT_THROW(scan_gap(generate_instance(13, 1), DriveSpec::uniform(13), 21), std::domain_error);
  EXPECT_THROW(scan_gap(inst, DriveSpec::uniform(4), 10), std::domain_error);
  EXPECT_THROW(scan_gap(inst, DriveSpec::uniform(3), 21), std::invalid_argument);
}

TEST(Quasi, HandCounts) {
  const auto inst = make_instance({3, 1});
  EXPECT_EQ(count_quasi_optimal(inst, 0.1), 0u);
  EXPECT_EQ(count_quasi_optimal(inst, 1.0), 2u);
  EXPECT_EQ(count_quasi_levels(inst, 1.0), 1u);
  EXPECT_EQ(count_quasi_optimal(inst, 0.75), 2u);  // boundary included
  EXPECT_THROW(count_quasi_optimal(inst, 0.0), std::domain_error);
}

TEST(Quasi, MonotoneAndConsistent) {
  for (int n = 4; n <= 10; n += 3) {
    const auto inst = generate_instance(n, n);
    const auto hp = build_hp(inst);
    std::size_t prev = 0, prev_levels = 0;
    for (const double delta : {0.001, 0.01, 0.05, 0.1, 0.5, 2.0}) {
      const auto c = count_quasi_optimal(inst, delta);
      const auto l = count_quasi_levels(inst, delta);
      EXPECT_GE(c, prev);
      EXPECT_GE(l, prev_levels);
      EXPECT_LE(l, c);
      std::size_t brute = 0;
      for (double e : hp.diag.diag) brute += (e > hp.e_min && e <= hp.e_min + delta);
      EXPECT_EQ(c, brute);
      prev = c;
      prev_levels = l;
    }
  }
}

TEST(Schedule, LambdaRange) {
  const auto [lo, hi] = lambda_range(ScheduleSpec::linear(10.0));
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);
  const auto [lo2, hi2] = lambda_range(ScheduleSpec{10.0, {0.5}});
  EXPECT_EQ(lo2, 0.0);
  EXPECT_GT(hi2, 1.0);
  const auto [lo3, hi3] = lambda_range(ScheduleSpec{10.0, {-0.5}});
  EXPECT_LT(lo3, 0.0);
}
