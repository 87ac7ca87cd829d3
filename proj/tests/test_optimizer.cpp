#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "nppq/optimizer.hpp"
#include "nppq/problems.hpp"
#include "nppq/rng.hpp"

using namespace nppq;
using std::numbers::pi;

namespace {

OptProblem box1d(Objective f, int restarts, std::uint64_t seed, double lo = 0.0,
                 double hi = 1.0) {
  OptProblem p;
  p.dim = 1;
  p.lower = {lo};
  p.upper = {hi};
  p.objective = std::move(f);
  p.restarts = restarts;
  p.seed = seed;
  return p;
}

double rastrigin(std::span<const double> x) {
  return 10.0 + x[0] * x[0] - 10.0 * std::cos(2 * pi * x[0]);
}

}  // namespace

TEST(NelderMead, ConvexQuadratic) {
  const auto prob = box1d([](auto x) { return (x[0] - 0.3) * (x[0] - 0.3); }, 5, 1);
  const auto out = multistart_minimize(prob);
  EXPECT_LT(out.best_value, 1e-8);
  EXPECT_NEAR(out.best_params[0], 0.3, 1e-4);
}

TEST(NelderMead, TwoDimensionalBowlAndBoundary) {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 2.0) * (x[0] - 2.0) + 3 * (x[1] + 0.25) * (x[1] + 0.25);
  };
  const std::vector<double> lo{0, -1}, hi{1, 1};
  const auto r = nelder_mead(f, {0.5, 0.5}, lo, hi);
  EXPECT_EQ(r.status, LocalStatus::converged);
  // Constrained optimum sits on the x0 = 1 face.
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -0.25, 1e-4);
}

TEST(NelderMead, RastriginIsReproducible) {
  const auto prob = box1d(rastrigin, 50, 99, -1.0, 1.0);
  const auto a = multistart_minimize(prob);
  const auto b = multistart_minimize(prob);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_params, b.best_params);
  EXPECT_EQ(a.n_eval_total, b.n_eval_total);
  EXPECT_LT(a.best_value, 1e-8);
}

TEST(NelderMead, OutcomeInvariants) {
  auto prob = box1d(rastrigin, 20, 5, -1.0, 1.0);
  std::atomic<long long> calls{0};
  prob.objective = [&](std::span<const double> x) {
    ++calls;
    EXPECT_GE(x[0], -1.0);
    EXPECT_LE(x[0], 1.0);
    return rastrigin(x);
  };
  prob.max_eval_per_start = 15;
  const auto out = multistart_minimize(prob);
  ASSERT_EQ(out.restarts.size(), 20u);
  long long sum = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : out.restarts) {
    EXPECT_LE(r.evals, 15);
    sum += r.evals;
    best = std::min(best, r.final_value);
  }
  EXPECT_EQ(sum, out.n_eval_total);
  EXPECT_EQ(calls.load(), out.n_eval_total);
  EXPECT_EQ(best, out.best_value);
  EXPECT_EQ(out.restarts[out.best_restart].final_value, out.best_value);
}

TEST(NelderMead, MoreRestartsNeverHurt) {
  double prev = std::numeric_limits<double>::infinity();
  for (const int r : {1, 2, 4, 8, 16}) {
    const auto out = multistart_minimize(box1d(rastrigin, r, 7, -1.0, 1.0));
    EXPECT_LE(out.best_value, prev);
    prev = out.best_value;
    // Restart k starts at the same point whatever the total count.
    EXPECT_EQ(out.restarts[0].start, start_point(box1d(rastrigin, 1, 7, -1, 1), 0));
  }
}

TEST(NelderMead, NonFiniteObjectiveAbortsOnlyThatRestart) {
  auto prob = box1d([](auto x) { return x[0] > 0.5 ? std::nan("") : x[0]; }, 6, 3);
  prob.seeded_starts = {{0.9}, {0.1}};
  const auto out = multistart_minimize(prob);
  EXPECT_EQ(out.restarts[0].status, LocalStatus::aborted);
  EXPECT_TRUE(std::isinf(out.restarts[0].final_value));
  EXPECT_FALSE(out.restarts[0].note.empty());
  EXPECT_NE(out.restarts[1].status, LocalStatus::aborted);
  EXPECT_LT(out.best_value, 1e-6);
}

TEST(NelderMead, SeededStartsWithNanCoordinates) {
  OptProblem prob;
  prob.dim = 2;
  prob.lower = {0, 0};
  prob.upper = {1, 1};
  prob.objective = [](auto x) { return x[0] + x[1]; };
  prob.seeded_starts = {{0.25, std::nan("")}};
  const auto s = start_point(prob, 0);
  EXPECT_EQ(s[0], 0.25);
  EXPECT_GE(s[1], 0.0);
  EXPECT_LE(s[1], 1.0);
}

TEST(NelderMead, ValidationErrors) {
  auto prob = box1d([](auto x) { return x[0]; }, 1, 1);
  prob.restarts = 0;
  EXPECT_THROW(prob.validate(), std::invalid_argument);
  prob = box1d([](auto x) { return x[0]; }, 1, 1, 1.0, 0.0);
  EXPECT_THROW(prob.validate(), std::invalid_argument);
  prob = box1d([](auto x) { return x[0]; }, 1, 1, 0.0, INFINITY);
  EXPECT_THROW(prob.validate(), std::invalid_argument);
}

TEST(Problems, DimensionsAndBounds) {
  {
    const auto p = default_problem_for(Algorithm::qa_path, generate_instance(8, 1), 6);
    EXPECT_EQ(p.dim, 6);
    EXPECT_EQ(p.restarts, 50);
    for (int i = 0; i < 6; ++i) {
      EXPECT_EQ(p.lower[i], -1.0);
      EXPECT_EQ(p.upper[i], 1.0);
    }
  }
  {
    const auto p = default_problem_for(Algorithm::qa_fields, generate_instance(9, 1), 0);
    EXPECT_EQ(p.dim, 9);
    EXPECT_EQ(p.restarts, 50);
    EXPECT_EQ(p.lower[0], 1e-6);
    EXPECT_TRUE(p.lower_open[0]);
    EXPECT_EQ(p.upper[8], 1.0);
  }
  {
    const auto p = default_problem_for(Algorithm::qaoa, generate_instance(6, 1), 4);
    EXPECT_EQ(p.dim, 8);
    EXPECT_EQ(p.restarts, 200);
    EXPECT_EQ(p.upper[0], pi / 2);
    EXPECT_EQ(p.upper[4], pi);
  }
  {
    const auto p = default_problem_for(Algorithm::qaoa_adaptive, generate_instance(6, 1), 3);
    EXPECT_EQ(p.dim, 12);
    EXPECT_EQ(p.lower[6], -0.5);
    EXPECT_EQ(p.upper[11], 0.5);
  }
  EXPECT_THROW(default_problem_for(Algorithm::qa, generate_instance(6, 1), 0),
               std::invalid_argument);
  ProblemSettings s;
  s.restarts = 3;
  EXPECT_EQ(default_problem_for(Algorithm::qaoa, generate_instance(6, 1), 1, s).restarts, 3);
}

TEST(Problems, AdaptiveSeedStaysInsideBox) {
  const auto inst = generate_instance(7, 4);
  const auto x = adaptive_seed_start(inst, 2);
  ASSERT_EQ(x.size(), 11u);
  EXPECT_TRUE(std::isnan(x[0]) && std::isnan(x[3]));
  double amax = 0.0;
  for (int i = 0; i < 7; ++i) {
    amax = std::max(amax, std::abs(x[4 + i]));
    // Same direction as the instance weights.
    EXPECT_NEAR(x[4 + i] / x[4], inst.weights[i] / inst.weights[0], 1e-12);
  }
  EXPECT_LE(amax, 0.5);
}

TEST(Problems, QaoaBeatsRandomProbes) {
  const auto inst = generate_instance(6, 21);
  ProblemSettings s;
  s.restarts = 10;
  s.seed = 4;
  const auto prob = default_problem_for(Algorithm::qaoa, inst, 1, s);
  const auto out = multistart_minimize(prob);
  Xoshiro256 rng(123);
  for (int k = 0; k < 25; ++k) {
    const double x[2] = {rng.uniform(0, pi / 2), rng.uniform(0, pi)};
    EXPECT_LE(out.best_value, prob.objective(x));
  }
}

TEST(Problems, DecodersRoundTrip) {
  const std::vector<double> x{0.1, 0.2, 1.0, 2.0, 0.3, -0.2, 0.4};
  const auto q = qaoa_params_from(Algorithm::qaoa_adaptive, 3, 2, x);
  EXPECT_EQ(q.beta, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(q.gamma, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(*q.alpha, (std::vector<double>{0.3, -0.2, 0.4}));

  const std::vector<double> b{0.5, -0.5};
  const auto c = qa_config_from(Algorithm::qa_path, 4, b, 30.0);
  EXPECT_EQ(c.schedule.b, b);
  EXPECT_EQ(c.drive.h, std::vector<double>(4, 1.0));
  const std::vector<double> h{0.5, 0.25, 1.0};
  const auto f = qa_config_from(Algorithm::qa_fields, 3, h, 30.0);
  EXPECT_EQ(f.drive.h, h);
  EXPECT_TRUE(f.schedule.b.empty());
  EXPECT_EQ(parse_algorithm("qa-fields"), Algorithm::qa_fields);
  EXPECT_EQ(to_string(Algorithm::qaoa_adaptive), "qaoa-adaptive");
  EXPECT_THROW(parse_algorithm("vqe"), std::invalid_argument);
}
