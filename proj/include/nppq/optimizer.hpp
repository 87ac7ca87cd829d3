#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nppq {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  long long max_evals = 2000;
  double xtol = 1e-6;   // simplex diameter (max-norm) for convergence
  double ftol = 1e-9;   // spread of vertex values for convergence
  double initial_step = 0.1;  // fraction of each box width
};

enum class LocalStatus { converged, budget, aborted };

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  long long evals = 0;
  LocalStatus status = LocalStatus::converged;
  std::string note;
};

/// Bounded Nelder-Mead: every trial point is projected onto the box before
/// it is evaluated. Uses the dimension-adaptive coefficients of Gao & Han
/// for dim >= 2. A non-finite objective value aborts the run.
LocalResult nelder_mead(const Objective& f, std::vector<double> x0,
                        std::span<const double> lower,
                        std::span<const double> upper,
                        const NelderMeadOptions& opts = {});

struct OptProblem {
  int dim = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Provenance only: coordinates whose lower bound stands in for a strict
  /// inequality (h_i > 0 realized as h_i >= 1e-6).
  std::vector<bool> lower_open;
  Objective objective;
  int restarts = 1;
  long long max_eval_per_start = 2000;
  std::uint64_t seed = 0;
  /// Explicit start points used by the first restarts. NaN coordinates are
  /// drawn uniformly like an ordinary start.
  std::vector<std::vector<double>> seeded_starts;
  double xtol = 1e-6;
  double ftol = 1e-9;

  /// Throws std::invalid_argument if bounds are missing, non-finite or
  /// inverted, or restarts < 1.
  void validate() const;
};

struct RestartTrace {
  std::vector<double> start;
  std::vector<double> final_params;
  double final_value = 0.0;  // +inf for an aborted restart
  long long evals = 0;
  LocalStatus status = LocalStatus::converged;
  std::string note;
};

struct OptOutcome {
  std::vector<double> best_params;
  double best_value = 0.0;
  long long n_eval_total = 0;
  std::vector<RestartTrace> restarts;
  int best_restart = -1;
};

/// Runs nelder_mead from `restarts` start points (uniform in the box from
/// a per-restart stream derived from `seed`). Restarts run in parallel;
/// the outcome does not depend on scheduling. Ties keep the lowest restart
/// index.
OptOutcome multistart_minimize(const OptProblem& prob);

/// Start point of restart r as used by multistart_minimize.
std::vector<double> start_point(const OptProblem& prob, int restart);

}  // namespace nppq
