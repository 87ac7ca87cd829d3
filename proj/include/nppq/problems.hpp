#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nppq/hamiltonians.hpp"
#include "nppq/optimizer.hpp"
#include "nppq/qa.hpp"
#include "nppq/qaoa.hpp"

namespace nppq {

enum class Algorithm { qa, qa_path, qa_fields, qaoa, qaoa_adaptive };

std::string_view to_string(Algorithm a);
/// Accepts the CLI spellings: qa, qa-path, qa-fields, qaoa, qaoa-adaptive.
Algorithm parse_algorithm(std::string_view s);
bool is_qaoa(Algorithm a);

inline constexpr int kDefaultCutoff = 6;
inline constexpr int kQaRestarts = 50;
inline constexpr int kQaoaRestarts = 200;
inline constexpr double kFieldLowerBound = 1e-6;
inline constexpr double kDefaultAnnealTime = 50.0;

struct ProblemSettings {
  double total_time = kDefaultAnnealTime;  // QA variants
  double dt = 0.0;                         // 0 selects T / 1000
  std::optional<int> restarts;             // overrides the default budget
  long long max_eval_per_start = 2000;
  std::uint64_t seed = 0;
};

/// Search spaces and default budgets:
///   qa-path        dim C,        b_m in [-1, 1],        50 starts
///   qa-fields      dim n,        h_i in [1e-6, 1],      50 starts
///   qaoa           dim 2p,       beta in [0, pi/2], gamma in [0, pi], 200 starts
///   qaoa-adaptive  dim 2p + n,   plus alpha in [-0.5, 0.5], 200 starts
/// `depth` is C for qa-path and p for the QAOA variants. The objective is
/// the energy <H_P> of the final or ansatz state. Throws
/// std::invalid_argument for Algorithm::qa, which has no parameters.
OptProblem default_problem_for(Algorithm algo, const NppInstance& inst,
                               int depth, const ProblemSettings& settings = {});

/// Parameter-vector decoders matching default_problem_for's layout.
QaConfig qa_config_from(Algorithm algo, int n, std::span<const double> x,
                        double total_time, double dt = 0.0);
QaoaParams qaoa_params_from(Algorithm algo, int n, int p,
                            std::span<const double> x);

struct AlgorithmEval {
  double energy = 0.0;
  double epsilon = 0.0;
  double p_success = 0.0;
  double duration = 0.0;  // T for QA, T_QAOA for QAOA
};

/// Final metrics of one parameter vector (empty for Algorithm::qa).
AlgorithmEval evaluate_algorithm(Algorithm algo, const ProblemHamiltonian& hp,
                                 int depth, std::span<const double> x,
                                 double total_time = kDefaultAnnealTime,
                                 double dt = 0.0);

/// Adaptive start with alpha on the ray of the instance weights, scaled to
/// fit the alpha box; beta and gamma left NaN (drawn uniformly).
std::vector<double> adaptive_seed_start(const NppInstance& inst, int p);

}  // namespace nppq
