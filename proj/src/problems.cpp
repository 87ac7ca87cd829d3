#include "nppq/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nppq/metrics.hpp"

namespace nppq {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::qa: return "qa";
    case Algorithm::qa_path: return "qa-path";
    case Algorithm::qa_fields: return "qa-fields";
    case Algorithm::qaoa: return "qaoa";
    case Algorithm::qaoa_adaptive: return "qaoa-adaptive";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::qa, Algorithm::qa_path, Algorithm::qa_fields,
                 Algorithm::qaoa, Algorithm::qaoa_adaptive}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

bool is_qaoa(Algorithm a) {
  return a == Algorithm::qaoa || a == Algorithm::qaoa_adaptive;
}

QaConfig qa_config_from(Algorithm algo, int n, std::span<const double> x,
                        double total_time, double dt) {
  QaConfig cfg = standard_qa_config(n, total_time);
  cfg.dt = dt;
  switch (algo) {
    case Algorithm::qa:
      break;
    case Algorithm::qa_path:
      cfg.schedule.b.assign(x.begin(), x.end());
      break;
    case Algorithm::qa_fields:
      if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("qa-fields: expected n parameters");
      }
      cfg.drive.h.assign(x.begin(), x.end());
      break;
    default:
      throw std::invalid_argument("qa_config_from: not a QA algorithm");
  }
  return cfg;
}

QaoaParams qaoa_params_from(Algorithm algo, int n, int p,
                            std::span<const double> x) {
  const auto expected = static_cast<std::size_t>(
      2 * p + (algo == Algorithm::qaoa_adaptive ? n : 0));
  if (!is_qaoa(algo) || x.size() != expected) {
    throw std::invalid_argument("qaoa_params_from: parameter layout mismatch");
  }
  QaoaParams params;
  params.beta.assign(x.begin(), x.begin() + p);
  params.gamma.assign(x.begin() + p, x.begin() + 2 * p);
  if (algo == Algorithm::qaoa_adaptive) {
    params.alpha.emplace(x.begin() + 2 * p, x.end());
  }
  return params;
}

std::vector<double> adaptive_seed_start(const NppInstance& inst, int p) {
  std::vector<double> x(static_cast<std::size_t>(2 * p + inst.n),
                        std::numeric_limits<double>::quiet_NaN());
  const double wmax = *std::max_element(inst.weights.begin(), inst.weights.end());
  const double scale = std::min(1.0, kAlphaBound / wmax);
  for (int i = 0; i < inst.n; ++i) x[2 * p + i] = scale * inst.weights[i];
  return x;
}

OptProblem default_problem_for(Algorithm algo, const NppInstance& inst,
                               int depth, const ProblemSettings& settings) {
  auto hp = std::make_shared<const ProblemHamiltonian>(build_hp(inst));
  OptProblem prob;
  prob.seed = settings.seed;
  prob.max_eval_per_start = settings.max_eval_per_start;
  const int n = inst.n;

  switch (algo) {
    case Algorithm::qa:
      throw std::invalid_argument("standard QA has no variational parameters");

    case Algorithm::qa_path:
    case Algorithm::qa_fields: {
      if (algo == Algorithm::qa_path) {
        if (depth < 1) throw std::invalid_argument("qa-path: cutoff C must be >= 1");
        prob.dim = depth;
        prob.lower.assign(depth, -1.0);
        prob.upper.assign(depth, 1.0);
        prob.lower_open.assign(depth, false);
      } else {
        prob.dim = n;
        prob.lower.assign(n, kFieldLowerBound);
        prob.upper.assign(n, 1.0);
        prob.lower_open.assign(n, true);
      }
      prob.restarts = kQaRestarts;
      const double T = settings.total_time;
      const double dt = settings.dt;
      prob.objective = [hp, algo, n, T, dt](std::span<const double> x) {
        return evolve(*hp, qa_config_from(algo, n, x, T, dt)).energy;
      };
      break;
    }

    case Algorithm::qaoa:
    case Algorithm::qaoa_adaptive: {
      if (depth < 1) throw std::invalid_argument("QAOA: depth p must be >= 1");
      const int p = depth;
      prob.dim = 2 * p;
      prob.lower.assign(2 * p, 0.0);
      prob.upper.assign(p, kBetaMax);
      prob.upper.insert(prob.upper.end(), p, kGammaMax);
      if (algo == Algorithm::qaoa_adaptive) {
        prob.dim += n;
        prob.lower.insert(prob.lower.end(), n, -kAlphaBound);
        prob.upper.insert(prob.upper.end(), n, kAlphaBound);
        prob.seeded_starts.push_back(adaptive_seed_start(inst, p));
      }
      prob.lower_open.assign(prob.dim, false);
      prob.restarts = kQaoaRestarts;
      prob.objective = [hp, algo, n, p](std::span<const double> x) {
        return cost(*hp, qaoa_params_from(algo, n, p, x));
      };
      break;
    }
  }
  if (settings.restarts) prob.restarts = *settings.restarts;
  return prob;
}

AlgorithmEval evaluate_algorithm(Algorithm algo, const ProblemHamiltonian& hp,
                                 int depth, std::span<const double> x,
                                 double total_time, double dt) {
  AlgorithmEval ev;
  if (is_qaoa(algo)) {
    const auto r = evaluate(hp, qaoa_params_from(algo, hp.n(), depth, x));
    ev.energy = r.energy;
    ev.epsilon = r.epsilon;
    ev.p_success = r.p_success;
    ev.duration = r.t_total;
  } else {
    const auto r = evolve(hp, qa_config_from(algo, hp.n(), x, total_time, dt));
    ev.energy = r.energy;
    ev.epsilon = r.epsilon;
    ev.p_success = r.p_success;
    ev.duration = total_time;
  }
  return ev;
}

}  // namespace nppq
