#include "nppq/qaoa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nppq/metrics.hpp"

namespace nppq {

namespace {

void check_range(const std::vector<double>& v, double lo, double hi,
                 const char* name) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(v[k] >= lo && v[k] <= hi)) {
      throw std::domain_error(std::string(name) + "[" + std::to_string(k) +
                              "] = " + std::to_string(v[k]) + " outside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
    }
  }
}

void check_finite(const std::vector<double>& v, const char* name) {
  for (const auto x : v) {
    if (!std::isfinite(x)) {
      throw std::domain_error(std::string(name) + " has a non-finite entry");
    }
  }
}

}  // namespace

void validate(const QaoaParams& params, int n, Bounds bounds) {
  if (params.beta.size() != params.gamma.size()) {
    throw std::invalid_argument("QAOA: beta and gamma lengths differ");
  }
  if (params.alpha && static_cast<int>(params.alpha->size()) != n) {
    throw std::invalid_argument("QAOA: alpha must have one entry per qubit");
  }
  check_finite(params.beta, "beta");
  check_finite(params.gamma, "gamma");
  if (params.alpha) check_finite(*params.alpha, "alpha");
  if (bounds == Bounds::lifted) return;
  check_range(params.beta, 0.0, kBetaMax, "beta");
  check_range(params.gamma, 0.0, kGammaMax, "gamma");
  if (params.alpha) check_range(*params.alpha, -kAlphaBound, kAlphaBound, "alpha");
}

StateVector ansatz_state(const ProblemHamiltonian& hp, const QaoaParams& params,
                         Bounds bounds) {
  validate(params, hp.n(), bounds);
  StateVector state = StateVector::plus(hp.n());
  const DiagonalOp* phase_op = &hp.diag;
  DiagonalOp deformed;
  if (params.alpha) {
    deformed = square_form_diagonal(*params.alpha);
    phase_op = &deformed;
  }
  for (int k = 0; k < params.p(); ++k) {
    apply_diagonal_phase(state, *phase_op, params.gamma[k]);
    apply_uniform_x_rotation(state, params.beta[k]);
  }
  return state;
}

StateVector ansatz_state(const NppInstance& inst, const QaoaParams& params,
                         Bounds bounds) {
  return ansatz_state(build_hp(inst), params, bounds);
}

double cost(const ProblemHamiltonian& hp, const QaoaParams& params,
            Bounds bounds) {
  return expectation(ansatz_state(hp, params, bounds), hp.diag);
}

double cost(const NppInstance& inst, const QaoaParams& params, Bounds bounds) {
  return cost(build_hp(inst), params, bounds);
}

double duration(const QaoaParams& params) {
  double t = 0.0;
  for (std::size_t k = 0; k < params.beta.size(); ++k) {
    t += params.beta[k] + params.gamma[k];
  }
  return t;
}

QaoaResult evaluate(const ProblemHamiltonian& hp, const QaoaParams& params,
                    long long n_eval) {
  const auto state = ansatz_state(hp, params);
  QaoaResult r;
  r.energy = expectation(state, hp.diag);
  r.epsilon = approximation_error(hp, r.energy);
  r.p_success = success_probability(hp, state);
  r.t_total = duration(params);
  r.n_eval = n_eval;
  r.params = params;
  return r;
}

}  // namespace nppq
