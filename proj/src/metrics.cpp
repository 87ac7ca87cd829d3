#include "nppq/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nppq {

double approximation_error(const ProblemHamiltonian& hp, double energy) {
  const double span = hp.e_max - hp.e_min;
  if (!(span > 0.0)) return 0.0;
  const double eps = 1.0 - (hp.e_max - energy) / span;
  return std::clamp(eps, 0.0, 1.0);
}

double success_probability(const ProblemHamiltonian& hp,
                           const StateVector& state) {
  if (state.n() != hp.n()) {
    throw std::invalid_argument("success_probability: qubit count mismatch");
  }
  return std::clamp(probability_of(state, hp.ground_indices), 0.0, 1.0);
}

double optimization_efficiency(double p_success, long long n_eval) {
  if (n_eval <= 0) throw std::domain_error("optimization_efficiency: N_eval <= 0");
  return p_success / static_cast<double>(n_eval);
}

double efficiency_ratio(double adaptive_efficiency,
                        double standard_efficiency) {
  if (standard_efficiency == 0.0) {
    return adaptive_efficiency == 0.0
               ? std::numeric_limits<double>::quiet_NaN()
               : std::numeric_limits<double>::infinity();
  }
  return adaptive_efficiency / standard_efficiency;
}

}  // namespace nppq
