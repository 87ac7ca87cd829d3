#pragma once

#include "nppq/hamiltonians.hpp"
#include "nppq/statevector.hpp"

namespace nppq {

/// epsilon = 1 - (E_max - E) / (E_max - E_min), clamped to [0, 1] against
/// rounding. A flat spectrum (E_max == E_min) yields 0.
double approximation_error(const ProblemHamiltonian& hp, double energy);

/// Total probability on the ground-state basis indices of H_P.
double success_probability(const ProblemHamiltonian& hp,
                           const StateVector& state);

/// I_eff = P_S / N_eval.
double optimization_efficiency(double p_success, long long n_eval);

/// R_eff = I'_eff / I_eff (adaptive over standard). Returns +inf when the
/// standard efficiency is zero and the adaptive one is not, NaN when both
/// are zero.
double efficiency_ratio(double adaptive_efficiency, double standard_efficiency);

}  // namespace nppq
