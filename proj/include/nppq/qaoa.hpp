#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "nppq/hamiltonians.hpp"
#include "nppq/statevector.hpp"

namespace nppq {

inline constexpr double kBetaMax = std::numbers::pi / 2;
inline constexpr double kGammaMax = std::numbers::pi;
inline constexpr double kAlphaBound = 0.5;

/// Layer durations for p layers. With `alpha` set, every phase layer uses
/// H_NPP(alpha) instead of H_P (one alpha vector shared by all layers).
struct QaoaParams {
  std::vector<double> beta;
  std::vector<double> gamma;
  std::optional<std::vector<double>> alpha;

  int p() const noexcept { return static_cast<int>(beta.size()); }
  bool adaptive() const noexcept { return alpha.has_value(); }
};

enum class Bounds { enforce, lifted };

/// Throws std::invalid_argument on size mismatch and, with
/// Bounds::enforce, std::domain_error if beta_k is outside [0, pi/2],
/// gamma_k outside [0, pi] or alpha_i outside [-0.5, 0.5].
void validate(const QaoaParams& params, int n, Bounds bounds = Bounds::enforce);

/// prod_k exp(-i beta_k H_D) exp(-i gamma_k H) |+>^n with H_D the uniform
/// drive and H = H_P or H_NPP(alpha).
StateVector ansatz_state(const ProblemHamiltonian& hp, const QaoaParams& params,
                         Bounds bounds = Bounds::enforce);
StateVector ansatz_state(const NppInstance& inst, const QaoaParams& params,
                         Bounds bounds = Bounds::enforce);

/// <H_P> in the ansatz state. Always the instance's H_P, also for the
/// adaptive ansatz.
double cost(const ProblemHamiltonian& hp, const QaoaParams& params,
            Bounds bounds = Bounds::enforce);
double cost(const NppInstance& inst, const QaoaParams& params,
            Bounds bounds = Bounds::enforce);

/// T_QAOA = sum_k beta_k + gamma_k.
double duration(const QaoaParams& params);

struct QaoaResult {
  double energy = 0.0;
  double epsilon = 0.0;
  double p_success = 0.0;
  double t_total = 0.0;
  long long n_eval = 0;
  QaoaParams params;
};

QaoaResult evaluate(const ProblemHamiltonian& hp, const QaoaParams& params,
                    long long n_eval = 0);

}  // namespace nppq
