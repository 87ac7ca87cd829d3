#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "nppq/hamiltonians.hpp"
#include "nppq/statevector.hpp"

namespace nppq {

enum class Splitting {
  strang2,   // second order, X/2 - Z - X/2 with lambda at the step midpoint
  yoshida4,  // fourth order triple-jump composition of strang2
};

struct QaConfig {
  ScheduleSpec schedule = ScheduleSpec::linear(50.0);
  DriveSpec drive;
  /// Base step; 0 selects T / 1000.
  double dt = 0.0;
  Splitting method = Splitting::strang2;

  double total_time() const noexcept { return schedule.total_time; }
  /// Number of steps and the step actually used (T divided evenly).
  std::size_t steps() const;
  double step() const;
  void validate(int n) const;
};

/// Standard annealing: linear schedule, uniform drive.
QaConfig standard_qa_config(int n, double total_time = 50.0);

struct QaResult {
  StateVector final_state{0};
  double energy = 0.0;
  double epsilon = 0.0;
  double p_success = 0.0;
  double wall_time_s = 0.0;
  QaConfig config;
  std::uint64_t instance_seed = 0;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(std::size_t step, const std::string& what)
      : std::runtime_error("integrator failure at step " +
                           std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Schrodinger evolution of |+>^n under (1 - lambda(t)) H_D + lambda(t) H_P
/// by operator splitting. Both factors are applied exactly: the drive as
/// per-qubit X rotations, the problem Hamiltonian as a diagonal phase.
QaResult evolve(const ProblemHamiltonian& hp, const QaConfig& cfg);
QaResult evolve(const NppInstance& inst, const QaConfig& cfg);

/// Test oracle: per step, applies the exact exponential of the dense
/// midpoint Hamiltonian. n <= 6.
QaResult evolve_dense_reference(const NppInstance& inst, const QaConfig& cfg);

/// As above with lambda(t) supplied by the caller instead of the schedule.
QaResult evolve_dense_reference(const NppInstance& inst, const QaConfig& cfg,
                                const std::function<double(double)>& lambda);

inline constexpr int kMaxDenseReferenceQubits = 6;

}  // namespace nppq
