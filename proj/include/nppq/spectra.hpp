#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nppq/hamiltonians.hpp"
#include "nppq/instance.hpp"

namespace nppq {

inline constexpr int kDefaultGridPoints = 201;
inline constexpr double kDefaultDelta = 0.1;
inline constexpr int kMaxScanQubits = 12;

struct ScanOptions {
  /// Lambda interval covered by the uniform grid. 0 and 1 are always
  /// added to the grid when they fall inside it.
  double lambda_lo = 0.0;
  double lambda_hi = 1.0;
  double delta = kDefaultDelta;
  /// Diagonalize the two global-flip sectors separately (same spectrum,
  /// half the dimension each). false uses the full complex matrix.
  bool use_sectors = true;
  /// Golden-section search for the gap minimum between the neighbours of
  /// the grid argmin. relevant_gap and argmin_lambda then report the
  /// refined minimum; levels stay on the grid.
  bool refine = true;
  double refine_tol = 1e-6;
};

struct SpectralScan {
  std::vector<double> lambda_grid;
  /// Lowest D + 2 eigenvalues at each grid point.
  std::vector<std::vector<double>> levels;
  double relevant_gap = 0.0;   // min of E_D - E_0
  double argmin_lambda = 0.0;
  double grid_gap = 0.0;       // min over the grid points alone
  std::size_t d = 0;
  double diagonal_gap = 0.0;   // E_D - E_0 of H_P itself
  std::size_t n_quasi = 0;         // micro-states within delta of E_min
  std::size_t n_quasi_levels = 0;  // distinct energies within delta
  double delta = kDefaultDelta;
};

/// Relevant-gap scan of (1 - lambda) H_D + lambda H_P on a uniform grid.
/// D is the degeneracy from solve_exact. Requires n <= 12 and
/// grid_points >= 11.
SpectralScan scan_gap(const NppInstance& inst, const DriveSpec& drive,
                      int grid_points = kDefaultGridPoints,
                      const ScanOptions& opts = {});

/// Lowest `count` eigenvalues of (1 - lam) H_D + lam diag.
std::vector<double> lowest_levels(const DiagonalOp& diag,
                                  const DriveSpec& drive, double lam,
                                  std::size_t count, bool use_sectors = true);

/// Number of basis states b with E_min < diag[b] <= E_min + delta.
std::size_t count_quasi_optimal(const NppInstance& inst, double delta);

/// Number of distinct energies E with E_min < E <= E_min + delta.
std::size_t count_quasi_levels(const NppInstance& inst, double delta);

/// E_D - E_0 of the diagonal problem Hamiltonian (0 if every state is
/// degenerate with the ground state).
double diagonal_gap(const ProblemHamiltonian& hp);

/// [min, max] of lambda(t) over t in [0, T], sampled on `samples` points.
std::pair<double, double> lambda_range(const ScheduleSpec& sched,
                                       int samples = 2001);

}  // namespace nppq
