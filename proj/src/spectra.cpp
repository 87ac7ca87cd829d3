#include "nppq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "nppq/dense.hpp"

namespace nppq {

std::vector<double> lowest_levels(const DiagonalOp& diag,
                                  const DriveSpec& drive, double lam,
                                  std::size_t count, bool use_sectors) {
  std::vector<double> all;
  const bool diagonal =
      lam == 1.0 || std::all_of(drive.h.begin(), drive.h.end(),
                                [](double h) { return h == 0.0; });
  if (diagonal) {
    // Exact: lam * diag with no rounding from an eigensolver.
    all.reserve(diag.diag.size());
    for (const double e : diag.diag) all.push_back(lam * e);
    std::sort(all.begin(), all.end());
  } else if (use_sectors && diag.n >= 1) {
    const auto [even, odd] = interpolated_sectors(diag, drive, lam);
    const Eigen::VectorXd ev = eigvals_symmetric(even);
    const Eigen::VectorXd od = eigvals_symmetric(odd);
    all.reserve(static_cast<std::size_t>(ev.size() + od.size()));
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
    all.insert(all.end(), od.data(), od.data() + od.size());
    std::sort(all.begin(), all.end());
  } else {
    const DenseHermitian h(
        interpolated_matrix(diag, drive, lam).cast<std::complex<double>>());
    const auto es = eig_hermitian(h);
    all.assign(es.values.data(), es.values.data() + es.values.size());
  }
  if (all.size() > count) all.resize(count);
  return all;
}

double diagonal_gap(const ProblemHamiltonian& hp) {
  auto sorted = hp.diag.diag;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t d = hp.degeneracy();
  return d < sorted.size() ? sorted[d] - sorted[0] : 0.0;
}

std::size_t count_quasi_optimal(const NppInstance& inst, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("count_quasi_optimal: delta <= 0");
  const auto hp = build_hp(inst);
  std::size_t count = 0;
  for (const auto e : hp.diag.diag) {
    if (e > hp.e_min && e <= hp.e_min + delta) ++count;
  }
  return count;
}

std::size_t count_quasi_levels(const NppInstance& inst, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("count_quasi_levels: delta <= 0");
  const auto hp = build_hp(inst);
  std::set<double> levels;
  for (const auto e : hp.diag.diag) {
    if (e > hp.e_min && e <= hp.e_min + delta) levels.insert(e);
  }
  return levels.size();
}

std::pair<double, double> lambda_range(const ScheduleSpec& sched, int samples) {
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = sched.total_time * static_cast<double>(k) / samples;
    const double lam = schedule_lambda(sched, std::min(t, sched.total_time));
    lo = std::min(lo, lam);
    hi = std::max(hi, lam);
  }
  return {lo, hi};
}

SpectralScan scan_gap(const NppInstance& inst, const DriveSpec& drive,
                      int grid_points, const ScanOptions& opts) {
  if (inst.n > kMaxScanQubits) throw std::domain_error("scan_gap: n > 12");
  if (grid_points < 11) throw std::domain_error("scan_gap: grid_points < 11");
  if (drive.n() != inst.n) {
    throw std::invalid_argument("scan_gap: drive size does not match instance");
  }
  if (!(opts.lambda_lo < opts.lambda_hi)) {
    throw std::invalid_argument("scan_gap: empty lambda interval");
  }

  const auto hp = build_hp(inst);
  const auto gt = solve_exact(inst);

  SpectralScan scan;
  scan.d = gt.degeneracy;
  scan.delta = opts.delta;
  scan.diagonal_gap = diagonal_gap(hp);
  scan.n_quasi = count_quasi_optimal(inst, opts.delta);
  scan.n_quasi_levels = count_quasi_levels(inst, opts.delta);

  for (int k = 0; k < grid_points; ++k) {
    scan.lambda_grid.push_back(
        k + 1 == grid_points
            ? opts.lambda_hi
            : opts.lambda_lo + (opts.lambda_hi - opts.lambda_lo) * k /
                                   (grid_points - 1));
  }
  for (const double pin : {0.0, 1.0}) {
    if (pin >= opts.lambda_lo && pin <= opts.lambda_hi &&
        std::find(scan.lambda_grid.begin(), scan.lambda_grid.end(), pin) ==
            scan.lambda_grid.end()) {
      scan.lambda_grid.push_back(pin);
    }
  }
  std::sort(scan.lambda_grid.begin(), scan.lambda_grid.end());

  const auto points = static_cast<std::int64_t>(scan.lambda_grid.size());
  scan.levels.resize(scan.lambda_grid.size());
  const std::size_t count = scan.d + 2;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < points; ++k) {
    scan.levels[k] = lowest_levels(hp.diag, drive, scan.lambda_grid[k], count,
                                   opts.use_sectors);
  }

  scan.relevant_gap = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t k = 0; k < scan.levels.size(); ++k) {
    const auto& lv = scan.levels[k];
    const double gap = scan.d < lv.size() ? lv[scan.d] - lv[0] : 0.0;
    if (gap < scan.relevant_gap) {
      scan.relevant_gap = gap;
      scan.argmin_lambda = scan.lambda_grid[k];
      best = k;
    }
  }
  scan.grid_gap = scan.relevant_gap;

  if (opts.refine && scan.d < count) {
    auto gap_at = [&](double lam) {
      const auto lv = lowest_levels(hp.diag, drive, lam, count, opts.use_sectors);
      return lv[scan.d] - lv[0];
    };
    double a = scan.lambda_grid[best == 0 ? 0 : best - 1];
    double b = scan.lambda_grid[std::min(best + 1, scan.lambda_grid.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double e = a + ratio * (b - a);
    double fc = gap_at(c);
    double fe = gap_at(e);
    while (b - a > opts.refine_tol) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - ratio * (b - a);
        fc = gap_at(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + ratio * (b - a);
        fe = gap_at(e);
      }
    }
    for (const auto& [lam, g] : {std::pair{c, fc}, std::pair{e, fe}}) {
      if (g < scan.relevant_gap) {
        scan.relevant_gap = g;
        scan.argmin_lambda = lam;
      }
    }
  }
  return scan;
}

}  // namespace nppq
