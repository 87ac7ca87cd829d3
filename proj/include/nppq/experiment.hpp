#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nppq/csv.hpp"
#include "nppq/instance.hpp"
#include "nppq/problems.hpp"
#include "nppq/spectra.hpp"

namespace nppq {

std::string code_version();

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::qaoa_adaptive;
  std::vector<int> sizes{6, 7, 8, 9, 10};
  int instances_per_size = 10;
  std::uint64_t seed = 1;
  double total_time = kDefaultAnnealTime;
  int cutoff = kDefaultCutoff;
  int p_min = 1;
  int p_max = 10;
  double delta = kDefaultDelta;
  std::optional<int> restarts;  // overrides the per-algorithm default
  double budget = 1.0;          // scales the restart count
  long long max_eval_per_start = 2000;
  int grid_points = kDefaultGridPoints;
  /// QAOA only: add the depth p-1 optimum, padded with a zero layer, as
  /// an extra start at depth p. Makes the cells of one instance sequential.
  bool warm_start = false;
  std::filesystem::path out_dir = "out";
  std::filesystem::path bank;  // empty: <out_dir>/instances.npp
  int jobs = 0;                // 0: OpenMP default

  std::filesystem::path bank_path() const;
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);

/// Restarts actually used for `algo`: the override or the per-algorithm default,
/// scaled by `budget`, at least 1.
int effective_restarts(const ExperimentConfig& cfg, Algorithm algo);

/// Instance seed k of size n under master seed `seed`.
std::uint64_t instance_seed(std::uint64_t seed, int n, int k);

/// `count` instances per size, grouped by size in the given order.
std::vector<NppInstance> generate_bank(const std::vector<int>& sizes, int count,
                                       std::uint64_t seed);

struct RunRecord {
  Algorithm algorithm = Algorithm::qa;
  int n = 0;
  std::uint64_t instance_seed = 0;
  int instance_index = 0;  // position among the bank's instances of size n
  int p = 0;               // circuit depth; 0 for the QA variants
  double epsilon = 0.0;
  double p_success = 0.0;
  double duration = 0.0;   // T for QA, T_QAOA for QAOA
  long long n_eval = 0;
  double i_eff = 0.0;      // P_S / N_eval; NaN without optimization
  double wall_time_s = 0.0;
  std::string code_version;
  std::string status = "ok";
  std::vector<double> params;

  bool ok() const { return status == "ok"; }
};

/// Runs every cell of cfg.algorithm over the bank instances whose size is
/// in cfg.sizes. Failures are recorded in the row status. Output is sorted
/// by (n, instance_index, p) whatever the completion order.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                      const std::vector<NppInstance>& bank);

/// Optimizes and evaluates one cell.
RunRecord run_cell(const ExperimentConfig& cfg, const NppInstance& inst,
                   int instance_index, int p,
                   const std::vector<double>* warm = nullptr);

struct Aggregate {
  Algorithm algorithm = Algorithm::qa;
  int n = 0;
  int p = 0;
  int count = 0;   // ok rows averaged
  int failed = 0;
  double mean_epsilon = 0.0;
  double mean_p_success = 0.0;
  double mean_duration = 0.0;
  double mean_n_eval = 0.0;
  double mean_i_eff = 0.0;
};

/// Arithmetic means of the ok rows per (n, p).
std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records);

inline constexpr double kPminThreshold = 0.99;

struct PminRow {
  int n = 0;
  std::optional<int> p_min;  // smallest p with mean P_S >= threshold
  double mean_p_success = 0.0;  // at p_min, or the best over p if none
  double mean_duration = 0.0;   // mean T_QAOA at p_min
};

std::vector<PminRow> p_min_table(const std::vector<Aggregate>& aggregates,
                                 double threshold = kPminThreshold);

struct EfficiencyRow {
  int n = 0;
  int p = 0;
  std::optional<std::uint64_t> instance_seed;  // empty on aggregate rows
  double i_eff_standard = 0.0;
  double i_eff_adaptive = 0.0;
  double r_eff = 0.0;           // aggregate rows: mean of the cell ratios
  double r_eff_of_means = 0.0;  // aggregate rows: ratio of the mean I_eff
  int cells = 1;
};

/// Pairs adaptive and standard QAOA rows on identical (instance, p).
/// Per-cell rows first, then one aggregate row per (n, p) whose R_eff is
/// the mean of the per-instance ratios.
std::vector<EfficiencyRow> efficiency_table(
    const std::vector<RunRecord>& standard,
    const std::vector<RunRecord>& adaptive);

inline constexpr double kEfficiencyBaseline = 1.0;

csv::Table to_table(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_table(const csv::Table& t);
csv::Table to_table(const std::vector<Aggregate>& rows);
csv::Table to_table(const std::vector<PminRow>& rows);
csv::Table to_table(const std::vector<EfficiencyRow>& rows);

/// Drive settings of the spectral analysis.
enum class DriveSetting { standard, optimized_path, optimized_fields };
std::string_view to_string(DriveSetting s);

struct SpectraRecord {
  DriveSetting setting = DriveSetting::standard;
  int n = 0;
  std::uint64_t instance_seed = 0;
  int instance_index = 0;
  double relevant_gap = 0.0;
  double grid_gap = 0.0;
  double argmin_lambda = 0.0;
  double diagonal_gap = 0.0;
  std::size_t d = 0;
  std::size_t n_quasi = 0;
  std::size_t n_quasi_levels = 0;
  double delta = kDefaultDelta;
  double p_success = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 1.0;
  int grid_points = 0;
  bool bound_ok = false;  // relevant_gap <= diagonal_gap
  std::string params_source;  // "runs", "optimized" or "none"
  std::string status = "ok";
  std::vector<double> params;

  bool ok() const { return status == "ok"; }
};

/// Variational parameters per instance seed, e.g. read back from
/// runs_qa-path.csv.
using ParamLookup = std::map<std::uint64_t, std::vector<double>>;

/// Best parameters per instance seed from a run table (ok rows only).
ParamLookup params_from_records(const std::vector<RunRecord>& records);

/// Three rows per instance: standard drive, optimized path, optimized
/// fields. Parameters missing from the lookups are optimized on the spot
/// with the configured budget.
std::vector<SpectraRecord> run_spectra(const ExperimentConfig& cfg,
                                       const std::vector<NppInstance>& bank,
                                       const ParamLookup& path_params,
                                       const ParamLookup& field_params);

struct SpectraAggregate {
  DriveSetting setting = DriveSetting::standard;
  int n = 0;
  int count = 0;
  double mean_relevant_gap = 0.0;
  double mean_n_quasi = 0.0;
  double mean_n_quasi_levels = 0.0;
  double mean_p_success = 0.0;
  int bound_violations = 0;
};

std::vector<SpectraAggregate> aggregate(const std::vector<SpectraRecord>& rows);

csv::Table to_table(const std::vector<SpectraRecord>& rows);
csv::Table to_table(const std::vector<SpectraAggregate>& rows);

/// Writes `table` to dir/name and the JSON sidecar dir/name.json holding
/// the configuration and extra metadata.
void write_output(const csv::Table& table, const std::filesystem::path& dir,
                  const std::string& name, const nlohmann::json& meta);

}  // namespace nppq
