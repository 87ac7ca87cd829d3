// nppq: instance banks, optimization sweeps, spectral scans and reports.
//
//   nppq gen      --sizes 6-10 --count 10 --seed 1 --out out
//   nppq run      --algo qaoa-adaptive --p-max 10 --out out
//   nppq spectra  --out out
//   nppq report   --out out
//
// Exit status: 0 success, 2 configuration error, 3 some rows failed.

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nppq/experiment.hpp"

namespace fs = std::filesystem;
using namespace nppq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "6-10", "6,8,10" or a mix such as "6-8,10".
std::vector<int> expand_sizes(const std::vector<std::string>& specs) {
  std::vector<int> out;
  for (const auto& s : specs) {
    try {
      const auto dash = s.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(s));
        continue;
      }
      const int lo = std::stoi(s.substr(0, dash));
      const int hi = std::stoi(s.substr(dash + 1));
      if (hi < lo) throw ConfigError("empty size range '" + s + "'");
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } catch (const std::logic_error&) {
      throw ConfigError("bad size '" + s + "'");
    }
  }
  return out;
}

struct Options {
  ExperimentConfig cfg;
  std::vector<std::string> sizes{"6-10"};
  std::string algo = "qaoa-adaptive";
  int restarts = 0;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--sizes", o.sizes, "Problem sizes, e.g. 6-10 or 6,8,10")
      ->delimiter(',');
  cmd->add_option("--out", o.cfg.out_dir, "Output directory");
  cmd->add_option("--bank", o.cfg.bank,
                  "Instance bank (default <out>/instances.npp)");
  cmd->add_option("--seed", o.cfg.seed, "Master seed");
  cmd->add_option("--jobs", o.cfg.jobs, "Worker threads (0: all cores)");
}

void add_budget(CLI::App* cmd, Options& o) {
  cmd->add_option("--T", o.cfg.total_time, "Annealing time");
  cmd->add_option("--C", o.cfg.cutoff, "Sine cutoff of the path variant");
  cmd->add_option("--restarts", o.restarts,
                  "Restarts per optimization (0: per-algorithm default)");
  cmd->add_option("--budget", o.cfg.budget, "Scale factor on restart counts");
  cmd->add_option("--max-evals", o.cfg.max_eval_per_start,
                  "Objective evaluations per restart");
}

void finish(Options& o) {
  o.cfg.sizes = expand_sizes(o.sizes);
  if (o.restarts < 0) throw ConfigError("--restarts must be >= 0");
  if (o.restarts > 0) o.cfg.restarts = o.restarts;
  try {
    o.cfg.algorithm = parse_algorithm(o.algo);
    o.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (o.cfg.jobs > 0) omp_set_num_threads(o.cfg.jobs);
}

std::vector<NppInstance> load_bank(const ExperimentConfig& cfg) {
  const auto path = cfg.bank_path();
  if (!fs::exists(path)) {
    throw ConfigError("instance bank " + path.string() +
                      " not found; run 'nppq gen' first");
  }
  try {
    return load_instances(path);
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<RunRecord> load_runs(const fs::path& dir, Algorithm algo) {
  const auto path = dir / ("runs_" + std::string(to_string(algo)) + ".csv");
  if (!fs::exists(path)) return {};
  return records_from_table(csv::read_table(path));
}

nlohmann::json meta_for(const ExperimentConfig& cfg, const std::string& verb) {
  nlohmann::json j;
  j["verb"] = verb;
  j["config"] = to_json(cfg);
  return j;
}

// Aggregates, p_min and R_eff from whatever runs_*.csv exist in dir.
int write_reports(const ExperimentConfig& cfg, bool verbose) {
  const auto& dir = cfg.out_dir;
  int tables = 0;
  for (const auto algo : {Algorithm::qa, Algorithm::qa_path, Algorithm::qa_fields,
                          Algorithm::qaoa, Algorithm::qaoa_adaptive}) {
    const auto runs = load_runs(dir, algo);
    if (runs.empty()) continue;
    ++tables;
    const auto name = std::string(to_string(algo));
    const auto agg = aggregate(runs);
    auto meta = meta_for(cfg, "report");
    meta["source"] = "runs_" + name + ".csv";
    write_output(to_table(agg), dir, "aggregate_" + name + ".csv", meta);
    if (verbose) {
      std::cout << name << '\n';
      for (const auto& a : agg) {
        std::cout << "  n=" << a.n;
        if (is_qaoa(algo)) std::cout << " p=" << a.p;
        std::cout << "  eps=" << std::setprecision(4) << a.mean_epsilon
                  << "  P_S=" << a.mean_p_success << "  dur=" << a.mean_duration
                  << "  rows=" << a.count;
        if (a.failed) std::cout << "  failed=" << a.failed;
        std::cout << '\n';
      }
    }
    if (algo == Algorithm::qaoa_adaptive) {
      const auto pmin = p_min_table(agg);
      write_output(to_table(pmin), dir, "pmin_" + name + ".csv", meta);
      if (verbose) {
        for (const auto& r : pmin) {
          std::cout << "  p_min(n=" << r.n << ") = "
                    << (r.p_min ? std::to_string(*r.p_min) : "NA") << '\n';
        }
      }
    }
  }
  const auto std_runs = load_runs(dir, Algorithm::qaoa);
  const auto ada_runs = load_runs(dir, Algorithm::qaoa_adaptive);
  if (!std_runs.empty() && !ada_runs.empty()) {
    const auto eff = efficiency_table(std_runs, ada_runs);
    auto meta = meta_for(cfg, "report");
    meta["r_eff"] = "aggregate rows: mean over instances of I_eff(adaptive) / I_eff(standard)";
    write_output(to_table(eff), dir, "r_eff.csv", meta);
    if (verbose) {
      int above = 0, cells = 0;
      for (const auto& r : eff) {
        if (r.instance_seed) continue;
        ++cells;
        if (r.r_eff > kEfficiencyBaseline) ++above;
      }
      std::cout << "R_eff > 1 in " << above << " of " << cells
                << " (n, p) cells\n";
    }
  }
  return tables;
}

int cmd_gen(Options& o) {
  finish(o);
  const auto bank = generate_bank(o.cfg.sizes, o.cfg.instances_per_size, o.cfg.seed);
  if (bank.empty()) std::cerr << "warning: --count 0 writes an empty bank\n";
  const auto path = o.cfg.bank_path();
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_instances(bank, path);
  std::cout << "wrote " << bank.size() << " instances to " << path.string() << '\n';
  return 0;
}

int cmd_run(Options& o) {
  finish(o);
  const auto bank = load_bank(o.cfg);
  const auto records = run_experiment(o.cfg, bank);
  const auto name = std::string(to_string(o.cfg.algorithm));
  auto meta = meta_for(o.cfg, "run");
  write_output(to_table(records), o.cfg.out_dir, "runs_" + name + ".csv", meta);
  int failed = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "n=" << r.n << " seed=" << r.instance_seed << " p=" << r.p
                << ": " << r.status << '\n';
    }
  }
  write_reports(o.cfg, true);
  if (failed) {
    std::cerr << failed << " of " << records.size() << " rows failed\n";
    return kExitPartial;
  }
  return 0;
}

int cmd_spectra(Options& o, int grid) {
  o.cfg.grid_points = grid;
  finish(o);
  if (grid < 51) {
    std::cerr << "warning: --grid " << grid
              << " is coarse; relevant gaps may not be converged\n";
  }
  const auto bank = load_bank(o.cfg);
  const auto path = params_from_records(load_runs(o.cfg.out_dir, Algorithm::qa_path));
  const auto fields =
      params_from_records(load_runs(o.cfg.out_dir, Algorithm::qa_fields));
  const auto rows = run_spectra(o.cfg, bank, path, fields);
  auto meta = meta_for(o.cfg, "spectra");
  meta["n_quasi"] = "basis states with E_min < E <= E_min + delta";
  meta["n_quasi_levels"] = "distinct energies with E_min < E <= E_min + delta";
  write_output(to_table(rows), o.cfg.out_dir, "spectra.csv", meta);
  const auto agg = aggregate(rows);
  write_output(to_table(agg), o.cfg.out_dir, "spectra_aggregate.csv", meta);
  int failed = 0, violations = 0;
  for (const auto& r : rows) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "n=" << r.n << " seed=" << r.instance_seed << " "
                << to_string(r.setting) << ": " << r.status << '\n';
    } else if (!r.bound_ok) {
      ++violations;
    }
  }
  for (const auto& a : agg) {
    std::cout << to_string(a.setting) << " n=" << a.n << "  gap="
              << std::setprecision(4) << a.mean_relevant_gap
              << "  N_delta=" << a.mean_n_quasi << "  P_S=" << a.mean_p_success
              << '\n';
  }
  if (violations) std::cerr << violations << " rows exceed the diagonal gap\n";
  return failed ? kExitPartial : 0;
}

int cmd_report(Options& o) {
  finish(o);
  if (write_reports(o.cfg, true) == 0) {
    throw ConfigError("no runs_*.csv in " + o.cfg.out_dir.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Number-partitioning benchmarks for annealing and QAOA variants"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  Options o;
  int grid = kDefaultGridPoints;

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance bank");
  add_common(gen, o);
  gen->add_option("--count", o.cfg.instances_per_size, "Instances per size");

  auto* run = app.add_subcommand("run", "Optimize one algorithm over the bank");
  add_common(run, o);
  add_budget(run, o);
  run->add_option("--algo", o.algo, "qa, qa-path, qa-fields, qaoa, qaoa-adaptive")
      ->check(CLI::IsMember({"qa", "qa-path", "qa-fields", "qaoa", "qaoa-adaptive"}));
  run->add_option("--p-min", o.cfg.p_min, "Smallest QAOA depth");
  run->add_option("--p-max", o.cfg.p_max, "Largest QAOA depth");
  run->add_flag("--warm-start", o.cfg.warm_start,
                "Seed depth p with the padded depth p-1 optimum");

  auto* spectra = app.add_subcommand("spectra", "Relevant gaps and N_delta");
  add_common(spectra, o);
  add_budget(spectra, o);
  spectra->add_option("--delta", o.cfg.delta, "Quasi-optimal window");
  spectra->add_option("--grid", grid, "Lambda grid points");

  auto* report = app.add_subcommand("report", "Rebuild aggregates from runs_*.csv");
  add_common(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*run) return cmd_run(o);
    if (*spectra) return cmd_spectra(o, grid);
    if (*report) return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
