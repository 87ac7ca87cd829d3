#include "nppq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "nppq/metrics.hpp"
#include "nppq/rng.hpp"

#ifndef NPPQ_VERSION
#define NPPQ_VERSION "unknown"
#endif

namespace nppq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_params(const std::vector<double>& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ';';
    out += csv::number(x[i]);
  }
  return out;
}

std::vector<double> split_params(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto end = s.find(';', pos);
    if (end == std::string::npos) end = s.size();
    out.push_back(csv::parse_number(s.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

template <typename T>
std::string str(T v) {
  return std::to_string(v);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Depth p-1 optimum padded with a zero layer: [b.., 0, g.., 0, alpha..].
std::vector<double> pad_layer(const std::vector<double>& x, int q) {
  std::vector<double> out;
  out.reserve(x.size() + 2);
  out.insert(out.end(), x.begin(), x.begin() + q);
  out.push_back(0.0);
  out.insert(out.end(), x.begin() + q, x.begin() + 2 * q);
  out.push_back(0.0);
  out.insert(out.end(), x.begin() + 2 * q, x.end());
  return out;
}

struct Unit {
  const NppInstance* inst;
  int index;
  std::vector<int> depths;
};

}  // namespace

std::string code_version() { return NPPQ_VERSION; }

std::filesystem::path ExperimentConfig::bank_path() const {
  return bank.empty() ? out_dir / "instances.npp" : bank;
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("no problem sizes given");
  for (const int n : sizes) {
    if (n < 1 || n > kMaxInstanceSize) {
      throw std::invalid_argument("size " + str(n) + " outside [1, " +
                                  str(kMaxInstanceSize) + "]");
    }
  }
  if (instances_per_size < 0) throw std::invalid_argument("count must be >= 0");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw std::invalid_argument("T must be positive");
  }
  if (cutoff < 1) throw std::invalid_argument("C must be >= 1");
  if (p_min < 1 || p_max < p_min) {
    throw std::invalid_argument("need 1 <= p-min <= p-max");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (restarts && *restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("budget must be positive");
  }
  if (max_eval_per_start < 1) {
    throw std::invalid_argument("max evaluations per start must be >= 1");
  }
  if (grid_points < 11) throw std::invalid_argument("grid must have >= 11 points");
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["algorithm"] = std::string(to_string(cfg.algorithm));
  j["sizes"] = cfg.sizes;
  j["instances_per_size"] = cfg.instances_per_size;
  j["seed"] = cfg.seed;
  j["T"] = cfg.total_time;
  j["dt"] = cfg.total_time / 1000.0;
  j["C"] = cfg.cutoff;
  j["p_min"] = cfg.p_min;
  j["p_max"] = cfg.p_max;
  j["delta"] = cfg.delta;
  j["restarts"] = cfg.restarts ? nlohmann::json(*cfg.restarts) : nlohmann::json();
  j["budget"] = cfg.budget;
  j["effective_restarts"] = effective_restarts(cfg, cfg.algorithm);
  j["max_eval_per_start"] = cfg.max_eval_per_start;
  j["grid_points"] = cfg.grid_points;
  j["warm_start"] = cfg.warm_start;
  j["bank"] = cfg.bank_path().string();
  j["jobs"] = cfg.jobs;
  j["local_optimizer"] = "bounded Nelder-Mead, xtol 1e-6, ftol 1e-9";
  j["integrator"] = "Strang splitting, lambda at step midpoint";
  j["code_version"] = code_version();
  return j;
}

int effective_restarts(const ExperimentConfig& cfg, Algorithm algo) {
  const int base = cfg.restarts ? *cfg.restarts
                                : (is_qaoa(algo) ? kQaoaRestarts : kQaRestarts);
  return std::max(1, static_cast<int>(std::lround(base * cfg.budget)));
}

std::uint64_t instance_seed(std::uint64_t seed, int n, int k) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(n)),
                     static_cast<std::uint64_t>(k));
}

std::vector<NppInstance> generate_bank(const std::vector<int>& sizes, int count,
                                       std::uint64_t seed) {
  std::vector<NppInstance> bank;
  for (const int n : sizes) {
    for (int k = 0; k < count; ++k) {
      bank.push_back(generate_instance(n, instance_seed(seed, n, k)));
    }
  }
  return bank;
}

RunRecord run_cell(const ExperimentConfig& cfg, const NppInstance& inst,
                   int instance_index, int p, const std::vector<double>* warm) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.algorithm = cfg.algorithm;
  rec.n = inst.n;
  rec.instance_seed = inst.seed;
  rec.instance_index = instance_index;
  rec.p = is_qaoa(cfg.algorithm) ? p : 0;
  rec.code_version = code_version();
  try {
    const auto hp = build_hp(inst);
    if (cfg.algorithm == Algorithm::qa) {
      const auto ev = evaluate_algorithm(Algorithm::qa, hp, 0, {}, cfg.total_time);
      rec.epsilon = ev.epsilon;
      rec.p_success = ev.p_success;
      rec.duration = ev.duration;
      rec.n_eval = 0;
      rec.i_eff = kNaN;
    } else {
      const int depth = cfg.algorithm == Algorithm::qa_path ? cfg.cutoff : p;
      ProblemSettings s;
      s.total_time = cfg.total_time;
      s.restarts = effective_restarts(cfg, cfg.algorithm);
      s.max_eval_per_start = cfg.max_eval_per_start;
      s.seed = derive_seed(derive_seed(cfg.seed, inst.seed),
                           static_cast<std::uint64_t>(depth));
      auto prob = default_problem_for(cfg.algorithm, inst, depth, s);
      if (warm && is_qaoa(cfg.algorithm) && p > 1) {
        prob.seeded_starts.insert(prob.seeded_starts.begin(),
                                  pad_layer(*warm, p - 1));
      }
      const auto out = multistart_minimize(prob);
      rec.n_eval = out.n_eval_total;
      if (!std::isfinite(out.best_value)) {
        throw std::runtime_error("every restart aborted");
      }
      const auto ev =
          evaluate_algorithm(cfg.algorithm, hp, depth, out.best_params, cfg.total_time);
      rec.params = out.best_params;
      rec.epsilon = ev.epsilon;
      rec.p_success = ev.p_success;
      rec.duration = ev.duration;
      rec.i_eff = optimization_efficiency(ev.p_success, out.n_eval_total);
    }
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
    rec.epsilon = rec.p_success = rec.duration = rec.i_eff = kNaN;
    rec.params.clear();
  }
  rec.wall_time_s = seconds_since(t0);
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                      const std::vector<NppInstance>& bank) {
  cfg.validate();
  const std::set<int> wanted(cfg.sizes.begin(), cfg.sizes.end());
  std::map<int, int> seen;
  std::vector<Unit> units;
  for (const auto& inst : bank) {
    const int index = seen[inst.n]++;
    if (!wanted.count(inst.n)) continue;
    if (!is_qaoa(cfg.algorithm)) {
      units.push_back({&inst, index, {0}});
    } else if (cfg.warm_start) {
      Unit u{&inst, index, {}};
      for (int p = cfg.p_min; p <= cfg.p_max; ++p) u.depths.push_back(p);
      units.push_back(std::move(u));
    } else {
      for (int p = cfg.p_min; p <= cfg.p_max; ++p) {
        units.push_back({&inst, index, {p}});
      }
    }
  }

  std::vector<std::vector<RunRecord>> results(units.size());
  const auto count = static_cast<std::int64_t>(units.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t u = 0; u < count; ++u) {
    const auto& unit = units[u];
    std::vector<double> prev;
    for (const int p : unit.depths) {
      auto rec = run_cell(cfg, *unit.inst, unit.index, p,
                          prev.empty() ? nullptr : &prev);
      prev = rec.ok() ? rec.params : std::vector<double>{};
      results[u].push_back(std::move(rec));
    }
  }

  std::vector<RunRecord> out;
  for (auto& r : results) {
    for (auto& rec : r) out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.n, a.instance_index, a.p) <
           std::tie(b.n, b.instance_index, b.p);
  });
  return out;
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records) {
  std::map<std::tuple<int, int, int>, Aggregate> cells;
  for (const auto& r : records) {
    auto& a = cells[{static_cast<int>(r.algorithm), r.n, r.p}];
    a.algorithm = r.algorithm;
    a.n = r.n;
    a.p = r.p;
    if (!r.ok()) {
      ++a.failed;
      continue;
    }
    ++a.count;
    a.mean_epsilon += r.epsilon;
    a.mean_p_success += r.p_success;
    a.mean_duration += r.duration;
    a.mean_n_eval += static_cast<double>(r.n_eval);
    a.mean_i_eff += r.i_eff;
  }
  std::vector<Aggregate> out;
  for (auto& [key, a] : cells) {
    if (a.count > 0) {
      const double c = a.count;
      a.mean_epsilon /= c;
      a.mean_p_success /= c;
      a.mean_duration /= c;
      a.mean_n_eval /= c;
      a.mean_i_eff /= c;
    } else {
      a.mean_epsilon = a.mean_p_success = a.mean_duration = a.mean_n_eval =
          a.mean_i_eff = kNaN;
    }
    out.push_back(a);
  }
  return out;
}

std::vector<PminRow> p_min_table(const std::vector<Aggregate>& aggregates,
                                 double threshold) {
  std::map<int, std::vector<const Aggregate*>> by_n;
  for (const auto& a : aggregates) by_n[a.n].push_back(&a);
  std::vector<PminRow> out;
  for (auto& [n, cells] : by_n) {
    std::sort(cells.begin(), cells.end(),
              [](const Aggregate* a, const Aggregate* b) { return a->p < b->p; });
    PminRow row;
    row.n = n;
    row.mean_p_success = kNaN;
    row.mean_duration = kNaN;
    for (const auto* a : cells) {
      if (a->count == 0) continue;
      if (a->mean_p_success >= threshold) {
        row.p_min = a->p;
        row.mean_p_success = a->mean_p_success;
        row.mean_duration = a->mean_duration;
        break;
      }
      if (std::isnan(row.mean_p_success) || a->mean_p_success > row.mean_p_success) {
        row.mean_p_success = a->mean_p_success;
      }
    }
    out.push_back(row);
  }
  return out;
}

std::vector<EfficiencyRow> efficiency_table(
    const std::vector<RunRecord>& standard,
    const std::vector<RunRecord>& adaptive) {
  std::map<std::pair<std::uint64_t, int>, const RunRecord*> base;
  for (const auto& r : standard) {
    if (r.ok()) base[{r.instance_seed, r.p}] = &r;
  }
  std::vector<EfficiencyRow> cells;
  for (const auto& r : adaptive) {
    if (!r.ok()) continue;
    const auto it = base.find({r.instance_seed, r.p});
    if (it == base.end()) continue;
    EfficiencyRow row;
    row.n = r.n;
    row.p = r.p;
    row.instance_seed = r.instance_seed;
    row.i_eff_standard = it->second->i_eff;
    row.i_eff_adaptive = r.i_eff;
    row.r_eff = efficiency_ratio(row.i_eff_adaptive, row.i_eff_standard);
    row.r_eff_of_means = row.r_eff;
    cells.push_back(row);
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.p, *a.instance_seed) < std::tie(b.n, b.p, *b.instance_seed);
  });

  std::map<std::pair<int, int>, EfficiencyRow> agg;
  for (const auto& c : cells) {
    auto& a = agg[{c.n, c.p}];
    if (a.n == 0) {
      a.n = c.n;
      a.p = c.p;
      a.cells = 0;
    }
    ++a.cells;
    a.i_eff_standard += c.i_eff_standard;
    a.i_eff_adaptive += c.i_eff_adaptive;
    a.r_eff += c.r_eff;
  }
  auto out = cells;
  for (auto& [key, a] : agg) {
    a.i_eff_standard /= a.cells;
    a.i_eff_adaptive /= a.cells;
    a.r_eff /= a.cells;
    a.r_eff_of_means = efficiency_ratio(a.i_eff_adaptive, a.i_eff_standard);
    out.push_back(a);
  }
  return out;
}

csv::Table to_table(const std::vector<RunRecord>& records) {
  csv::Table t;
  t.header = {"algorithm", "n",       "instance_seed", "instance_index",
              "p",         "epsilon", "p_success",     "duration",
              "n_eval",    "i_eff",   "wall_time_s",   "code_version",
              "status",    "params"};
  for (const auto& r : records) {
    t.rows.push_back({std::string(to_string(r.algorithm)), str(r.n),
                      str(r.instance_seed), str(r.instance_index), str(r.p),
                      csv::number(r.epsilon), csv::number(r.p_success),
                      csv::number(r.duration), str(r.n_eval),
                      csv::number(r.i_eff), csv::number(r.wall_time_s),
                      r.code_version, r.status, join_params(r.params)});
  }
  return t;
}

std::vector<RunRecord> records_from_table(const csv::Table& t) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    RunRecord r;
    r.algorithm = parse_algorithm(t.at(i, "algorithm"));
    r.n = std::stoi(t.at(i, "n"));
    r.instance_seed = std::stoull(t.at(i, "instance_seed"));
    r.instance_index = std::stoi(t.at(i, "instance_index"));
    r.p = std::stoi(t.at(i, "p"));
    r.epsilon = csv::parse_number(t.at(i, "epsilon"));
    r.p_success = csv::parse_number(t.at(i, "p_success"));
    r.duration = csv::parse_number(t.at(i, "duration"));
    r.n_eval = std::stoll(t.at(i, "n_eval"));
    r.i_eff = csv::parse_number(t.at(i, "i_eff"));
    r.wall_time_s = csv::parse_number(t.at(i, "wall_time_s"));
    r.code_version = t.at(i, "code_version");
    r.status = t.at(i, "status");
    r.params = split_params(t.at(i, "params"));
    out.push_back(std::move(r));
  }
  return out;
}

csv::Table to_table(const std::vector<Aggregate>& rows) {
  csv::Table t;
  t.header = {"algorithm",     "n",          "p",           "count",
              "failed",        "mean_epsilon", "mean_p_success",
              "mean_duration", "mean_n_eval", "mean_i_eff"};
  for (const auto& a : rows) {
    t.rows.push_back({std::string(to_string(a.algorithm)), str(a.n), str(a.p),
                      str(a.count), str(a.failed), csv::number(a.mean_epsilon),
                      csv::number(a.mean_p_success), csv::number(a.mean_duration),
                      csv::number(a.mean_n_eval), csv::number(a.mean_i_eff)});
  }
  return t;
}

csv::Table to_table(const std::vector<PminRow>& rows) {
  csv::Table t;
  t.header = {"n", "p_min", "mean_p_success", "mean_t_qaoa", "threshold"};
  for (const auto& r : rows) {
    t.rows.push_back({str(r.n), r.p_min ? str(*r.p_min) : "NA",
                      csv::number(r.mean_p_success), csv::number(r.mean_duration),
                      csv::number(kPminThreshold)});
  }
  return t;
}

csv::Table to_table(const std::vector<EfficiencyRow>& rows) {
  csv::Table t;
  t.header = {"kind",  "n",     "p",        "instance_seed", "i_eff_standard",
              "i_eff_adaptive", "r_eff", "r_eff_of_means", "baseline", "cells"};
  for (const auto& r : rows) {
    t.rows.push_back({r.instance_seed ? "cell" : "aggregate", str(r.n), str(r.p),
                      r.instance_seed ? str(*r.instance_seed) : "",
                      csv::number(r.i_eff_standard), csv::number(r.i_eff_adaptive),
                      csv::number(r.r_eff), csv::number(r.r_eff_of_means),
                      csv::number(kEfficiencyBaseline),
                      str(r.cells)});
  }
  return t;
}

std::string_view to_string(DriveSetting s) {
  switch (s) {
    case DriveSetting::standard: return "standard";
    case DriveSetting::optimized_path: return "qa-path";
    case DriveSetting::optimized_fields: return "qa-fields";
  }
  return "?";
}

ParamLookup params_from_records(const std::vector<RunRecord>& records) {
  ParamLookup out;
  for (const auto& r : records) {
    if (r.ok() && !r.params.empty()) out[r.instance_seed] = r.params;
  }
  return out;
}

namespace {

std::vector<double> optimize_for(const ExperimentConfig& cfg, Algorithm algo,
                                 const NppInstance& inst) {
  ExperimentConfig c = cfg;
  c.algorithm = algo;
  const auto rec = run_cell(c, inst, 0, 0);
  if (!rec.ok()) throw std::runtime_error(rec.status);
  return rec.params;
}

}  // namespace

std::vector<SpectraRecord> run_spectra(const ExperimentConfig& cfg,
                                       const std::vector<NppInstance>& bank,
                                       const ParamLookup& path_params,
                                       const ParamLookup& field_params) {
  cfg.validate();
  const std::set<int> wanted(cfg.sizes.begin(), cfg.sizes.end());
  std::map<int, int> seen;
  std::vector<SpectraRecord> out;
  for (const auto& inst : bank) {
    const int index = seen[inst.n]++;
    if (!wanted.count(inst.n)) continue;
    for (const auto setting : {DriveSetting::standard, DriveSetting::optimized_path,
                               DriveSetting::optimized_fields}) {
      SpectraRecord rec;
      rec.setting = setting;
      rec.n = inst.n;
      rec.instance_seed = inst.seed;
      rec.instance_index = index;
      rec.delta = cfg.delta;
      rec.grid_points = cfg.grid_points;
      try {
        const auto hp = build_hp(inst);
        QaConfig qa = standard_qa_config(inst.n, cfg.total_time);
        ScanOptions opts;
        opts.delta = cfg.delta;
        rec.params_source = "none";
        if (setting != DriveSetting::standard) {
          const bool path = setting == DriveSetting::optimized_path;
          const auto& lookup = path ? path_params : field_params;
          const auto algo = path ? Algorithm::qa_path : Algorithm::qa_fields;
          if (const auto it = lookup.find(inst.seed); it != lookup.end()) {
            rec.params = it->second;
            rec.params_source = "runs";
          } else {
            rec.params = optimize_for(cfg, algo, inst);
            rec.params_source = "optimized";
          }
          qa = qa_config_from(algo, inst.n, rec.params, cfg.total_time);
          if (path) {
            std::tie(opts.lambda_lo, opts.lambda_hi) = lambda_range(qa.schedule);
          }
        }
        const auto scan = scan_gap(inst, qa.drive, cfg.grid_points, opts);
        rec.relevant_gap = scan.relevant_gap;
        rec.grid_gap = scan.grid_gap;
        rec.argmin_lambda = scan.argmin_lambda;
        rec.diagonal_gap = scan.diagonal_gap;
        rec.d = scan.d;
        rec.n_quasi = scan.n_quasi;
        rec.n_quasi_levels = scan.n_quasi_levels;
        rec.lambda_lo = opts.lambda_lo;
        rec.lambda_hi = opts.lambda_hi;
        rec.bound_ok = scan.relevant_gap <= scan.diagonal_gap;
        rec.p_success = evolve(hp, qa).p_success;
      } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
        rec.relevant_gap = rec.grid_gap = rec.p_success = kNaN;
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<SpectraAggregate> aggregate(const std::vector<SpectraRecord>& rows) {
  std::map<std::pair<int, int>, SpectraAggregate> cells;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    auto& a = cells[{static_cast<int>(r.setting), r.n}];
    a.setting = r.setting;
    a.n = r.n;
    ++a.count;
    a.mean_relevant_gap += r.relevant_gap;
    a.mean_n_quasi += static_cast<double>(r.n_quasi);
    a.mean_n_quasi_levels += static_cast<double>(r.n_quasi_levels);
    a.mean_p_success += r.p_success;
    if (!r.bound_ok) ++a.bound_violations;
  }
  std::vector<SpectraAggregate> out;
  for (auto& [key, a] : cells) {
    const double c = a.count;
    a.mean_relevant_gap /= c;
    a.mean_n_quasi /= c;
    a.mean_n_quasi_levels /= c;
    a.mean_p_success /= c;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.setting) < std::tie(b.n, b.setting);
  });
  return out;
}

csv::Table to_table(const std::vector<SpectraRecord>& rows) {
  csv::Table t;
  t.header = {"setting",        "n",           "instance_seed", "instance_index",
              "relevant_gap",   "grid_gap",    "argmin_lambda", "diagonal_gap", "d",
              "n_quasi",        "n_quasi_levels", "delta",       "p_success",
              "lambda_lo",      "lambda_hi",   "grid_points",   "bound_ok",
              "params_source",  "status",      "params"};
  for (const auto& r : rows) {
    t.rows.push_back({std::string(to_string(r.setting)), str(r.n),
                      str(r.instance_seed), str(r.instance_index),
                      csv::number(r.relevant_gap), csv::number(r.grid_gap),
                      csv::number(r.argmin_lambda),
                      csv::number(r.diagonal_gap), str(r.d), str(r.n_quasi),
                      str(r.n_quasi_levels), csv::number(r.delta),
                      csv::number(r.p_success), csv::number(r.lambda_lo),
                      csv::number(r.lambda_hi), str(r.grid_points),
                      r.bound_ok ? "1" : "0", r.params_source, r.status,
                      join_params(r.params)});
  }
  return t;
}

csv::Table to_table(const std::vector<SpectraAggregate>& rows) {
  csv::Table t;
  t.header = {"setting", "n", "count", "mean_relevant_gap", "mean_n_quasi",
              "mean_n_quasi_levels", "mean_p_success", "bound_violations"};
  for (const auto& a : rows) {
    t.rows.push_back({std::string(to_string(a.setting)), str(a.n), str(a.count),
                      csv::number(a.mean_relevant_gap), csv::number(a.mean_n_quasi),
                      csv::number(a.mean_n_quasi_levels),
                      csv::number(a.mean_p_success), str(a.bound_violations)});
  }
  return t;
}

void write_output(const csv::Table& table, const std::filesystem::path& dir,
                  const std::string& name, const nlohmann::json& meta) {
  std::filesystem::create_directories(dir);
  csv::write_table(table, dir / name);
  nlohmann::json j = meta;
  j["file"] = name;
  j["rows"] = table.rows.size();
  j["columns"] = table.header;
  if (!j.contains("code_version")) j["code_version"] = code_version();
  std::ofstream f(dir / (name + ".json"), std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write sidecar for " + name);
  f << j.dump(2) << '\n';
}

}  // namespace nppq
