#include "nppq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nppq/rng.hpp"

namespace nppq {

namespace {

struct BudgetExhausted {};

struct NonFinite {
  double value;
};

class BoxedObjective {
 public:
  BoxedObjective(const Objective& f, std::span<const double> lower,
                 std::span<const double> upper, long long max_evals)
      : f_(f), lower_(lower), upper_(upper), max_evals_(max_evals) {}

  void project(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i], lower_[i], upper_[i]);
    }
  }

  double operator()(const std::vector<double>& x) {
    if (evals_ >= max_evals_) throw BudgetExhausted{};
    ++evals_;
    const double v = f_(x);
    if (!std::isfinite(v)) throw NonFinite{v};
    return v;
  }

  long long evals() const noexcept { return evals_; }

 private:
  const Objective& f_;
  std::span<const double> lower_;
  std::span<const double> upper_;
  long long max_evals_;
  long long evals_ = 0;
};

constexpr int kMaxRebuilds = 10;

}  // namespace

LocalResult nelder_mead(const Objective& f, std::vector<double> x0,
                        std::span<const double> lower,
                        std::span<const double> upper,
                        const NelderMeadOptions& opts) {
  const std::size_t d = x0.size();
  if (lower.size() != d || upper.size() != d) {
    throw std::invalid_argument("nelder_mead: bounds do not match dimension");
  }
  BoxedObjective fn(f, lower, upper, opts.max_evals);
  fn.project(x0);

  // Gao & Han (2012) adaptive parameters; the classic ones for d = 1.
  const double dd = static_cast<double>(d);
  const double rho = 1.0;
  const double chi = d >= 2 ? 1.0 + 2.0 / dd : 2.0;
  const double psi = d >= 2 ? 0.75 - 0.5 / dd : 0.5;
  const double sigma = d >= 2 ? 1.0 - 1.0 / dd : 0.5;

  std::vector<std::vector<double>> simplex;
  std::vector<double> values;
  LocalResult result;

  auto best_so_far = [&]() {
    if (values.empty()) return;
    const auto it = std::min_element(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(it - values.begin());
    result.x = simplex[idx];
    result.value = *it;
  };

  try {
    if (d == 0) {
      result.x = x0;
      result.value = fn(x0);
      result.evals = fn.evals();
      return result;
    }
    // A converged simplex can be degenerate, typically after vertices were
    // projected onto a face of the box. Rebuild it around the best point
    // until a fresh simplex brings no further decrease.
    double settled = std::numeric_limits<double>::infinity();
    for (int round = 0; round < kMaxRebuilds; ++round) {
      simplex.clear();
      values.clear();
      simplex.push_back(x0);
      values.push_back(round == 0 ? fn(x0) : settled);
      for (std::size_t j = 0; j < d; ++j) {
        auto v = x0;
        const double step = opts.initial_step * (upper[j] - lower[j]);
        v[j] = x0[j] + step <= upper[j] ? x0[j] + step : x0[j] - step;
        fn.project(v);
        simplex.push_back(std::move(v));
        values.push_back(fn(simplex.back()));
      }

      std::vector<std::size_t> order(d + 1);
      std::vector<double> centroid(d);
      auto along = [&](const std::vector<double>& from, double coef,
                       const std::vector<double>& to) {
        // from + coef (to - from), projected
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = from[i] + coef * (to[i] - from[i]);
        fn.project(x);
        return x;
      };

      for (;;) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
          return values[a] < values[b];
        });
        {
          std::vector<std::vector<double>> s2;
          std::vector<double> v2;
          for (auto k : order) {
            s2.push_back(std::move(simplex[k]));
            v2.push_back(values[k]);
          }
          simplex = std::move(s2);
          values = std::move(v2);
        }

        double diameter = 0.0;
        for (std::size_t j = 1; j <= d; ++j) {
          for (std::size_t i = 0; i < d; ++i) {
            diameter = std::max(diameter, std::abs(simplex[j][i] - simplex[0][i]));
          }
        }
        if (diameter < opts.xtol || values[d] - values[0] < opts.ftol) {
          result.status = LocalStatus::converged;
          break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[j][i];
        }
        for (auto& c : centroid) c /= dd;

        const auto& worst = simplex[d];
        auto xr = along(centroid, -rho, worst);
        const double fr = fn(xr);

        if (fr < values[0]) {
          auto xe = along(centroid, chi, xr);
          const double fe = fn(xe);
          if (fe < fr) {
            simplex[d] = std::move(xe);
            values[d] = fe;
          } else {
            simplex[d] = std::move(xr);
            values[d] = fr;
          }
          continue;
        }
        if (fr < values[d - 1]) {
          simplex[d] = std::move(xr);
          values[d] = fr;
          continue;
        }
        if (fr < values[d]) {
          auto xc = along(centroid, psi, xr);
          const double fc = fn(xc);
          if (fc <= fr) {
            simplex[d] = std::move(xc);
            values[d] = fc;
            continue;
          }
        } else {
          auto xc = along(centroid, psi, worst);
          const double fc = fn(xc);
          if (fc < values[d]) {
            simplex[d] = std::move(xc);
            values[d] = fc;
            continue;
          }
        }
        for (std::size_t j = 1; j <= d; ++j) {
          simplex[j] = along(simplex[0], sigma, simplex[j]);
          values[j] = fn(simplex[j]);
        }
      }
      best_so_far();
      if (!(settled - result.value >= opts.ftol)) break;
      settled = result.value;
      x0 = result.x;
    }
  } catch (const BudgetExhausted&) {
    result.status = LocalStatus::budget;
  } catch (const NonFinite& nf) {
    result.status = LocalStatus::aborted;
    result.note = "objective returned " + std::to_string(nf.value);
  } catch (const std::exception& e) {
    result.status = LocalStatus::aborted;
    result.note = e.what();
  }
  best_so_far();
  result.evals = fn.evals();
  if (result.status == LocalStatus::aborted) {
    result.value = std::numeric_limits<double>::infinity();
  }
  return result;
}

void OptProblem::validate() const {
  if (dim < 0 || static_cast<int>(lower.size()) != dim ||
      static_cast<int>(upper.size()) != dim) {
    throw std::invalid_argument("OptProblem: bounds do not match dimension");
  }
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) ||
        lower[i] > upper[i]) {
      throw std::invalid_argument("OptProblem: invalid bounds at coordinate " +
                                  std::to_string(i));
    }
  }
  if (restarts < 1) throw std::invalid_argument("OptProblem: restarts < 1");
  if (max_eval_per_start < 1) {
    throw std::invalid_argument("OptProblem: max_eval_per_start < 1");
  }
  if (!objective) throw std::invalid_argument("OptProblem: no objective");
  for (const auto& s : seeded_starts) {
    if (static_cast<int>(s.size()) != dim) {
      throw std::invalid_argument("OptProblem: seeded start has wrong size");
    }
  }
}

std::vector<double> start_point(const OptProblem& prob, int restart) {
  Xoshiro256 rng(derive_seed(prob.seed, static_cast<std::uint64_t>(restart)));
  std::vector<double> x(static_cast<std::size_t>(prob.dim));
  for (int i = 0; i < prob.dim; ++i) x[i] = rng.uniform(prob.lower[i], prob.upper[i]);
  if (restart < static_cast<int>(prob.seeded_starts.size())) {
    const auto& seeded = prob.seeded_starts[restart];
    for (int i = 0; i < prob.dim; ++i) {
      if (!std::isnan(seeded[i])) {
        x[i] = std::clamp(seeded[i], prob.lower[i], prob.upper[i]);
      }
    }
  }
  return x;
}

OptOutcome multistart_minimize(const OptProblem& prob) {
  prob.validate();
  OptOutcome out;
  out.restarts.resize(static_cast<std::size_t>(prob.restarts));
  NelderMeadOptions opts;
  opts.max_evals = prob.max_eval_per_start;
  opts.xtol = prob.xtol;
  opts.ftol = prob.ftol;

#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < prob.restarts; ++r) {
    auto& trace = out.restarts[static_cast<std::size_t>(r)];
    trace.start = start_point(prob, r);
    try {
      auto local = nelder_mead(prob.objective, trace.start, prob.lower,
                               prob.upper, opts);
      trace.final_params = std::move(local.x);
      trace.final_value = local.value;
      trace.evals = local.evals;
      trace.status = local.status;
      trace.note = std::move(local.note);
    } catch (const std::exception& e) {
      trace.final_value = std::numeric_limits<double>::infinity();
      trace.status = LocalStatus::aborted;
      trace.note = e.what();
    }
  }

  out.best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < prob.restarts; ++r) {
    const auto& t = out.restarts[static_cast<std::size_t>(r)];
    out.n_eval_total += t.evals;
    if (t.status == LocalStatus::aborted) {
      std::cerr << "multistart: restart " << r << " aborted: " << t.note << '\n';
      continue;
    }
    if (t.final_value < out.best_value) {
      out.best_value = t.final_value;
      out.best_params = t.final_params;
      out.best_restart = r;
    }
  }
  return out;
}

}  // namespace nppq
