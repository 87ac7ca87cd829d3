#include "nppq/qa.hpp"

#include <array>
#include <chrono>
#include <cmath>

#include "nppq/dense.hpp"
#include "nppq/metrics.hpp"

namespace nppq {

namespace {

using Clock = std::chrono::steady_clock;

// Triple-jump weights: w1, w0, w1 with 2 w1 + w0 = 1.
const double kCbrt2 = std::cbrt(2.0);
const double kYoshidaOuter = 1.0 / (2.0 - kCbrt2);
const double kYoshidaInner = -kCbrt2 / (2.0 - kCbrt2);

void check_finite(const StateVector& s, std::size_t step) {
  const double nrm = s.norm_squared();
  if (!std::isfinite(nrm)) throw IntegratorError(step, "non-finite amplitudes");
}

void finish(QaResult& r, const ProblemHamiltonian& hp) {
  r.energy = expectation(r.final_state, hp.diag);
  r.epsilon = approximation_error(hp, r.energy);
  r.p_success = success_probability(hp, r.final_state);
  r.instance_seed = hp.instance.seed;
}

// Drive rotations are accumulated in `pending` (units of time, multiplied
// by h_i when flushed) so that adjacent half steps fuse into one pass.
class SplitStepper {
 public:
  SplitStepper(const ProblemHamiltonian& hp, const QaConfig& cfg,
               StateVector& state)
      : hp_(hp), cfg_(cfg), state_(state),
        angles_(static_cast<std::size_t>(hp.n())) {}

  // One symmetric step of signed length tau starting at time t.
  void strang(double t, double tau) {
    const double lam = schedule_lambda(cfg_.schedule, t + 0.5 * tau);
    pending_ += 0.5 * (1.0 - lam) * tau;
    flush();
    apply_diagonal_phase(state_, hp_.diag, lam * tau);
    pending_ = 0.5 * (1.0 - lam) * tau;
  }

  void flush() {
    if (pending_ == 0.0) return;
    for (std::size_t q = 0; q < angles_.size(); ++q) {
      angles_[q] = pending_ * cfg_.drive.h[q];
    }
    apply_x_rotations(state_, angles_);
    pending_ = 0.0;
  }

 private:
  const ProblemHamiltonian& hp_;
  const QaConfig& cfg_;
  StateVector& state_;
  std::vector<double> angles_;
  double pending_ = 0.0;
};

}  // namespace

std::size_t QaConfig::steps() const {
  const double base = dt > 0.0 ? dt : total_time() / 1000.0;
  const double raw = total_time() / base;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

double QaConfig::step() const {
  return total_time() / static_cast<double>(steps());
}

void QaConfig::validate(int n) const {
  schedule.validate();
  if (drive.n() != n) {
    throw std::invalid_argument("QaConfig: drive has " +
                                std::to_string(drive.n()) + " fields for " +
                                std::to_string(n) + " qubits");
  }
  drive.validate();
  if (dt < 0.0 || dt > total_time() || !std::isfinite(dt)) {
    throw std::domain_error("QaConfig: dt must satisfy 0 < dt <= T");
  }
}

QaConfig standard_qa_config(int n, double total_time) {
  QaConfig cfg;
  cfg.schedule = ScheduleSpec::linear(total_time);
  cfg.drive = DriveSpec::uniform(n);
  return cfg;
}

QaResult evolve(const ProblemHamiltonian& hp, const QaConfig& cfg) {
  cfg.validate(hp.n());
  const auto t0 = Clock::now();
  QaResult r;
  r.config = cfg;
  r.final_state = StateVector::plus(hp.n());

  const std::size_t steps = cfg.steps();
  const double h = cfg.step();
  SplitStepper stepper(hp, cfg, r.final_state);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = cfg.total_time() * static_cast<double>(k) /
                     static_cast<double>(steps);
    switch (cfg.method) {
      case Splitting::strang2:
        stepper.strang(t, h);
        break;
      case Splitting::yoshida4: {
        const double a = kYoshidaOuter * h;
        const double b = kYoshidaInner * h;
        stepper.strang(t, a);
        stepper.strang(t + a, b);
        stepper.strang(t + a + b, a);
        break;
      }
    }
    if ((k & 255U) == 255U) check_finite(r.final_state, k);
  }
  stepper.flush();
  check_finite(r.final_state, steps);

  finish(r, hp);
  r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

QaResult evolve(const NppInstance& inst, const QaConfig& cfg) {
  return evolve(build_hp(inst), cfg);
}

QaResult evolve_dense_reference(const NppInstance& inst, const QaConfig& cfg,
                                const std::function<double(double)>& lambda) {
  if (inst.n > kMaxDenseReferenceQubits) {
    throw std::domain_error("evolve_dense_reference: n > 6");
  }
  cfg.validate(inst.n);
  const auto t0 = Clock::now();
  const auto hp = build_hp(inst);
  const Eigen::MatrixXd drive = drive_matrix(cfg.drive);
  Eigen::VectorXd diag(static_cast<Eigen::Index>(hp.diag.diag.size()));
  for (Eigen::Index b = 0; b < diag.size(); ++b) diag(b) = hp.diag.diag[b];

  const auto plus = StateVector::plus(inst.n);
  Eigen::VectorXcd psi(diag.size());
  for (Eigen::Index b = 0; b < psi.size(); ++b) psi(b) = plus[b];

  const std::size_t steps = cfg.steps();
  const double h = cfg.step();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = cfg.total_time() * (static_cast<double>(k) + 0.5) /
                     static_cast<double>(steps);
    const double lam = lambda(t);
    Eigen::MatrixXd m = (1.0 - lam) * drive;
    m.diagonal() += lam * diag;
    const DenseHermitian ham(m.cast<std::complex<double>>());
    psi = expm_hermitian(ham, h) * psi;
  }

  QaResult r;
  r.config = cfg;
  std::vector<cplx> amps(psi.data(), psi.data() + psi.size());
  r.final_state = StateVector::from_amplitudes(inst.n, std::move(amps));
  check_finite(r.final_state, steps);
  finish(r, hp);
  r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

QaResult evolve_dense_reference(const NppInstance& inst, const QaConfig& cfg) {
  return evolve_dense_reference(
      inst, cfg, [&](double t) { return schedule_lambda(cfg.schedule, t); });
}

}  // namespace nppq
