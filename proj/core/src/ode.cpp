#include "eitcv/ode.hpp"

#include "eitcv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace eitcv {
namespace {

// Dormand & Prince (1980) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr std::array<double, 7> kB{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                   -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kBhat{5179.0 / 57600, 0.0, 7571.0 / 16695,
                                      393.0 / 640, -92097.0 / 339200,
                                      187.0 / 2100, 1.0 / 40};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

struct StepResult {
  ComplexVector y;
  ComplexVector error;
  ComplexVector k_last;  // f(t + h, y_new), reused as the next k1 (FSAL)
};

StepResult dopri_step(const OdeRhs& rhs, double t, const ComplexVector& y,
                      const ComplexVector& k1, double h, OdeStats& stats) {
  const ComplexVector k2 = rhs(t + kC[1] * h, y + h * (kA21 * k1));
  const ComplexVector k3 = rhs(t + kC[2] * h, y + h * (kA31 * k1 + kA32 * k2));
  const ComplexVector k4 =
      rhs(t + kC[3] * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
  const ComplexVector k5 = rhs(
      t + kC[4] * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
  const ComplexVector k6 =
      rhs(t + kC[5] * h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                  kA64 * k4 + kA65 * k5));
  ComplexVector y_new = y + h * (kB[0] * k1 + kB[2] * k3 + kB[3] * k4 +
                                 kB[4] * k5 + kB[5] * k6);
  ComplexVector k7 = rhs(t + h, y_new);
  stats.rhs_evaluations += 6;
  ComplexVector err =
      h * ((kB[0] - kBhat[0]) * k1 + (kB[2] - kBhat[2]) * k3 +
           (kB[3] - kBhat[3]) * k4 + (kB[4] - kBhat[4]) * k5 +
           (kB[5] - kBhat[5]) * k6 - kBhat[6] * k7);
  return {std::move(y_new), std::move(err), std::move(k7)};
}

double error_norm(const ComplexVector& err, const ComplexVector& y_old,
                  const ComplexVector& y_new, double rel_tol, double abs_tol) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y_old(i)), std::abs(y_new(i)));
    const double r = std::abs(err(i)) / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step_guess(const OdeRhs& rhs, double t0, const ComplexVector& y0,
                          const ComplexVector& f0, double span,
                          const OdeOptions& options, OdeStats& stats) {
  // Hairer, Norsett & Wanner, Solving ODEs I, sec. II.4.
  const double d0 = std::max(y0.norm(), options.abs_tol);
  const double d1 = f0.norm();
  double h0 = (d1 <= 1e-300) ? 1e-6 * span : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const ComplexVector f1 = rhs(t0 + h0, y0 + h0 * f0);
  ++stats.rhs_evaluations;
  const double d2 = (f1 - f0).norm() / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-300
                        ? std::max(1e-6 * span, h0 * 1e-3)
                        : std::pow(0.01 * std::max(options.rel_tol, 1e-16) / dmax,
                                   1.0 / 5.0);
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0,
                             const ComplexVector& y0,
                             std::span<const double> sample_times,
                             const OdeOptions& options) {
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
    throw ValidationError("integration tolerances must be positive");
  }
  if (options.fixed_step && !(*options.fixed_step > 0.0)) {
    throw ValidationError("fixed step must be positive");
  }
  if (sample_times.empty()) {
    throw ValidationError("no sample times requested");
  }
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (sample_times[i] < t0 || (i > 0 && sample_times[i] < sample_times[i - 1])) {
      throw ValidationError("sample times must be ascending and >= t0");
    }
  }

  OdeSolution sol;
  OdeStats& stats = sol.stats;
  const double t_end = sample_times.back();
  const double span = std::max(t_end - t0, 1e-300);
  const double min_step = options.min_step_fraction * span;

  double t = t0;
  ComplexVector y = y0;
  ComplexVector k1 = rhs(t, y);
  ++stats.rhs_evaluations;
  double h = options.fixed_step.value_or(
      options.initial_step > 0.0
          ? options.initial_step
          : initial_step_guess(rhs, t0, y0, k1, span, options, stats));
  stats.smallest_step = h;

  std::size_t next_sample = 0;
  auto record_due = [&]() {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
      sol.times.push_back(sample_times[next_sample]);
      sol.values.push_back(y);
      ++next_sample;
    }
  };
  record_due();

  while (next_sample < sample_times.size()) {
    if (stats.accepted + stats.rejected >= options.max_steps) {
      throw NumericalError("step budget exhausted at t = " + std::to_string(t));
    }
    const double target = sample_times[next_sample];
    double step = std::min(h, target - t);
    // Avoid leaving a sliver before the sample point.
    if (target - (t + step) < 1e-12 * span) step = target - t;

    StepResult r = dopri_step(rhs, t, y, k1, step, stats);
    if (!r.y.allFinite()) {
      if (options.fixed_step) {
        throw NumericalError("non-finite state at t = " + std::to_string(t));
      }
      ++stats.rejected;
      h = step * kMinFactor;
      if (h < min_step) {
        throw StiffnessError("step size underflow (non-finite trial) at t = " +
                             std::to_string(t));
      }
      continue;
    }

    if (options.fixed_step) {
      t = (step == target - t) ? target : t + step;
      y = std::move(r.y);
      k1 = std::move(r.k_last);
      ++stats.accepted;
      record_due();
      continue;
    }

    const double err =
        error_norm(r.error, y, r.y, options.rel_tol, options.abs_tol);
    const double factor =
        err == 0.0 ? kMaxFactor
                   : std::clamp(kSafety * std::pow(err, -1.0 / 5.0), kMinFactor,
                                kMaxFactor);
    if (err <= 1.0) {
      t = (step == target - t) ? target : t + step;
      y = std::move(r.y);
      k1 = std::move(r.k_last);
      ++stats.accepted;
      stats.smallest_step = std::min(stats.smallest_step, step);
      // A step clipped to a sample point does not shrink the controller's h.
      const double proposed = step * factor;
      h = step < h ? std::max(proposed, h) : proposed;
      record_due();
    } else {
      ++stats.rejected;
      h = step * std::min(1.0, factor);
      if (h < min_step) {
        throw StiffnessError("step size underflow at t = " + std::to_string(t) +
                             " (h = " + std::to_string(h) +
                             ", error ratio = " + std::to_string(err) + ")");
      }
    }
  }
  return sol;
}

}  // namespace eitcv
