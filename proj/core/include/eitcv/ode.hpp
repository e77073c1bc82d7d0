#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta integrator with local
// extrapolation and an elementary step-size controller, for small complex
// systems.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace eitcv {

using ComplexVector = Eigen::VectorXcd;
using OdeRhs = std::function<ComplexVector(double, const ComplexVector&)>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // Initial trial step; <= 0 picks one from the derivative scale.
  double initial_step = 0.0;
  // Step underflow floor relative to the integration span.
  double min_step_fraction = 1e-14;
  std::size_t max_steps = 50'000'000;
  // When set, every step has this size and no error control is applied.
  std::optional<double> fixed_step;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double smallest_step = 0.0;
};

struct OdeSolution {
  std::vector<double> times;
  std::vector<ComplexVector> values;
  OdeStats stats;
};

// Integrates from (t0, y0) and records the solution at each of
// `sample_times` (ascending, all >= t0). Steps are clipped to land exactly on
// sample times. Throws StiffnessError on step-size underflow and
// NumericalError on non-finite values or exhausted step budget.
OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0,
                             const ComplexVector& y0,
                             std::span<const double> sample_times,
                             const OdeOptions& options = {});

}  // namespace eitcv
