#pragma once

// Storage of a signal mode f into the collective excitation xi through the
// polariton rotation
//     Phi_f  = mu f  - nu xi,
//     Phi_xi = mu xi + nu f,        mu = cos(theta), nu = sin(theta),
// and the correlation coefficients that grade the storage:
//     C1 = corr^2(X_f^in, X_f^out)      distortion of the transmitted signal
//     C2 = corr^2(X_f^in, X_xi^out)     quality of the recorded copy
//     C3 = corr^2(X_f^out, X_xi^out)    correlation between the outputs
// with corr^2(a, b) = cov(a, b)^2 / (Var a Var b).

#include "eitcv/atomic_states.hpp"
#include "eitcv/gaussian_state.hpp"

namespace eitcv {

inline const ModeLabel kSignalMode = "f";
inline const ModeLabel kSpinMode = "xi";

class PolaritonAngle {
 public:
  // theta in [0, pi/2]. At exactly pi/2 the map is a full swap (mu = 0) and
  // the group index is undefined.
  static PolaritonAngle from_theta(double theta);
  // tan(theta) = omega2 sqrt(n_atoms) / omega1.
  static PolaritonAngle from_rabi(double omega1, double omega2,
                                  double n_atoms);

  double theta() const { return theta_; }
  double mu() const { return mu_; }
  double nu() const { return nu_; }
  // n_g = nu^2 / mu^2 = tan^2(theta). Throws DomainError at theta = pi/2.
  double group_index() const;

 private:
  PolaritonAngle(double theta, double mu, double nu)
      : theta_(theta), mu_(mu), nu_(nu) {}

  double theta_;
  double mu_;
  double nu_;
};

ModeMap storage_map(const PolaritonAngle& angle);

struct CorrelationTriple {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

// corr^2 = cov^2 / (v1 v2); a pair involving a zero-variance quantity is
// reported as 0.
double squared_correlation(double cov, double v1, double v2);

// Closed forms in terms of the input variances:
//   C1 = mu^2 Vf / (mu^2 Vf + nu^2 Vxi)
//   C2 = nu^2 Vf / (mu^2 Vxi + nu^2 Vf)
//   C3 = mu^2 nu^2 (Vf - Vxi)^2 / ((mu^2 Vf + nu^2 Vxi)(mu^2 Vxi + nu^2 Vf))
// Throws DegenerateInputError when both variances vanish.
CorrelationTriple closed_form_coefficients(double v_signal, double v_spin,
                                           const PolaritonAngle& angle);

// Number-state medium |n1>|n2> with a coherent signal, in the regime
// n2 ~ N, where Var Q_xi = 1 + 2 n1:
//   C1 = mu^2 / (1 + 2 nu^2 n1),  C2 = nu^2 / (1 + 2 mu^2 n1),
//   C3 = 4 mu^2 nu^2 n1^2 / (1 + 4 mu^2 nu^2 n1^2 + 2 n1).
CorrelationTriple fock_medium_coefficients(double n1,
                                           const PolaritonAngle& angle);

struct QuadratureCorrelation {
  CorrelationTriple coefficients;
  CorrelationTriple closed_form;
  double v_in_signal = 0.0;
  double v_in_spin = 0.0;
  double v_out_signal = 0.0;
  double v_out_spin = 0.0;
  // Regression gain cov(X_f^in, X_xi^out) / Var X_f^in (equals nu).
  double qnd_gain = 0.0;
};

struct CorrelationReport {
  QuadratureCorrelation q;
  QuadratureCorrelation p;
  // Largest |moment-propagation - closed-form| over all six coefficients.
  double route_disagreement = 0.0;
};

inline constexpr double kRouteAgreementTolerance = 1e-10;

// Propagates the two input modes through storage_map and evaluates the
// coefficients from the resulting covariances, then cross-checks them
// against the closed forms. Throws NumericalError if the two routes differ
// by more than 1e-10 and DegenerateInputError for a 0/0 quadrature.
CorrelationReport correlation_report(const QuadratureMoments& signal,
                                     const SpinMoments& medium,
                                     const PolaritonAngle& angle);

struct QndConditions {
  bool q = false;
  bool p = false;
};

// Var X_xi <= margin * nu^2 / mu^2 for each quadrature; margin in (0, 1].
QndConditions qnd_condition_check(const SpinMoments& medium,
                                  const PolaritonAngle& angle,
                                  double margin = 0.1);

}  // namespace eitcv
