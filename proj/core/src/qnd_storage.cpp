#include "eitcv/qnd_storage.hpp"

#include "eitcv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eitcv {

PolaritonAngle PolaritonAngle::from_theta(double theta) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(theta >= 0.0 && theta <= half_pi)) {
    throw ValidationError("polariton angle must lie in [0, pi/2], got " +
                          std::to_string(theta));
  }
  if (theta == half_pi) {
    return PolaritonAngle(theta, 0.0, 1.0);
  }
  return PolaritonAngle(theta, std::cos(theta), std::sin(theta));
}

PolaritonAngle PolaritonAngle::from_rabi(double omega1, double omega2,
                                         double n_atoms) {
  if (!(omega1 > 0.0)) {
    throw DomainError("control Rabi frequency must be positive (angle is "
                      "singular at omega1 = 0)");
  }
  if (!(omega2 >= 0.0)) {
    throw ValidationError("signal Rabi frequency must be nonnegative");
  }
  if (!(n_atoms > 0.0)) {
    throw ValidationError("atom number must be positive");
  }
  return from_theta(std::atan(omega2 * std::sqrt(n_atoms) / omega1));
}

double PolaritonAngle::group_index() const {
  if (mu_ == 0.0) {
    throw DomainError("group index undefined at theta = pi/2");
  }
  return (nu_ * nu_) / (mu_ * mu_);
}

ModeMap storage_map(const PolaritonAngle& angle) {
  Eigen::MatrixXcd a(2, 2);
  a << angle.mu(), -angle.nu(), angle.nu(), angle.mu();
  return ModeMap(std::move(a), Eigen::MatrixXcd::Zero(2, 2));
}

double squared_correlation(double cov, double v1, double v2) {
  const double denom = v1 * v2;
  if (denom <= 0.0) {
    return 0.0;
  }
  return std::clamp(cov * cov / denom, 0.0, 1.0);
}

namespace {

double ratio_or_zero(double num, double denom) {
  return denom > 0.0 ? num / denom : 0.0;
}

}  // namespace

CorrelationTriple closed_form_coefficients(double v_signal, double v_spin,
                                           const PolaritonAngle& angle) {
  if (!(v_signal >= 0.0) || !(v_spin >= 0.0)) {
    throw ValidationError("variances must be nonnegative");
  }
  if (v_signal == 0.0 && v_spin == 0.0) {
    throw DegenerateInputError(
        "signal and medium variances both vanish (coefficients are 0/0)");
  }
  const double mu2 = angle.mu() * angle.mu();
  const double nu2 = angle.nu() * angle.nu();
  const double out_signal = mu2 * v_signal + nu2 * v_spin;
  const double out_spin = mu2 * v_spin + nu2 * v_signal;
  const double diff = v_signal - v_spin;
  return {ratio_or_zero(mu2 * v_signal, out_signal),
          ratio_or_zero(nu2 * v_signal, out_spin),
          ratio_or_zero(mu2 * nu2 * diff * diff, out_signal * out_spin)};
}

CorrelationTriple fock_medium_coefficients(double n1,
                                           const PolaritonAngle& angle) {
  if (!(n1 >= 0.0)) {
    throw ValidationError("occupation n1 must be nonnegative");
  }
  const double mu2 = angle.mu() * angle.mu();
  const double nu2 = angle.nu() * angle.nu();
  const double cross = 4.0 * mu2 * nu2 * n1 * n1;
  return {mu2 / (1.0 + 2.0 * nu2 * n1), nu2 / (1.0 + 2.0 * mu2 * n1),
          cross / (1.0 + cross + 2.0 * n1)};
}

CorrelationReport correlation_report(const QuadratureMoments& signal,
                                     const SpinMoments& medium,
                                     const PolaritonAngle& angle) {
  const std::array<ModeLabel, 2> labels{kSignalMode, kSpinMode};
  GaussianState state = make_vacuum({labels.begin(), labels.end()});
  state = set_mode_moments(state, kSignalMode, signal);
  state = set_mode_moments(state, kSpinMode, medium);

  const MapResult out = apply_map(state, storage_map(angle), labels);
  const Eigen::MatrixXd& cross = out.cross_cov;
  const Eigen::MatrixXd& cov = out.state.cov();
  const Eigen::MatrixXd& cov_in = state.cov();
  const auto f = static_cast<Eigen::Index>(2 * out.state.index_of(kSignalMode));
  const auto x = static_cast<Eigen::Index>(2 * out.state.index_of(kSpinMode));

  CorrelationReport report;
  double worst = 0.0;
  for (int quad = 0; quad < 2; ++quad) {
    // Rows of cross_cov follow the input label order: f then xi.
    const Eigen::Index in_f = quad;
    const Eigen::Index in_x = 2 + quad;
    QuadratureCorrelation qc;
    qc.v_in_signal = cov_in(in_f, in_f);
    qc.v_in_spin = cov_in(in_x, in_x);
    qc.v_out_signal = cov(f + quad, f + quad);
    qc.v_out_spin = cov(x + quad, x + quad);
    // Raises DegenerateInputError for the 0/0 pair.
    qc.closed_form =
        closed_form_coefficients(qc.v_in_signal, qc.v_in_spin, angle);
    qc.coefficients = {
        squared_correlation(cross(in_f, f + quad), qc.v_in_signal,
                            qc.v_out_signal),
        squared_correlation(cross(in_f, x + quad), qc.v_in_signal,
                            qc.v_out_spin),
        squared_correlation(cov(f + quad, x + quad), qc.v_out_signal,
                            qc.v_out_spin)};
    qc.qnd_gain = ratio_or_zero(cross(in_f, x + quad), qc.v_in_signal);
    worst = std::max({worst,
                      std::abs(qc.coefficients.c1 - qc.closed_form.c1),
                      std::abs(qc.coefficients.c2 - qc.closed_form.c2),
                      std::abs(qc.coefficients.c3 - qc.closed_form.c3)});
    (quad == 0 ? report.q : report.p) = qc;
  }
  report.route_disagreement = worst;
  if (worst > kRouteAgreementTolerance) {
    throw NumericalError(
        "moment propagation and closed-form coefficients disagree by " +
        std::to_string(worst));
  }
  return report;
}

QndConditions qnd_condition_check(const SpinMoments& medium,
                                  const PolaritonAngle& angle, double margin) {
  if (!(margin > 0.0 && margin <= 1.0)) {
    throw ValidationError("QND margin must lie in (0, 1]");
  }
  const double mu2 = angle.mu() * angle.mu();
  const double nu2 = angle.nu() * angle.nu();
  const double bound = mu2 == 0.0 ? std::numeric_limits<double>::infinity()
                                  : margin * nu2 / mu2;
  return {medium.var_q <= bound, medium.var_p <= bound};
}

}  // namespace eitcv
