#include "eitcv/cloning.hpp"

#include "eitcv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace eitcv {

ModeMap amplifier_map() {
  const double g = std::numbers::sqrt2;
  Eigen::MatrixXcd a(2, 2);
  Eigen::MatrixXcd b(2, 2);
  a << g, 0.0, 0.0, g;
  b << 0.0, 1.0, 1.0, 0.0;
  return ModeMap(std::move(a), std::move(b));
}

ModeMap one_shot_clone_map() {
  const double h = 1.0 / std::numbers::sqrt2;
  const double g = std::numbers::sqrt2;
  // Columns: f, c, xi. Rows: Phi_f, c_out, Phi_xi.
  Eigen::MatrixXcd a(3, 3);
  Eigen::MatrixXcd b(3, 3);
  a << 1.0, 0.0, -h,
       0.0, g, 0.0,
       1.0, 0.0, h;
  b << 0.0, h, 0.0,
       1.0, 0.0, 0.0,
       0.0, h, 0.0;
  return ModeMap(std::move(a), std::move(b));
}

double fidelity(double vq_added, double vp_added) {
  const double fq = 2.0 + vq_added;
  const double fp = 2.0 + vp_added;
  if (!(fq > 0.0) || !(fp > 0.0)) {
    throw DomainError("fidelity undefined: (2 + V_Q)(2 + V_P) must be positive");
  }
  return 2.0 / std::sqrt(fq * fp);
}

CloneReport clone(const QuadratureMoments& signal,
                  const AtomicMediumState& medium,
                  const CloneOptions& options) {
  return clone_with_moments(signal, spin_moments(medium), options);
}

CloneReport clone_with_moments(const QuadratureMoments& signal,
                               const SpinMoments& medium,
                               const CloneOptions& options) {
  if (!(options.balance_tolerance >= 0.0)) {
    throw ValidationError("balance tolerance must be nonnegative");
  }
  const PolaritonAngle angle = PolaritonAngle::from_theta(options.theta);

  const std::array<ModeLabel, 3> labels{kSignalMode, kAncillaMode, kSpinMode};
  GaussianState state = make_vacuum({labels.begin(), labels.end()});
  state = set_mode_moments(state, kSignalMode, signal);
  state = set_mode_moments(state, kSpinMode, medium);

  // Amplifier on (f, c), then the storage rotation on (f, xi).
  const std::array<std::size_t, 2> amp_slots{0, 1};
  const std::array<std::size_t, 2> store_slots{0, 2};
  const ModeMap cloner = compose(embed(storage_map(angle), store_slots, 3),
                                 embed(amplifier_map(), amp_slots, 3));

  const MapResult out = apply_map(state, cloner, labels);
  const GaussianState& result = out.state;

  CloneReport report;
  report.input = signal;
  report.theta = angle.theta();
  report.unbalanced_angle = std::abs(angle.theta() - std::numbers::pi / 4.0) >
                            options.balance_tolerance;

  auto fill = [&](const ModeLabel& label) {
    CloneOutput c;
    c.moments = result.moments(label);
    c.added_noise_q = c.moments.var_q - signal.var_q;
    c.added_noise_p = c.moments.var_p - signal.var_p;
    c.fidelity = fidelity(c.added_noise_q, c.added_noise_p);
    return c;
  };
  report.bright = fill(kSignalMode);
  report.dark = fill(kSpinMode);
  report.fidelity = std::min(report.bright.fidelity, report.dark.fidelity);

  const auto bright = static_cast<Eigen::Index>(2 * result.index_of(kSignalMode));
  const auto dark = static_cast<Eigen::Index>(2 * result.index_of(kSpinMode));
  for (int quad = 0; quad < 2; ++quad) {
    const double v_in = quad == 0 ? signal.var_q : signal.var_p;
    const double v_bright = result.cov()(bright + quad, bright + quad);
    const double v_dark = result.cov()(dark + quad, dark + quad);
    // cross_cov rows follow `labels`, so the signal input is rows 0 and 1.
    CorrelationTriple t{
        squared_correlation(out.cross_cov(quad, bright + quad), v_in, v_bright),
        squared_correlation(out.cross_cov(quad, dark + quad), v_in, v_dark),
        squared_correlation(result.cov()(bright + quad, dark + quad), v_bright,
                            v_dark)};
    (quad == 0 ? report.correlations_q : report.correlations_p) = t;
  }
  return report;
}

}  // namespace eitcv
