#include "eitcv/stirap.hpp"

#include "eitcv/atomic_states.hpp"
#include "eitcv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace eitcv {

std::string_view to_string(EquationVariant v) {
  return v == EquationVariant::printed ? "printed" : "symmetrized";
}

std::string_view to_string(PulseShape s) {
  return s == PulseShape::gaussian ? "gaussian" : "sech";
}

EquationVariant parse_equation_variant(std::string_view text) {
  if (text == "printed") return EquationVariant::printed;
  if (text == "symmetrized") return EquationVariant::symmetrized;
  throw ValidationError("unknown equation variant '" + std::string(text) +
                        "' (expected printed or symmetrized)");
}

PulseShape parse_pulse_shape(std::string_view text) {
  if (text == "gaussian") return PulseShape::gaussian;
  if (text == "sech") return PulseShape::sech;
  throw ValidationError("unknown pulse shape '" + std::string(text) +
                        "' (expected gaussian or sech)");
}

double PulseEnvelope::operator()(double t) const {
  const double x = (t - center) / width;
  switch (shape) {
    case PulseShape::gaussian:
      return std::exp(-0.5 * x * x);
    case PulseShape::sech:
      return 1.0 / std::cosh(x);
  }
  return 0.0;
}

void StirapParams::validate() const {
  for (std::size_t j = 0; j < 3; ++j) {
    if (!(gamma[j] >= 0.0) || !std::isfinite(gamma[j])) {
      throw ValidationError("decay rates must be finite and nonnegative");
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!std::isfinite(lambda[j][k])) {
        throw ValidationError("interaction matrix must be finite");
      }
      if (lambda[j][k] != lambda[k][j]) {
        throw ValidationError("interaction matrix lambda must be symmetric");
      }
    }
  }
  for (const PulseEnvelope* p : {&kappa_pulse, &omega2_pulse}) {
    if (!(p->width > 0.0) || !std::isfinite(p->width) ||
        !std::isfinite(p->center)) {
      throw ValidationError("pulse widths must be positive and finite");
    }
  }
  if (!std::isfinite(kappa.real()) || !std::isfinite(kappa.imag()) ||
      !std::isfinite(omega2.real()) || !std::isfinite(omega2.imag()) ||
      !std::isfinite(delta1) || !std::isfinite(delta2)) {
    throw ValidationError("couplings and detunings must be finite");
  }
}

double atom_charge(const StirapState& s) {
  return s.n1() + 2.0 * s.n2() + 2.0 * s.n3();
}

double printed_atom_charge(const StirapState& s) {
  return s.n1() + 2.0 * s.n3() + 4.0 * s.n2();
}

double photon_charge(const StirapState& s) { return s.nf() - s.n2(); }

StirapDerivative rhs(const StirapState& s, const StirapParams& p) {
  const Complex i{0.0, 1.0};
  const std::array<double, 3> n{s.n1(), s.n2(), s.n3()};
  auto shift = [&](std::size_t j, double detuning) {
    double d = detuning;
    for (std::size_t k = 0; k < 3; ++k) d -= p.lambda[j][k] * n[k];
    return d;
  };
  const double d1 = shift(0, p.delta1);
  const double d2 = shift(1, p.delta2);
  const Complex omega1 = p.kappa_at(s.t) * s.a1;
  const Complex omega2 = p.omega2_at(s.t);
  const bool printed = p.variant == EquationVariant::printed;
  const double stokes_scale = printed ? 1.0 : 0.5;
  // The printed set carries Omega2 unconjugated everywhere; the Hamiltonian
  // set needs conj(Omega2) on the lowering side. Equal for real Omega2.
  const Complex omega2_low = printed ? omega2 : std::conj(omega2);

  return {-p.gamma[0] * s.a1 + i * d1 * s.a1 + i * std::conj(omega1) * s.a3,
          -p.gamma[1] * s.a2 + i * d2 * s.a2 +
              i * (0.5 * omega2_low) * std::conj(s.f) * s.a3,
          -p.gamma[2] * s.a3 + i * (0.5 * omega1) * s.a1 +
              i * (stokes_scale * omega2) * s.f * s.a2,
          i * (0.5 * omega2_low) * std::conj(s.a2) * s.a3};
}

namespace {

ComplexVector pack(const StirapState& s) {
  ComplexVector y(4);
  y << s.a1, s.a2, s.a3, s.f;
  return y;
}

StirapState unpack(const ComplexVector& y, double t) {
  return {y(0), y(1), y(2), y(3), t};
}

double relative_drift(double value, double reference) {
  return reference == 0.0 ? std::abs(value)
                          : std::abs(value - reference) / std::abs(reference);
}

}  // namespace

Trajectory integrate(const StirapState& initial, const StirapParams& params,
                     double t_end, const StirapOptions& options) {
  params.validate();
  if (!(t_end > initial.t)) {
    throw ValidationError("t_end must exceed the initial time");
  }
  if (options.samples < 2) {
    throw ValidationError("need at least two trajectory samples");
  }

  std::vector<double> times(options.samples);
  const double dt = (t_end - initial.t) / static_cast<double>(options.samples - 1);
  for (std::size_t k = 0; k < options.samples; ++k) {
    times[k] = initial.t + dt * static_cast<double>(k);
  }
  times.back() = t_end;

  OdeOptions ode;
  ode.rel_tol = options.rel_tol;
  ode.abs_tol = options.abs_tol;
  ode.fixed_step = options.fixed_step;
  const OdeRhs f = [&params](double t, const ComplexVector& y) {
    const StirapDerivative d = rhs(unpack(y, t), params);
    ComplexVector out(4);
    out << d[0], d[1], d[2], d[3];
    return out;
  };
  const OdeSolution sol = integrate_dopri5(f, initial.t, pack(initial), times, ode);

  Trajectory traj;
  traj.samples.reserve(sol.times.size());
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    traj.samples.push_back(unpack(sol.values[k], sol.times[k]));
  }

  TrajectoryDiagnostics& diag = traj.diagnostics;
  diag.ode = sol.stats;
  const StirapState& first = traj.samples.front();
  const double q1 = atom_charge(first);
  const double q1_printed = printed_atom_charge(first);
  const double q2 = photon_charge(first);
  diag.adiabatic_trace.reserve(traj.samples.size());
  for (const StirapState& s : traj.samples) {
    diag.atom_charge_drift =
        std::max(diag.atom_charge_drift, relative_drift(atom_charge(s), q1));
    diag.printed_atom_charge_drift =
        std::max(diag.printed_atom_charge_drift,
                 relative_drift(printed_atom_charge(s), q1_printed));
    diag.photon_charge_drift =
        std::max(diag.photon_charge_drift, relative_drift(photon_charge(s), q2));
    if (q1 > 0.0) {
      diag.max_excited_fraction = std::max(diag.max_excited_fraction, s.n3() / q1);
    }
    diag.adiabatic_trace.push_back(
        adiabatic_condition(s.n1(), s.n2(), s.n3(), options.adiabatic_ratio));
  }
  if (q1 > 0.0) {
    diag.final_molecular_fraction = traj.samples.back().n2() / (0.5 * q1);
  }
  return traj;
}

std::vector<std::optional<PolaritonAngle>> eit_angle_trace(
    const Trajectory& trajectory, const StirapParams& params) {
  std::vector<std::optional<PolaritonAngle>> out;
  out.reserve(trajectory.samples.size());
  if (trajectory.samples.empty()) return out;
  const double n_atoms = atom_charge(trajectory.samples.front());
  for (const StirapState& s : trajectory.samples) {
    const double omega1 = std::abs(params.kappa_at(s.t) * s.a1);
    const double omega2 = std::abs(params.omega2_at(s.t));
    if (!(omega1 > 0.0) || !(n_atoms > 0.0)) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(PolaritonAngle::from_rabi(omega1, omega2, n_atoms));
    }
  }
  return out;
}

StirapPreset counterintuitive_preset(EquationVariant variant) {
  StirapPreset preset;
  constexpr double signal_photons = 100.0;
  constexpr double peak_rabi = 30.0;
  StirapParams& p = preset.params;
  p.kappa = peak_rabi;
  p.omega2 = peak_rabi / std::sqrt(signal_photons);
  p.kappa_pulse = {PulseShape::gaussian, 0.75, 1.0};
  p.omega2_pulse = {PulseShape::gaussian, -0.75, 1.0};
  p.variant = variant;
  preset.initial = {Complex{1.0, 0.0}, Complex{}, Complex{},
                    Complex{std::sqrt(signal_photons), 0.0}, -5.0};
  preset.t_end = 5.0;
  return preset;
}

}  // namespace eitcv
