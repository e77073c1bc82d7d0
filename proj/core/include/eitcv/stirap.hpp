#pragma once

// Mean-field dynamics of stimulated Raman two-color photoassociation in the
// rotating frame. Modes: a1 free atoms, a2 ground molecules, a3 excited
// molecules, f the signal field. With Omega1 = kappa(t) a1 and
// delta_j = Delta_j - sum_k lambda_jk |a_k|^2,
//
//   da1/dt = -g1 a1 + i d1 a1 + i conj(Omega1) a3
//   da2/dt = -g2 a2 + i d2 a2 + i (Omega2/2) conj(f) a3
//   da3/dt = -g3 a3 + i (Omega1/2) a1 + i s Omega2 f a2
//   df/dt  = i (Omega2/2) conj(a2) a3
//
// where s = 1 for the printed equations and s = 1/2 for the symmetrized set
// that follows from the pair Hamiltonian. The symmetrized set also uses
// conj(Omega2) in the a2 and f equations; the printed one does not, so it
// only has the charges below for real Omega2. Conserved charges for g = 0:
//   printed:     n1 + 2 n3 + 4 n2   and   n_f - n2
//   symmetrized: n1 + 2 n2 + 2 n3   and   n_f - n2

#include "eitcv/ode.hpp"
#include "eitcv/qnd_storage.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eitcv {

using Complex = std::complex<double>;

enum class EquationVariant { printed, symmetrized };
enum class PulseShape { gaussian, sech };

std::string_view to_string(EquationVariant v);
std::string_view to_string(PulseShape s);
EquationVariant parse_equation_variant(std::string_view text);
PulseShape parse_pulse_shape(std::string_view text);

struct PulseEnvelope {
  PulseShape shape = PulseShape::gaussian;
  double center = 0.0;
  double width = 1.0;

  // Peak-normalized: gaussian exp(-(t-c)^2 / (2 w^2)), sech sech((t-c)/w).
  double operator()(double t) const;
};

struct StirapParams {
  std::array<std::array<double, 3>, 3> lambda{};
  Complex kappa{0.0, 0.0};
  Complex omega2{0.0, 0.0};
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::array<double, 3> gamma{};
  PulseEnvelope kappa_pulse;
  PulseEnvelope omega2_pulse;
  EquationVariant variant = EquationVariant::printed;

  // gamma_j >= 0, pulse widths > 0, lambda symmetric, all finite.
  void validate() const;

  Complex kappa_at(double t) const { return kappa * kappa_pulse(t); }
  Complex omega2_at(double t) const { return omega2 * omega2_pulse(t); }
};

struct StirapState {
  Complex a1{0.0, 0.0};
  Complex a2{0.0, 0.0};
  Complex a3{0.0, 0.0};
  Complex f{0.0, 0.0};
  double t = 0.0;

  double n1() const { return std::norm(a1); }
  double n2() const { return std::norm(a2); }
  double n3() const { return std::norm(a3); }
  double nf() const { return std::norm(f); }
};

// n1 + 2 n2 + 2 n3: atom number counting each molecule as two atoms.
double atom_charge(const StirapState& s);
// n1 + 2 n3 + 4 n2: the quantity the printed equations conserve.
double printed_atom_charge(const StirapState& s);
// n_f - n2.
double photon_charge(const StirapState& s);

using StirapDerivative = std::array<Complex, 4>;

// Right-hand side in the order (a1, a2, a3, f).
StirapDerivative rhs(const StirapState& state, const StirapParams& params);

struct StirapOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t samples = 401;
  double adiabatic_ratio = 0.1;
  std::optional<double> fixed_step;
};

struct TrajectoryDiagnostics {
  // max_t |Q(t) - Q(0)| / |Q(0)| for each charge (0 if Q(0) = 0).
  double atom_charge_drift = 0.0;
  double printed_atom_charge_drift = 0.0;
  double photon_charge_drift = 0.0;
  // max_t n3(t) / N with N = atom_charge(initial).
  double max_excited_fraction = 0.0;
  // n2(t_end) / (N / 2).
  double final_molecular_fraction = 0.0;
  std::vector<bool> adiabatic_trace;
  OdeStats ode;
};

struct Trajectory {
  std::vector<StirapState> samples;
  TrajectoryDiagnostics diagnostics;
};

// Samples are equally spaced on [initial.t, t_end], endpoints included.
Trajectory integrate(const StirapState& initial, const StirapParams& params,
                     double t_end, const StirapOptions& options = {});

// theta(t) = atan(|Omega2(t)| sqrt(N) / |Omega1(t)|) with N the initial atom
// charge and Omega1 = kappa(t) a1(t). Undefined (nullopt) where Omega1 = 0.
std::vector<std::optional<PolaritonAngle>> eit_angle_trace(
    const Trajectory& trajectory, const StirapParams& params);

// Counterintuitive (Stokes-first) preset in dimensionless units: atom
// population normalized to n1 = 1, a strong seeded signal (n_f = 100),
// Gaussian pulses of unit width with Omega2 centred at -0.75 and kappa at
// +0.75, peak effective Rabi frequencies |kappa a1| = |Omega2 f| = 30, no
// decay, no mean-field shifts. Integration window [-5, 5] (10 pulse
// widths).
struct StirapPreset {
  StirapParams params;
  StirapState initial;
  double t_end = 0.0;
};
StirapPreset counterintuitive_preset(
    EquationVariant variant = EquationVariant::printed);

}  // namespace eitcv
