#pragma once

// Collective spin excitation of a two-level atomic ensemble in the Schwinger
// representation, xi = a2^+ a1 / sqrt(N), with quadratures
//     Q_xi = xi + xi^+,   P_xi = i (xi^+ - xi).

#include "eitcv/gaussian_state.hpp"

#include <variant>

namespace eitcv {

using SpinMoments = QuadratureMoments;

// Two-mode number state |n1>|n2>.
struct FockMedium {
  unsigned n1 = 0;
  unsigned n2 = 0;

  unsigned total() const { return n1 + n2; }
};

// (alpha1 a1^+ + alpha2 a2^+)^N |0> / sqrt(N!), with |alpha1| = mag1,
// |alpha2| = sqrt(1 - mag1^2) and alpha_j = |alpha_j| exp(i phase_j).
struct BecMedium {
  unsigned n_atoms = 1;
  double mag1 = 0.0;
  double phase1 = 0.0;
  double phase2 = 0.0;

  double mag2() const;
  // phi = phase2 - phase1.
  double relative_phase() const { return phase2 - phase1; }
};

// Idealized coherent-level medium: zero means, unit variances.
struct CoherentMedium {};

using AtomicMediumState = std::variant<FockMedium, BecMedium, CoherentMedium>;

FockMedium make_fock_medium(unsigned n1, unsigned n2);
BecMedium make_bec_medium(unsigned n_atoms, double mag1, double phase1,
                          double phase2);
// Convenience: phase1 = 0, phase2 = phi, mag1 = sqrt(population1).
BecMedium make_bec_medium_from_population(unsigned n_atoms, double population1,
                                          double phi);

void validate(const AtomicMediumState& state);

// Closed-form spin-quadrature moments.
//   Fock:     zero means, Var Q = Var P = (n1 (n2 + 1) + n2 (n1 + 1)) / N.
//   BEC:      <Q> = 2 sqrt(N) m1 m2 cos(phi), <P> = -2 sqrt(N) m1 m2 sin(phi),
//             Var Q = 1 - 4 m1^2 m2^2 cos^2(phi),
//             Var P = 1 - 4 m1^2 m2^2 sin^2(phi),
//             Cov QP = 4 m1^2 m2^2 sin(phi) cos(phi).
//   Coherent: zero means, unit variances.
// The BEC expressions are exact at every N (spin-coherent state).
SpinMoments spin_moments(const AtomicMediumState& state);

inline constexpr unsigned kMaxExactBecAtoms = 200;

// Moments evaluated directly from the binomial expansion of the BEC state,
// with no large-N reasoning. Throws CapacityError for N > 200.
SpinMoments exact_bec_moments(const BecMedium& state);

// Adiabatic ordering n3 << n1 < n2, with "<<" read as n3 <= ratio * n1.
bool adiabatic_condition(double n1, double n2, double n3, double ratio = 0.1);

}  // namespace eitcv
