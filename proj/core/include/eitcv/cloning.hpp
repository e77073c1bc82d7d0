#pragma once

// Symmetric 1 -> 2 cloning of a signal mode: a gain-2 phase-insensitive
// amplifier with a vacuum ancilla c,
//     f' = sqrt(2) f + c^+,     c_out = sqrt(2) c + f^+,
// followed by the balanced polariton rotation of f' with the medium
// excitation xi. The bright (Phi_f) and dark (Phi_xi) polaritons are the
// two clones. At theta = pi/4 the composition reads
//     Phi_f  = f + (c^+ - xi) / sqrt(2),
//     Phi_xi = f + (c^+ + xi) / sqrt(2).

#include "eitcv/atomic_states.hpp"
#include "eitcv/gaussian_state.hpp"
#include "eitcv/qnd_storage.hpp"

#include <numbers>

namespace eitcv {

inline const ModeLabel kAncillaMode = "c";

// Two-mode map on (f, c).
ModeMap amplifier_map();

// The composed cloner written out directly for theta = pi/4, acting on
// (f, c, xi) and producing (Phi_f, c_out, Phi_xi).
ModeMap one_shot_clone_map();

// F = 2 / sqrt((2 + vq) (2 + vp)) for added-noise variances vq, vp.
// Throws DomainError when either factor is not positive.
double fidelity(double vq_added, double vp_added);

// Fidelity value quoted in the literature for the balanced BEC point
// (|alpha1|^2 = 1/2, phi = pi/4). The fidelity formula evaluated on the
// cloner's added noise gives 8/11 there; both are reported side by side.
inline constexpr double kQuotedBalancedBecFidelity = 0.8;

struct CloneOutput {
  QuadratureMoments moments;
  double added_noise_q = 0.0;
  double added_noise_p = 0.0;
  double fidelity = 0.0;
};

struct CloneReport {
  QuadratureMoments input;
  CloneOutput bright;  // Phi_f, the optical clone
  CloneOutput dark;    // Phi_xi, the clone stored in the medium
  // C1: input vs bright clone, C2: input vs dark clone, C3: between clones.
  CorrelationTriple correlations_q;
  CorrelationTriple correlations_p;
  // min of the two clones' fidelities (equal for symmetric cloning).
  double fidelity = 0.0;
  double theta = 0.0;
  // Set when |theta - pi/4| exceeds the balance tolerance; the two outputs
  // are then not symmetric clones.
  bool unbalanced_angle = false;
};

struct CloneOptions {
  double theta = std::numbers::pi / 4.0;
  double balance_tolerance = 1e-6;
};

// Ancilla fixed to vacuum. The medium enters as an effective bosonic mode
// carrying the moments from spin_moments(), means included.
CloneReport clone(const QuadratureMoments& signal,
                  const AtomicMediumState& medium,
                  const CloneOptions& options = {});

// Same, with explicitly supplied medium moments.
CloneReport clone_with_moments(const QuadratureMoments& signal,
                               const SpinMoments& medium,
                               const CloneOptions& options = {});

}  // namespace eitcv
