#pragma once

// Brute-force truncated Fock-space simulator. States are dense amplitude
// tensors over a product of per-mode number bases; the last mode varies
// fastest. Unitaries are exact exponentials of their generators, block
// diagonalized by the conserved number combination, so the results are
// independent of the moment engine in gaussian_state.hpp.

#include "eitcv/atomic_states.hpp"
#include "eitcv/gaussian_state.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace eitcv::oracle {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 10'000'000;
inline constexpr double kLeakTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;

struct VacuumSpec {};
struct FockSpec {
  unsigned n = 0;
};
struct CoherentSpec {
  Complex alpha{0.0, 0.0};
};
// D(alpha) S(zeta) |0> with zeta = r exp(i angle) and
// S(zeta) = exp((conj(zeta) a^2 - zeta a^+2) / 2). Var Q = cosh 2r - sinh 2r
// cos(angle); angle = 0 squeezes Q.
struct SqueezedSpec {
  Complex alpha{0.0, 0.0};
  double r = 0.0;
  double angle = 0.0;
};
using ModeSpec = std::variant<VacuumSpec, FockSpec, CoherentSpec, SqueezedSpec>;

struct ModeFactor {
  ModeLabel label;
  std::size_t cutoff = 1;  // basis |0>..|cutoff-1>
  ModeSpec spec;
};

// Two atomic modes holding the BEC state of atomic_states.hpp exactly, each
// with cutoff N + 1. The first label is the a1 mode.
struct BecPairFactor {
  ModeLabel first;
  ModeLabel second;
  BecMedium medium;
};

using Factor = std::variant<ModeFactor, BecPairFactor>;

class FockState {
 public:
  // Checks labels, dimensions, capacity, and unit norm within 1e-12.
  FockState(std::vector<ModeLabel> labels, std::vector<std::size_t> dims,
            Eigen::VectorXcd amplitudes);

  const std::vector<ModeLabel>& labels() const { return labels_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  std::size_t stride(std::size_t mode) const { return strides_[mode]; }

  // Throws ValidationError for an unknown label.
  std::size_t index_of(std::string_view label) const;
  Complex amplitude(std::span<const std::size_t> occupation) const;

 private:
  std::vector<ModeLabel> labels_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  Eigen::VectorXcd amps_;
};

// Product state of the given factors, in order. Throws CapacityError above
// kMaxDimension and TruncationError when a coherent factor has
// cutoff < |alpha|^2 + 8|alpha| + 10 or a state leaks more than
// kLeakTolerance past its cutoff.
FockState build_state(std::span<const Factor> factors);

// exp(theta (b^+ a - a^+ b)) on modes (a, b); Heisenberg action
// a -> cos(theta) a - sin(theta) b, b -> sin(theta) a + cos(theta) b.
// Throws TruncationError when more than kLeakTolerance of the population sits
// in number blocks that the cutoffs clip.
FockState apply_beamsplitter(const FockState& state, std::string_view mode_a,
                             std::string_view mode_b, double theta);

// exp(r (a^+ b^+ - a b)) with cosh r = gain; Heisenberg action
// a -> gain a + sinh(r) b^+. Throws TruncationError when the population at
// occupation >= cutoff - 4 of either mode exceeds kLeakTolerance afterwards.
FockState apply_two_mode_squeezer(const FockState& state,
                                  std::string_view mode_a,
                                  std::string_view mode_b,
                                  double gain = std::numbers::sqrt2);

// Sum of coefficient * product of ladder operators. Factors are listed left
// to right as written, so the rightmost acts first.
class Observable {
 public:
  struct Ladder {
    ModeLabel mode;
    bool create = false;
  };
  struct Term {
    Complex coeff{1.0, 0.0};
    std::vector<Ladder> factors;
  };

  Observable() = default;
  explicit Observable(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static Observable annihilate(std::string_view mode);
  static Observable create(std::string_view mode);
  static Observable number(std::string_view mode);
  // a + a^+ and i (a^+ - a).
  static Observable quadrature_q(std::string_view mode);
  static Observable quadrature_p(std::string_view mode);
  // Q and P of xi = a2^+ a1 / sqrt(N) built from the two atomic modes.
  static Observable spin_q(std::string_view a1, std::string_view a2,
                           double n_atoms);
  static Observable spin_p(std::string_view a1, std::string_view a2,
                           double n_atoms);

  const std::vector<Term>& terms() const { return terms_; }

  Observable adjoint() const;
  Observable operator*(const Observable& rhs) const;
  Observable operator+(const Observable& rhs) const;
  Observable operator-(const Observable& rhs) const;
  friend Observable operator*(Complex c, const Observable& op);

 private:
  std::vector<Term> terms_;
};

// Observable applied to the amplitude vector. Raising past a cutoff drops
// the amplitude, which is the truncated operator.
Eigen::VectorXcd apply(const Observable& op, const FockState& state);

Complex expectation(const FockState& state, const Observable& op);

struct MomentTable {
  Eigen::VectorXd means;
  // Symmetrized: Re <X_i psi | X_j psi> - <X_i><X_j>, for Hermitian X.
  Eigen::MatrixXd cov;
};

MomentTable moments(const FockState& state,
                    std::span<const Observable> observables);

using Evolution = std::function<FockState(const FockState&)>;

// cov(X_i before, Y_j after) for a unitary `evolve`: the symmetrized
// Re <U psi| Y_j U X_i |psi> - <X_i>_psi <Y_j>_{U psi}, rows follow `before`.
// X_i psi is evolved as a normalized state and rescaled.
Eigen::MatrixXd cross_covariance(const FockState& state,
                                 std::span<const Observable> before,
                                 std::span<const Observable> after,
                                 const Evolution& evolve);

QuadratureMoments mode_moments(const FockState& state, std::string_view mode);
QuadratureMoments spin_mode_moments(const FockState& state, std::string_view a1,
                                    std::string_view a2, double n_atoms);

// Gaussian summary (means and covariance of Q, P per label, in order).
GaussianState to_gaussian(const FockState& state,
                          std::span<const ModeLabel> labels);

// <[xi, xi^+]>, evaluated from the operator products; 1 for a true boson,
// <n2 - n1> / N for the Schwinger excitation.
double xi_commutator(const FockState& state, std::string_view a1,
                     std::string_view a2, double n_atoms);

double norm(const FockState& state);

}  // namespace eitcv::oracle
