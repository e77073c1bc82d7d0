#include "eitcv/atomic_states.hpp"

#include "eitcv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace eitcv {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_fock(const FockMedium& m) {
  if (m.total() == 0) {
    throw ValidationError("Fock medium needs n1 + n2 > 0");
  }
}

void validate_bec(const BecMedium& m) {
  if (m.n_atoms == 0) {
    throw ValidationError("BEC medium needs N > 0");
  }
  if (!(m.mag1 >= 0.0 && m.mag1 <= 1.0)) {
    throw ValidationError("BEC |alpha1| must lie in [0, 1]");
  }
  if (!std::isfinite(m.phase1) || !std::isfinite(m.phase2)) {
    throw ValidationError("BEC phases must be finite");
  }
}

// Repeated multiplication keeps 0^0 = 1.
std::complex<double> integer_power(std::complex<double> z, unsigned k) {
  std::complex<double> out = 1.0;
  for (unsigned i = 0; i < k; ++i) out *= z;
  return out;
}

}  // namespace

double BecMedium::mag2() const {
  return std::sqrt(std::max(0.0, 1.0 - mag1 * mag1));
}

FockMedium make_fock_medium(unsigned n1, unsigned n2) {
  FockMedium m{n1, n2};
  validate_fock(m);
  return m;
}

BecMedium make_bec_medium(unsigned n_atoms, double mag1, double phase1,
                          double phase2) {
  BecMedium m{n_atoms, mag1, phase1, phase2};
  validate_bec(m);
  return m;
}

BecMedium make_bec_medium_from_population(unsigned n_atoms, double population1,
                                          double phi) {
  if (!(population1 >= 0.0 && population1 <= 1.0)) {
    throw ValidationError("BEC population |alpha1|^2 must lie in [0, 1]");
  }
  return make_bec_medium(n_atoms, std::sqrt(population1), 0.0, phi);
}

void validate(const AtomicMediumState& state) {
  std::visit(Overloaded{[](const FockMedium& m) { validate_fock(m); },
                        [](const BecMedium& m) { validate_bec(m); },
                        [](const CoherentMedium&) {}},
             state);
}

SpinMoments spin_moments(const AtomicMediumState& state) {
  validate(state);
  return std::visit(
      Overloaded{
          [](const FockMedium& m) {
            const double n1 = m.n1;
            const double n2 = m.n2;
            const double v = (n1 * (n2 + 1.0) + n2 * (n1 + 1.0)) / (n1 + n2);
            return SpinMoments{0.0, 0.0, v, v, 0.0};
          },
          [](const BecMedium& m) {
            const double phi = m.relative_phase();
            const double m1 = m.mag1;
            const double m2 = m.mag2();
            const double overlap = m1 * m2;
            const double root_n = std::sqrt(static_cast<double>(m.n_atoms));
            const double c = std::cos(phi);
            const double s = std::sin(phi);
            const double w = 4.0 * overlap * overlap;
            return SpinMoments{2.0 * root_n * overlap * c,
                               -2.0 * root_n * overlap * s, 1.0 - w * c * c,
                               1.0 - w * s * s, w * s * c};
          },
          [](const CoherentMedium&) { return SpinMoments{}; }},
      state);
}

SpinMoments exact_bec_moments(const BecMedium& state) {
  validate_bec(state);
  if (state.n_atoms > kMaxExactBecAtoms) {
    throw CapacityError("exact BEC moments support N <= " +
                        std::to_string(kMaxExactBecAtoms) + ", got " +
                        std::to_string(state.n_atoms));
  }
  const unsigned n = state.n_atoms;
  const double nd = n;
  const std::complex<double> alpha1 = std::polar(state.mag1, state.phase1);
  const std::complex<double> alpha2 = std::polar(state.mag2(), state.phase2);

  // c[k] is the amplitude of |k, N - k> (k atoms in level 1).
  std::vector<std::complex<double>> c(n + 1);
  const double log_n_fact = std::lgamma(nd + 1.0);
  for (unsigned k = 0; k <= n; ++k) {
    const double binom = std::exp(0.5 * (log_n_fact - std::lgamma(k + 1.0) -
                                         std::lgamma(nd - k + 1.0)));
    c[k] = binom * integer_power(alpha1, k) * integer_power(alpha2, n - k);
  }

  // xi |k, N-k> = sqrt(k (N-k+1) / N) |k-1, N-k+1>.
  std::complex<double> xi_mean = 0.0;
  std::complex<double> xi_sq = 0.0;
  double xi_dag_xi = 0.0;
  double xi_xi_dag = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    const double kd = k;
    const double p = std::norm(c[k]);
    xi_dag_xi += p * kd * (nd - kd + 1.0) / nd;
    xi_xi_dag += p * (kd + 1.0) * (nd - kd) / nd;
    if (k >= 1) {
      xi_mean += std::conj(c[k - 1]) * c[k] *
                 std::sqrt(kd * (nd - kd + 1.0) / nd);
    }
    if (k >= 2) {
      xi_sq += std::conj(c[k - 2]) * c[k] *
               std::sqrt(kd * (kd - 1.0) * (nd - kd + 1.0) * (nd - kd + 2.0)) /
               nd;
    }
  }

  const double mean_q = 2.0 * xi_mean.real();
  const double mean_p = 2.0 * xi_mean.imag();
  const double q2 = 2.0 * xi_sq.real() + xi_dag_xi + xi_xi_dag;
  const double p2 = -2.0 * xi_sq.real() + xi_dag_xi + xi_xi_dag;
  const double qp_sym = 2.0 * xi_sq.imag();
  return SpinMoments{mean_q, mean_p, std::max(0.0, q2 - mean_q * mean_q),
                     std::max(0.0, p2 - mean_p * mean_p),
                     qp_sym - mean_q * mean_p};
}

bool adiabatic_condition(double n1, double n2, double n3, double ratio) {
  if (!(ratio > 0.0)) {
    throw ValidationError("adiabatic ratio must be positive");
  }
  return n3 <= ratio * n1 && n1 < n2;
}

}  // namespace eitcv
