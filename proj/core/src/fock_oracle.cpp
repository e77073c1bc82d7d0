#include "eitcv/fock_oracle.hpp"

#include "eitcv/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>

namespace eitcv::oracle {
namespace {

// Extra levels used when a single-mode state is prepared before truncation.
constexpr std::size_t kPreparationPadding = 60;

std::string str(std::string_view s) { return std::string(s); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Complex integer_power(Complex base, unsigned exponent) {
  Complex out{1.0, 0.0};
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

// exp(K) for the real antisymmetric tridiagonal K with K(j+1, j) = c_j and
// K(j, j+1) = -c_j, via the Hermitian matrix iK.
Eigen::MatrixXcd chain_exponential(const std::vector<double>& couplings) {
  const auto n = static_cast<Eigen::Index>(couplings.size() + 1);
  if (n == 1) return Eigen::MatrixXcd::Identity(1, 1);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double c = couplings[static_cast<std::size_t>(j)];
    h(j + 1, j) = Complex{0.0, c};
    h(j, j + 1) = Complex{0.0, -c};
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of a unitary generator failed");
  }
  Eigen::VectorXcd phases(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    phases(j) = std::exp(Complex{0.0, -eig.eigenvalues()(j)});
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

// exp(K) for a general anti-Hermitian K.
Eigen::MatrixXcd unitary_exponential(const Eigen::MatrixXcd& k) {
  const Eigen::MatrixXcd h = Complex{0.0, 1.0} * k;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of a unitary generator failed");
  }
  Eigen::VectorXcd phases(k.rows());
  for (Eigen::Index j = 0; j < k.rows(); ++j) {
    phases(j) = std::exp(Complex{0.0, -eig.eigenvalues()(j)});
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

std::size_t checked_product(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw ValidationError("mode cutoff must be at least 1");
    if (total > kMaxDimension / d) {
      throw CapacityError("Fock space dimension exceeds " +
                          std::to_string(kMaxDimension));
    }
    total *= d;
  }
  return total;
}

Eigen::VectorXcd coherent_amplitudes(Complex alpha, std::size_t dim) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(dim));
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < c.size(); ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return c;
}

Eigen::VectorXcd truncate_checked(const Eigen::VectorXcd& full,
                                  std::size_t cutoff, std::string_view what) {
  const auto keep = static_cast<Eigen::Index>(cutoff);
  const double tail = full.tail(full.size() - keep).squaredNorm();
  if (tail > kLeakTolerance) {
    throw TruncationError(str(what) + " leaks " + sci(tail) +
                          " of its population past cutoff " +
                          std::to_string(cutoff));
  }
  Eigen::VectorXcd out = full.head(keep);
  return out / out.norm();
}

Eigen::VectorXcd single_mode(const ModeFactor& f) {
  const std::size_t dim = f.cutoff;
  return std::visit(
      [&](const auto& spec) -> Eigen::VectorXcd {
        using T = std::decay_t<decltype(spec)>;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
        if constexpr (std::is_same_v<T, VacuumSpec>) {
          v(0) = 1.0;
        } else if constexpr (std::is_same_v<T, FockSpec>) {
          if (spec.n >= dim) {
            throw ValidationError("Fock occupation " + std::to_string(spec.n) +
                                  " does not fit below cutoff " +
                                  std::to_string(dim));
          }
          v(spec.n) = 1.0;
        } else if constexpr (std::is_same_v<T, CoherentSpec>) {
          const double a = std::abs(spec.alpha);
          if (!std::isfinite(a)) throw ValidationError("coherent amplitude must be finite");
          if (static_cast<double>(dim) < a * a + 8.0 * a + 10.0) {
            throw TruncationError("cutoff " + std::to_string(dim) +
                                  " too small for coherent amplitude " +
                                  std::to_string(a) + " (need |a|^2 + 8|a| + 10)");
          }
          v = truncate_checked(coherent_amplitudes(spec.alpha, dim + kPreparationPadding),
                               dim, "coherent state");
        } else {
          if (!(spec.r >= 0.0) || !std::isfinite(spec.r) ||
              !std::isfinite(spec.angle) || !std::isfinite(std::abs(spec.alpha))) {
            throw ValidationError("squeezing parameters must be finite with r >= 0");
          }
          const std::size_t big = std::max(2 * dim, dim + kPreparationPadding);
          const auto n = static_cast<Eigen::Index>(big);
          Eigen::VectorXcd sq = Eigen::VectorXcd::Zero(n);
          const Complex ratio = -std::exp(Complex{0.0, spec.angle}) * std::tanh(spec.r);
          sq(0) = 1.0 / std::sqrt(std::cosh(spec.r));
          for (Eigen::Index m = 2; m < n; m += 2) {
            const double md = static_cast<double>(m);
            sq(m) = sq(m - 2) * ratio * std::sqrt(md * (md - 1.0)) / md;
          }
          Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
          for (Eigen::Index m = 0; m + 1 < n; ++m) {
            const double s = std::sqrt(static_cast<double>(m + 1));
            k(m + 1, m) = spec.alpha * s;
            k(m, m + 1) = -std::conj(spec.alpha) * s;
          }
          v = truncate_checked(unitary_exponential(k) * sq, dim,
                               "displaced squeezed state");
        }
        return v;
      },
      f.spec);
}

Eigen::VectorXcd bec_pair(const BecPairFactor& f) {
  validate(AtomicMediumState{f.medium});
  const unsigned n = f.medium.n_atoms;
  const auto dim = static_cast<Eigen::Index>(n) + 1;
  const Complex alpha1 = std::polar(f.medium.mag1, f.medium.phase1);
  const Complex alpha2 = std::polar(f.medium.mag2(), f.medium.phase2);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim * dim);
  const double lgn = std::lgamma(n + 1.0);
  for (unsigned k = 0; k <= n; ++k) {
    const double binom = std::exp(0.5 * (lgn - std::lgamma(k + 1.0) -
                                         std::lgamma(n - k + 1.0)));
    v(static_cast<Eigen::Index>(k) * dim + (n - k)) =
        binom * integer_power(alpha1, k) * integer_power(alpha2, n - k);
  }
  return v / v.norm();
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

std::pair<std::size_t, std::size_t> distinct_pair(const FockState& state,
                                                  std::string_view a,
                                                  std::string_view b) {
  const std::size_t ia = state.index_of(a);
  const std::size_t ib = state.index_of(b);
  if (ia == ib) throw ValidationError("two-mode operation needs distinct modes");
  return {ia, ib};
}

std::size_t digit(std::size_t flat, std::size_t stride, std::size_t dim) {
  return (flat / stride) % dim;
}

// Applies the unitary `blocks[b]` to every chain `chains[b]` of the two-mode
// subspace, for each configuration of the remaining modes.
struct Chain {
  std::size_t a0 = 0;
  std::size_t b0 = 0;
  long step_a = 0;
  long step_b = 0;
  Eigen::MatrixXcd unitary;
};

Eigen::VectorXcd apply_chains(const FockState& state, std::size_t ia,
                              std::size_t ib, const std::vector<Chain>& chains) {
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
  const std::size_t sa = state.stride(ia);
  const std::size_t sb = state.stride(ib);
  const std::size_t ca = state.dims()[ia];
  const std::size_t cb = state.dims()[ib];
  Eigen::VectorXcd buf;
  for (std::size_t base = 0; base < state.dimension(); ++base) {
    if (digit(base, sa, ca) != 0 || digit(base, sb, cb) != 0) continue;
    for (const Chain& c : chains) {
      const Eigen::Index len = c.unitary.rows();
      buf.resize(len);
      for (Eigen::Index j = 0; j < len; ++j) {
        const auto na = static_cast<long>(c.a0) + c.step_a * j;
        const auto nb = static_cast<long>(c.b0) + c.step_b * j;
        buf(j) = in(static_cast<Eigen::Index>(base + static_cast<std::size_t>(na) * sa +
                                              static_cast<std::size_t>(nb) * sb));
      }
      const Eigen::VectorXcd res = c.unitary * buf;
      for (Eigen::Index j = 0; j < len; ++j) {
        const auto na = static_cast<long>(c.a0) + c.step_a * j;
        const auto nb = static_cast<long>(c.b0) + c.step_b * j;
        out(static_cast<Eigen::Index>(base + static_cast<std::size_t>(na) * sa +
                                      static_cast<std::size_t>(nb) * sb)) = res(j);
      }
    }
  }
  return out;
}

Eigen::VectorXcd apply_ladder(const Eigen::VectorXcd& v, std::size_t stride,
                              std::size_t dim, bool create) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  const auto s = static_cast<Eigen::Index>(stride);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == Complex{}) continue;
    const std::size_t n = digit(static_cast<std::size_t>(i), stride, dim);
    if (create) {
      if (n + 1 < dim) out(i + s) += std::sqrt(static_cast<double>(n + 1)) * v(i);
    } else if (n > 0) {
      out(i - s) += std::sqrt(static_cast<double>(n)) * v(i);
    }
  }
  return out;
}

}  // namespace

FockState::FockState(std::vector<ModeLabel> labels,
                     std::vector<std::size_t> dims, Eigen::VectorXcd amplitudes)
    : labels_(std::move(labels)), dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (labels_.empty()) throw ValidationError("a Fock state needs at least one mode");
  if (labels_.size() != dims_.size()) {
    throw ValidationError("one cutoff per mode label required");
  }
  std::set<std::string_view> seen;
  for (const ModeLabel& l : labels_) {
    if (l.empty()) throw ValidationError("mode labels must be nonempty");
    if (!seen.insert(l).second) throw ValidationError("duplicate mode label '" + l + "'");
  }
  const std::size_t total = checked_product(dims_);
  if (static_cast<std::size_t>(amps_.size()) != total) {
    throw ValidationError("amplitude vector size does not match the cutoffs");
  }
  if (!amps_.allFinite()) throw NumericalError("non-finite amplitudes");
  const double deviation = std::abs(amps_.norm() - 1.0);
  if (deviation > kNormTolerance) {
    throw NumericalError("state norm deviates from 1 by " + sci(deviation));
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t m = dims_.size() - 1; m > 0; --m) {
    strides_[m - 1] = strides_[m] * dims_[m];
  }
}

std::size_t FockState::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("unknown mode '" + str(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Complex FockState::amplitude(std::span<const std::size_t> occupation) const {
  if (occupation.size() != dims_.size()) {
    throw ValidationError("occupation list must name every mode");
  }
  std::size_t flat = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (occupation[m] >= dims_[m]) return Complex{};
    flat += occupation[m] * strides_[m];
  }
  return amps_(static_cast<Eigen::Index>(flat));
}

double norm(const FockState& state) { return state.amplitudes().norm(); }

FockState build_state(std::span<const Factor> factors) {
  if (factors.empty()) throw ValidationError("no state factors given");
  std::vector<ModeLabel> labels;
  std::vector<std::size_t> dims;
  for (const Factor& f : factors) {
    if (const auto* m = std::get_if<ModeFactor>(&f)) {
      labels.push_back(m->label);
      dims.push_back(m->cutoff);
    } else {
      const auto& b = std::get<BecPairFactor>(f);
      labels.push_back(b.first);
      labels.push_back(b.second);
      dims.push_back(b.medium.n_atoms + 1u);
      dims.push_back(b.medium.n_atoms + 1u);
    }
  }
  checked_product(dims);

  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
  for (const Factor& f : factors) {
    const Eigen::VectorXcd part = std::holds_alternative<ModeFactor>(f)
                                      ? single_mode(std::get<ModeFactor>(f))
                                      : bec_pair(std::get<BecPairFactor>(f));
    amps = kron(amps, part);
  }
  return FockState(std::move(labels), std::move(dims), std::move(amps));
}

FockState apply_beamsplitter(const FockState& state, std::string_view mode_a,
                             std::string_view mode_b, double theta) {
  if (!std::isfinite(theta)) throw ValidationError("beamsplitter angle must be finite");
  const auto [ia, ib] = distinct_pair(state, mode_a, mode_b);
  const std::size_t ca = state.dims()[ia];
  const std::size_t cb = state.dims()[ib];
  const std::size_t complete = std::min(ca, cb);

  double clipped = 0.0;
  const Eigen::VectorXcd& amps = state.amplitudes();
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (digit(i, state.stride(ia), ca) + digit(i, state.stride(ib), cb) >= complete) {
      clipped += std::norm(amps(static_cast<Eigen::Index>(i)));
    }
  }
  if (clipped > kLeakTolerance) {
    throw TruncationError("beamsplitter: population " + sci(clipped) +
                          " in number blocks clipped by the cutoffs");
  }

  // Chains of fixed total number n, ordered by the occupation of mode a.
  std::vector<Chain> chains;
  for (std::size_t n = 0; n + 2 <= ca + cb; ++n) {
    const std::size_t kmin = n >= cb ? n - (cb - 1) : 0;
    const std::size_t kmax = std::min(n, ca - 1);
    std::vector<double> c;
    for (std::size_t k = kmin; k < kmax; ++k) {
      c.push_back(-theta * std::sqrt(static_cast<double>(k + 1)) *
                  std::sqrt(static_cast<double>(n - k)));
    }
    chains.push_back({kmin, n - kmin, 1, -1, chain_exponential(c)});
  }
  return FockState(state.labels(), state.dims(), apply_chains(state, ia, ib, chains));
}

FockState apply_two_mode_squeezer(const FockState& state,
                                  std::string_view mode_a,
                                  std::string_view mode_b, double gain) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) {
    throw ValidationError("squeezer gain must be finite and >= 1");
  }
  const auto [ia, ib] = distinct_pair(state, mode_a, mode_b);
  const std::size_t ca = state.dims()[ia];
  const std::size_t cb = state.dims()[ib];
  const double r = std::acosh(gain);

  // Chains of fixed n_a - n_b, starting on an edge of the (n_a, n_b) grid.
  std::vector<Chain> chains;
  auto add = [&](std::size_t a0, std::size_t b0) {
    std::vector<double> c;
    for (std::size_t j = 0; a0 + j + 1 < ca && b0 + j + 1 < cb; ++j) {
      c.push_back(r * std::sqrt(static_cast<double>(a0 + j + 1)) *
                  std::sqrt(static_cast<double>(b0 + j + 1)));
    }
    chains.push_back({a0, b0, 1, 1, chain_exponential(c)});
  };
  for (std::size_t a0 = 0; a0 < ca; ++a0) add(a0, 0);
  for (std::size_t b0 = 1; b0 < cb; ++b0) add(0, b0);

  Eigen::VectorXcd out = apply_chains(state, ia, ib, chains);
  const std::size_t edge_a = ca > 4 ? ca - 4 : 0;
  const std::size_t edge_b = cb > 4 ? cb - 4 : 0;
  double leak = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (digit(i, state.stride(ia), ca) >= edge_a ||
        digit(i, state.stride(ib), cb) >= edge_b) {
      leak += std::norm(out(static_cast<Eigen::Index>(i)));
    }
  }
  if (leak > kLeakTolerance) {
    throw TruncationError("two-mode squeezer: population " + sci(leak) +
                          " within 4 levels of the cutoff");
  }
  return FockState(state.labels(), state.dims(), std::move(out));
}

Observable Observable::annihilate(std::string_view mode) {
  return Observable({{Complex{1.0, 0.0}, {{str(mode), false}}}});
}

Observable Observable::create(std::string_view mode) {
  return Observable({{Complex{1.0, 0.0}, {{str(mode), true}}}});
}

Observable Observable::number(std::string_view mode) {
  return create(mode) * annihilate(mode);
}

Observable Observable::quadrature_q(std::string_view mode) {
  return annihilate(mode) + create(mode);
}

Observable Observable::quadrature_p(std::string_view mode) {
  return Complex{0.0, 1.0} * (create(mode) - annihilate(mode));
}

Observable Observable::spin_q(std::string_view a1, std::string_view a2,
                              double n_atoms) {
  if (!(n_atoms > 0.0)) throw DomainError("spin quadrature needs N > 0");
  const Observable xi = Complex{1.0 / std::sqrt(n_atoms), 0.0} *
                        (create(a2) * annihilate(a1));
  return xi + xi.adjoint();
}

Observable Observable::spin_p(std::string_view a1, std::string_view a2,
                              double n_atoms) {
  if (!(n_atoms > 0.0)) throw DomainError("spin quadrature needs N > 0");
  const Observable xi = Complex{1.0 / std::sqrt(n_atoms), 0.0} *
                        (create(a2) * annihilate(a1));
  return Complex{0.0, 1.0} * (xi.adjoint() - xi);
}

Observable Observable::adjoint() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Term a{std::conj(t.coeff), {t.factors.rbegin(), t.factors.rend()}};
    for (Ladder& l : a.factors) l.create = !l.create;
    out.push_back(std::move(a));
  }
  return Observable(std::move(out));
}

Observable Observable::operator*(const Observable& rhs) const {
  std::vector<Term> out;
  for (const Term& l : terms_) {
    for (const Term& r : rhs.terms_) {
      Term t{l.coeff * r.coeff, l.factors};
      t.factors.insert(t.factors.end(), r.factors.begin(), r.factors.end());
      out.push_back(std::move(t));
    }
  }
  return Observable(std::move(out));
}

Observable Observable::operator+(const Observable& rhs) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
  return Observable(std::move(out));
}

Observable Observable::operator-(const Observable& rhs) const {
  return *this + Complex{-1.0, 0.0} * rhs;
}

Observable operator*(Complex c, const Observable& op) {
  std::vector<Observable::Term> out = op.terms_;
  for (Observable::Term& t : out) t.coeff *= c;
  return Observable(std::move(out));
}

Eigen::VectorXcd apply(const Observable& op, const FockState& state) {
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(state.amplitudes().size());
  for (const Observable::Term& t : op.terms()) {
    Eigen::VectorXcd v = state.amplitudes();
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      const std::size_t m = state.index_of(it->mode);
      v = apply_ladder(v, state.stride(m), state.dims()[m], it->create);
    }
    total += t.coeff * v;
  }
  return total;
}

Complex expectation(const FockState& state, const Observable& op) {
  return state.amplitudes().dot(apply(op, state));
}

MomentTable moments(const FockState& state,
                    std::span<const Observable> observables) {
  const auto n = static_cast<Eigen::Index>(observables.size());
  std::vector<Eigen::VectorXcd> images;
  images.reserve(observables.size());
  for (const Observable& op : observables) images.push_back(apply(op, state));

  MomentTable t{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    t.means(i) = state.amplitudes().dot(images[static_cast<std::size_t>(i)]).real();
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double second = images[static_cast<std::size_t>(i)]
                                .dot(images[static_cast<std::size_t>(j)])
                                .real();
      t.cov(i, j) = t.cov(j, i) = second - t.means(i) * t.means(j);
    }
  }
  return t;
}

Eigen::MatrixXd cross_covariance(const FockState& state,
                                 std::span<const Observable> before,
                                 std::span<const Observable> after,
                                 const Evolution& evolve) {
  const FockState evolved = evolve(state);
  std::vector<Eigen::VectorXcd> after_images;
  Eigen::VectorXd after_means(static_cast<Eigen::Index>(after.size()));
  for (std::size_t j = 0; j < after.size(); ++j) {
    after_images.push_back(apply(after[j], evolved));
    after_means(static_cast<Eigen::Index>(j)) =
        evolved.amplitudes().dot(after_images.back()).real();
  }

  Eigen::MatrixXd out(static_cast<Eigen::Index>(before.size()),
                      static_cast<Eigen::Index>(after.size()));
  for (std::size_t i = 0; i < before.size(); ++i) {
    const Eigen::VectorXcd image = apply(before[i], state);
    const double mean_before = state.amplitudes().dot(image).real();
    const double scale = image.norm();
    const auto row = static_cast<Eigen::Index>(i);
    if (scale == 0.0) {
      out.row(row).setZero();
      continue;
    }
    const FockState moved =
        evolve(FockState(state.labels(), state.dims(), image / scale));
    for (std::size_t j = 0; j < after.size(); ++j) {
      const double second =
          scale * evolved.amplitudes().dot(apply(after[j], moved)).real();
      out(row, static_cast<Eigen::Index>(j)) =
          second - mean_before * after_means(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

namespace {

QuadratureMoments pack_moments(const MomentTable& t) {
  return {t.means(0), t.means(1), t.cov(0, 0), t.cov(1, 1), t.cov(0, 1)};
}

}  // namespace

QuadratureMoments mode_moments(const FockState& state, std::string_view mode) {
  const std::array<Observable, 2> ops{Observable::quadrature_q(mode),
                                      Observable::quadrature_p(mode)};
  return pack_moments(moments(state, ops));
}

QuadratureMoments spin_mode_moments(const FockState& state, std::string_view a1,
                                    std::string_view a2, double n_atoms) {
  const std::array<Observable, 2> ops{Observable::spin_q(a1, a2, n_atoms),
                                      Observable::spin_p(a1, a2, n_atoms)};
  return pack_moments(moments(state, ops));
}

GaussianState to_gaussian(const FockState& state,
                          std::span<const ModeLabel> labels) {
  std::vector<Observable> ops;
  for (const ModeLabel& l : labels) {
    ops.push_back(Observable::quadrature_q(l));
    ops.push_back(Observable::quadrature_p(l));
  }
  MomentTable t = moments(state, ops);
  return GaussianState({labels.begin(), labels.end()}, std::move(t.means),
                       std::move(t.cov));
}

double xi_commutator(const FockState& state, std::string_view a1,
                     std::string_view a2, double n_atoms) {
  if (!(n_atoms > 0.0)) throw DomainError("spin operators need N > 0");
  const Observable xi = Complex{1.0 / std::sqrt(n_atoms), 0.0} *
                        (Observable::create(a2) * Observable::annihilate(a1));
  return expectation(state, xi * xi.adjoint() - xi.adjoint() * xi).real();
}

}  // namespace eitcv::oracle
