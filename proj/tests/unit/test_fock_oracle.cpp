#include "eitcv/cloning.hpp"
#include "eitcv/errors.hpp"
#include "eitcv/fock_oracle.hpp"
#include "eitcv/qnd_storage.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace {

using namespace eitcv;
using namespace eitcv::oracle;
constexpr double kPi = std::numbers::pi;

FockState two_modes(ModeSpec a, std::size_t ca, ModeSpec b, std::size_t cb) {
  const std::array<Factor, 2> f{ModeFactor{"a", ca, a}, ModeFactor{"b", cb, b}};
  return build_state(f);
}

TEST(BuildState, FockProductBasisVector) {
  const FockState s = two_modes(FockSpec{2}, 4, FockSpec{3}, 5);
  EXPECT_EQ(s.dimension(), 20u);
  const std::array<std::size_t, 2> occ{2, 3};
  EXPECT_EQ(s.amplitude(occ), Complex(1.0, 0.0));
  EXPECT_EQ(s.amplitudes().cwiseAbs().sum(), 1.0);
  EXPECT_EQ(s.stride(0), 5u);
  EXPECT_EQ(s.stride(1), 1u);
  EXPECT_EQ(s.index_of("b"), 1u);
}

TEST(BuildState, BecTwoAtomsBinomial) {
  const std::array<Factor, 1> f{
      BecPairFactor{"a1", "a2", make_bec_medium(2, 1.0 / std::sqrt(2.0), 0.0, 0.0)}};
  const FockState s = build_state(f);
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{3, 3}));
  auto amp = [&](std::size_t n1, std::size_t n2) {
    const std::array<std::size_t, 2> o{n1, n2};
    return s.amplitude(o);
  };
  EXPECT_NEAR(std::abs(amp(2, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(amp(1, 1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(amp(0, 2) - 0.5), 0.0, 1e-15);
  EXPECT_EQ(amp(1, 0), Complex(0.0, 0.0));
}

TEST(BuildState, CoherentMeanNumber) {
  const std::array<Factor, 1> f{ModeFactor{"a", 20, CoherentSpec{1.0}}};
  const FockState s = build_state(f);
  EXPECT_NEAR(expectation(s, Observable::number("a")).real(), 1.0, 1e-10);
  EXPECT_NEAR(norm(s), 1.0, 1e-12);
  const Eigen::VectorXcd r = ref::coherent(1.0, 20);
  EXPECT_LT((s.amplitudes() - r / r.norm()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildState, SqueezedMoments) {
  const double r = 0.4, angle = 0.7;
  const Complex alpha(0.5, -0.3);
  const std::array<Factor, 1> f{ModeFactor{"a", 40, SqueezedSpec{alpha, r, angle}}};
  const QuadratureMoments m = mode_moments(build_state(f), "a");
  EXPECT_NEAR(m.mean_q, 2.0 * alpha.real(), 1e-10);
  EXPECT_NEAR(m.mean_p, 2.0 * alpha.imag(), 1e-10);
  EXPECT_NEAR(m.var_q, std::cosh(2 * r) - std::sinh(2 * r) * std::cos(angle), 1e-10);
  EXPECT_NEAR(m.var_p, std::cosh(2 * r) + std::sinh(2 * r) * std::cos(angle), 1e-10);
  EXPECT_NEAR(m.var_q * m.var_p - m.cov_qp * m.cov_qp, 1.0, 1e-9);
}

TEST(BuildState, Errors) {
  EXPECT_THROW(build_state(std::span<const Factor>{}), ValidationError);
  const std::array<Factor, 1> fock_high{ModeFactor{"a", 3, FockSpec{3}}};
  EXPECT_THROW(build_state(fock_high), ValidationError);
  const std::array<Factor, 1> small_cut{ModeFactor{"a", 10, CoherentSpec{2.0}}};
  EXPECT_THROW(build_state(small_cut), TruncationError);
  const std::array<Factor, 2> dup{ModeFactor{"a", 2, VacuumSpec{}}, ModeFactor{"a", 2, VacuumSpec{}}};
  EXPECT_THROW(build_state(dup), ValidationError);
  const std::array<Factor, 3> huge{ModeFactor{"a", 1000, VacuumSpec{}},
                                   ModeFactor{"b", 1000, VacuumSpec{}},
                                   ModeFactor{"c", 1000, VacuumSpec{}}};
  EXPECT_THROW(build_state(huge), CapacityError);
  EXPECT_THROW(FockState({"a"}, {2}, Eigen::VectorXcd::Ones(2)), NumericalError);
  EXPECT_THROW(FockState({"a"}, {3}, Eigen::VectorXcd::Ones(2)), ValidationError);
}

TEST(Beamsplitter, IdentityAndSwap) {
  const FockState s = two_modes(FockSpec{1}, 3, VacuumSpec{}, 3);
  const FockState same = apply_beamsplitter(s, "a", "b", 0.0);
  EXPECT_LT((same.amplitudes() - s.amplitudes()).norm(), 1e-15);
  const FockState swapped = apply_beamsplitter(s, "a", "b", kPi / 2);
  const std::array<std::size_t, 2> target{0, 1};
  EXPECT_NEAR(std::abs(swapped.amplitude(target)), 1.0, 1e-12);
  EXPECT_NEAR(norm(swapped), 1.0, 1e-12);
}

TEST(Beamsplitter, CoherentInputSplitsClassically) {
  const double theta = kPi / 4;
  const Complex alpha(1.2, 0.5);
  const FockState s = two_modes(CoherentSpec{alpha}, 30, VacuumSpec{}, 30);
  const FockState out = apply_beamsplitter(s, "a", "b", theta);
  EXPECT_NEAR(norm(out), 1.0, 1e-12);
  const QuadratureMoments ma = mode_moments(out, "a");
  const QuadratureMoments mb = mode_moments(out, "b");
  EXPECT_NEAR(ma.mean_q, 2.0 * std::cos(theta) * alpha.real(), 1e-9);
  EXPECT_NEAR(mb.mean_p, 2.0 * std::sin(theta) * alpha.imag(), 1e-9);
  EXPECT_NEAR(ma.var_q, 1.0, 1e-9);
  EXPECT_NEAR(mb.var_p, 1.0, 1e-9);
  // The moment engine agrees.
  const std::vector<ModeLabel> labels{"a", "b"};
  const MapResult engine = apply_map(to_gaussian(s, labels),
                                     storage_map(PolaritonAngle::from_theta(theta)), labels);
  EXPECT_LT((to_gaussian(out, labels).cov() - engine.state.cov()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((to_gaussian(out, labels).means() - engine.state.means()).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(Beamsplitter, MatchesDenseMatrixExponential) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t d = 6;
  const Eigen::MatrixXcd a = ref::kron(ref::annihilation(d), Eigen::MatrixXcd::Identity(d, d));
  const Eigen::MatrixXcd b = ref::kron(Eigen::MatrixXcd::Identity(d, d), ref::annihilation(d));
  for (int trial = 0; trial < 5; ++trial) {
    const double theta = 1.5 * u(rng);
    // Random state confined to total number <= d - 1 so nothing is clipped.
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; i + j < d; ++j) v(i * d + j) = Complex(u(rng), u(rng));
    v.normalize();
    const FockState s({"a", "b"}, {d, d}, v);
    const Eigen::MatrixXcd gen = theta * (b.adjoint() * a - a.adjoint() * b);
    const Eigen::VectorXcd expect = ref::expm(gen) * v;
    const FockState out = apply_beamsplitter(s, "a", "b", theta);
    // Compare only inside the untruncated block n_a + n_b < d.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; i + j < d; ++j)
        EXPECT_LT(std::abs(out.amplitudes()(i * d + j) - expect(i * d + j)), 1e-10);
  }
}

TEST(Beamsplitter, ClippedPopulationRejected) {
  const FockState s = two_modes(FockSpec{4}, 5, FockSpec{1}, 5);
  EXPECT_THROW(apply_beamsplitter(s, "a", "b", 0.7), TruncationError);
  EXPECT_THROW(apply_beamsplitter(s, "a", "a", 0.7), ValidationError);
  EXPECT_THROW(apply_beamsplitter(s, "a", "zz", 0.7), ValidationError);
}

TEST(Squeezer, VacuumContract) {
  const FockState s = two_modes(VacuumSpec{}, 40, VacuumSpec{}, 40);
  const FockState out = apply_two_mode_squeezer(s, "a", "b");
  EXPECT_NEAR(norm(out), 1.0, 1e-12);
  EXPECT_NEAR(expectation(out, Observable::number("a")).real(), 1.0, 1e-10);
  EXPECT_NEAR(mode_moments(out, "a").var_q, 3.0, 1e-9);
  const std::vector<ModeLabel> labels{"a", "b"};
  const MapResult engine = apply_map(make_vacuum(labels), amplifier_map(), labels);
  EXPECT_LT((to_gaussian(out, labels).cov() - engine.state.cov()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Squeezer, MeanScalesWithGain) {
  const FockState s = two_modes(CoherentSpec{0.5}, 50, VacuumSpec{}, 50);
  const FockState out = apply_two_mode_squeezer(s, "a", "b");
  EXPECT_NEAR(mode_moments(out, "a").mean_q, std::sqrt(2.0) * 1.0, 1e-9);
}

TEST(Squeezer, MatchesDenseMatrixExponential) {
  const std::size_t d = 8;
  const Eigen::MatrixXcd a = ref::kron(ref::annihilation(d), Eigen::MatrixXcd::Identity(d, d));
  const Eigen::MatrixXcd b = ref::kron(Eigen::MatrixXcd::Identity(d, d), ref::annihilation(d));
  const double gain = 1.0005;  // weak enough that the cutoff is not reached
  const double r = std::acosh(gain);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  v(0) = 1.0;
  const FockState s({"a", "b"}, {d, d}, v);
  const Eigen::VectorXcd expect =
      ref::expm(r * (a.adjoint() * b.adjoint() - a * b)) * v;
  const FockState out = apply_two_mode_squeezer(s, "a", "b", gain);
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_LT(std::abs(out.amplitudes()(n * d + n) - expect(n * d + n)), 1e-12);
  }
}

TEST(Squeezer, LeakDetected) {
  const FockState s = two_modes(VacuumSpec{}, 12, VacuumSpec{}, 12);
  EXPECT_THROW(apply_two_mode_squeezer(s, "a", "b"), TruncationError);
  EXPECT_THROW(apply_two_mode_squeezer(s, "a", "b", 0.5), ValidationError);
}

TEST(Unitarity, NormPreservedOverChains) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  FockState s = two_modes(CoherentSpec{Complex(0.6, 0.2)}, 30, SqueezedSpec{0.1, 0.2, 0.0}, 30);
  for (int k = 0; k < 5; ++k) {
    s = apply_beamsplitter(s, "a", "b", u(rng));
    EXPECT_NEAR(norm(s), 1.0, 1e-12);
  }
}

TEST(Observable, AlgebraAndCommutator) {
  const FockState s = two_modes(CoherentSpec{0.7}, 25, FockSpec{2}, 6);
  const Observable a = Observable::annihilate("a");
  const Observable ad = Observable::create("a");
  // [a, a^+] = 1 away from the cutoff.
  EXPECT_NEAR(expectation(s, a * ad - ad * a).real(), 1.0, 1e-10);
  EXPECT_NEAR(expectation(s, Observable::number("b")).real(), 2.0, 1e-15);
  EXPECT_NEAR(expectation(s, a.adjoint() * a).real(), expectation(s, ad * a).real(), 1e-15);
  const Observable twice = Complex(2.0, 0.0) * Observable::quadrature_q("a");
  EXPECT_NEAR(expectation(s, twice).real(), 2.8, 1e-10);
  EXPECT_NEAR(expectation(s, Observable::quadrature_p("a")).real(), 0.0, 1e-12);
}

TEST(Observable, TruncatedRaisingDropsAmplitude) {
  const std::array<Factor, 1> f{ModeFactor{"a", 3, FockSpec{2}}};
  const FockState s = build_state(f);
  EXPECT_EQ(apply(Observable::create("a"), s).norm(), 0.0);
}

TEST(SpinMoments, OracleMatchesExactAndClosedForms) {
  const BecMedium m = make_bec_medium_from_population(50, 0.5, kPi / 4);
  const std::array<Factor, 1> f{BecPairFactor{"a1", "a2", m}};
  const FockState s = build_state(f);
  const QuadratureMoments o = spin_mode_moments(s, "a1", "a2", 50);
  EXPECT_NEAR(o.var_q, 0.5, 5.0 / 50.0);
  const SpinMoments e = exact_bec_moments(m);
  EXPECT_NEAR(o.var_q, e.var_q, 1e-10);
  EXPECT_NEAR(o.mean_p, e.mean_p, 1e-10);
  const ref::SpinVariances r = ref::bec_spin_reference(50, 0.5, kPi / 4);
  EXPECT_NEAR(o.var_p, r.var_p, 1e-10);
}

TEST(SpinMoments, FockMediumExactCombinatorics) {
  const std::array<Factor, 2> f{ModeFactor{"a1", 3, FockSpec{1}},
                                ModeFactor{"a2", 23, FockSpec{20}}};
  const FockState s = build_state(f);
  const QuadratureMoments o = spin_mode_moments(s, "a1", "a2", 21);
  EXPECT_NEAR(o.var_q, (1.0 * 21 + 20.0 * 2) / 21.0, 1e-12);
  EXPECT_NEAR(o.var_q, spin_moments(make_fock_medium(1, 20)).var_q, 1e-12);
}

TEST(SpinMoments, VacuumAndCommutator) {
  const FockState vac = two_modes(VacuumSpec{}, 2, FockSpec{5}, 6);
  EXPECT_NEAR(spin_mode_moments(vac, "a", "b", 5).var_q, 1.0, 1e-15);
  const std::array<Factor, 1> f{
      BecPairFactor{"a1", "a2", make_bec_medium_from_population(40, 0.3, 0.2)}};
  const FockState s = build_state(f);
  EXPECT_NEAR(xi_commutator(s, "a1", "a2", 40), 0.4, 1e-12);
  EXPECT_THROW(Observable::spin_q("a1", "a2", 0.0), DomainError);
}

TEST(CrossCovariance, IdentityEvolutionGivesCovariance) {
  const FockState s = two_modes(SqueezedSpec{0.2, 0.3, 0.5}, 30, CoherentSpec{0.4}, 30);
  const std::array<Observable, 2> obs{Observable::quadrature_q("a"), Observable::quadrature_p("a")};
  const Eigen::MatrixXd c =
      cross_covariance(s, obs, obs, [](const FockState& x) { return x; });
  const MomentTable t = moments(s, obs);
  EXPECT_LT((c - t.cov).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CrossCovariance, BeamsplitterMatchesEngine) {
  const double theta = 0.6;
  const FockState s = two_modes(CoherentSpec{Complex(0.8, -0.4)}, 30,
                                SqueezedSpec{Complex(0.1, 0.2), 0.3, 0.0}, 30);
  const std::array<Observable, 4> obs{Observable::quadrature_q("a"), Observable::quadrature_p("a"),
                                      Observable::quadrature_q("b"), Observable::quadrature_p("b")};
  const Eigen::MatrixXd c = cross_covariance(
      s, obs, obs, [&](const FockState& x) { return apply_beamsplitter(x, "a", "b", theta); });
  const std::vector<ModeLabel> labels{"a", "b"};
  const MapResult engine = apply_map(to_gaussian(s, labels),
                                     storage_map(PolaritonAngle::from_theta(theta)), labels);
  EXPECT_LT((c - engine.cross_cov).cwiseAbs().maxCoeff(), 1e-9);
}

}  // namespace
