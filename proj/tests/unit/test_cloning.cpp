#include "eitcv/cloning.hpp"
#include "eitcv/errors.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace {

using namespace eitcv;
constexpr double kPi = std::numbers::pi;

TEST(Amplifier, CanonicalAndGain) {
  const ModeMap m = amplifier_map();
  EXPECT_TRUE(m.canonical());
  EXPECT_NEAR(m.a_block()(0, 0).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m.b_block()(0, 1).real(), 1.0, 1e-15);
}

TEST(Fidelity, Examples) {
  EXPECT_DOUBLE_EQ(fidelity(0, 0), 1.0);
  EXPECT_NEAR(fidelity(1, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(fidelity(0.75, 0.75), 8.0 / 11.0, 1e-15);
  EXPECT_THROW(fidelity(-2.0, 1.0), DomainError);
  EXPECT_THROW(fidelity(-3.0, -3.0), DomainError);
}

TEST(Clone, CoherentMediumContract) {
  const CloneReport r = clone(QuadratureMoments::coherent(0.0, 0.0), CoherentMedium{});
  for (const CloneOutput* c : {&r.bright, &r.dark}) {
    EXPECT_NEAR(c->added_noise_q, 1.0, 1e-12);
    EXPECT_NEAR(c->added_noise_p, 1.0, 1e-12);
    EXPECT_NEAR(c->fidelity, 2.0 / 3.0, 1e-12);
  }
  for (const CorrelationTriple* t : {&r.correlations_q, &r.correlations_p}) {
    EXPECT_NEAR(t->c1, 0.5, 1e-12);
    EXPECT_NEAR(t->c2, 0.5, 1e-12);
    EXPECT_NEAR(t->c3, 0.25, 1e-12);
  }
  EXPECT_FALSE(r.unbalanced_angle);
}

TEST(Clone, MeanPreservationForCoherentMedium) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double q = u(rng), p = u(rng);
    const CloneReport r = clone(QuadratureMoments::coherent(q, p), CoherentMedium{});
    EXPECT_NEAR(r.bright.moments.mean_q, q, 1e-12);
    EXPECT_NEAR(r.bright.moments.mean_p, p, 1e-12);
    EXPECT_NEAR(r.dark.moments.mean_q, q, 1e-12);
    EXPECT_NEAR(r.dark.moments.mean_p, p, 1e-12);
    EXPECT_NEAR(r.bright.added_noise_q, 1.0, 1e-12);
  }
}

TEST(Clone, BalancedBecExtremalPoint) {
  const CloneReport r = clone(QuadratureMoments::coherent(0.0, 0.0),
                              make_bec_medium_from_population(100, 0.5, kPi / 4));
  EXPECT_NEAR(r.correlations_q.c1, 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(r.correlations_q.c2, 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(r.correlations_q.c3, 25.0 / 49.0, 1e-12);
  EXPECT_NEAR(r.correlations_p.c1, 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(r.correlations_p.c3, 25.0 / 49.0, 1e-12);
  EXPECT_NEAR(r.bright.added_noise_q, 0.75, 1e-12);
  EXPECT_NEAR(r.fidelity, 8.0 / 11.0, 1e-12);
  EXPECT_NE(r.fidelity, kQuotedBalancedBecFidelity);
}

TEST(Clone, EmptyExcitedLevelMatchesCoherentMedium) {
  const CloneReport a = clone(QuadratureMoments::coherent(0.3, -0.2),
                              make_bec_medium_from_population(100, 0.0, 0.7));
  const CloneReport b = clone(QuadratureMoments::coherent(0.3, -0.2), CoherentMedium{});
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.correlations_q.c3, b.correlations_q.c3);
  EXPECT_EQ(a.bright.moments.mean_q, b.bright.moments.mean_q);
  EXPECT_NEAR(a.fidelity, 2.0 / 3.0, 1e-15);
}

TEST(Clone, BecMeanShiftSplitsClones) {
  const unsigned n = 64;
  const double pop = 0.3, phi = 0.4;
  const double shift = std::sqrt(2.0 * n) * std::sqrt(pop * (1 - pop)) * std::cos(phi);
  const CloneReport r = clone(QuadratureMoments::coherent(1.0, 0.0),
                              make_bec_medium_from_population(n, pop, phi));
  EXPECT_NEAR(r.bright.moments.mean_q, 1.0 - shift, 1e-12);
  EXPECT_NEAR(r.dark.moments.mean_q, 1.0 + shift, 1e-12);
}

TEST(Clone, SymmetricClonesAndNoiseReductionOnGrid) {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double pop = i / 9.0, phi = j * kPi / 9.0;
      const CloneReport r = clone(QuadratureMoments::coherent(0.0, 0.0),
                                  make_bec_medium_from_population(100, pop, phi));
      const double m = pop * (1 - pop);
      EXPECT_NEAR(r.bright.moments.var_q, r.dark.moments.var_q, 1e-12);
      EXPECT_NEAR(r.bright.moments.var_p, r.dark.moments.var_p, 1e-12);
      EXPECT_NEAR(r.bright.added_noise_q, 1.0 - 2.0 * m * std::pow(std::cos(phi), 2), 1e-12);
      EXPECT_NEAR(r.bright.added_noise_p, 1.0 - 2.0 * m * std::pow(std::sin(phi), 2), 1e-12);
      EXPECT_LE(r.fidelity, 1.0);
    }
  }
}

TEST(Clone, OneShotMapEquivalence) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-2.0, 2.0), v(0.2, 2.0);
  const std::array<ModeLabel, 3> labels{kSignalMode, kAncillaMode, kSpinMode};
  for (int i = 0; i < 30; ++i) {
    const QuadratureMoments sig{u(rng), u(rng), v(rng), v(rng), 0.0};
    const SpinMoments med{u(rng), u(rng), v(rng), v(rng), 0.0};
    const CloneReport r = clone_with_moments(sig, med);
    GaussianState s = make_vacuum({labels.begin(), labels.end()});
    s = set_mode_moments(s, kSignalMode, sig);
    s = set_mode_moments(s, kSpinMode, med);
    const MapResult out = apply_map(s, one_shot_clone_map(), labels);
    const QuadratureMoments bright = out.state.moments(kSignalMode);
    const QuadratureMoments dark = out.state.moments(kSpinMode);
    EXPECT_NEAR(bright.mean_q, r.bright.moments.mean_q, 1e-12);
    EXPECT_NEAR(bright.mean_p, r.bright.moments.mean_p, 1e-12);
    EXPECT_NEAR(bright.var_q, r.bright.moments.var_q, 1e-12);
    EXPECT_NEAR(dark.var_p, r.dark.moments.var_p, 1e-12);
    EXPECT_NEAR(dark.mean_q, r.dark.moments.mean_q, 1e-12);
    const double cov = out.state.covariance(kSignalMode, 0, kSpinMode, 0);
    EXPECT_NEAR(cov * cov, r.correlations_q.c3 * bright.var_q * dark.var_q, 1e-10);
  }
}

TEST(Clone, OneShotMapIsCanonical) { EXPECT_TRUE(one_shot_clone_map().canonical()); }

TEST(Clone, UnbalancedAngleFlag) {
  CloneOptions o;
  o.theta = 0.6;
  const CloneReport r = clone(QuadratureMoments::coherent(0.0, 0.0), CoherentMedium{}, o);
  EXPECT_TRUE(r.unbalanced_angle);
  EXPECT_NE(r.bright.moments.var_q, r.dark.moments.var_q);
  o.theta = kPi / 4 + 1e-9;
  EXPECT_FALSE(clone(QuadratureMoments::coherent(0, 0), CoherentMedium{}, o).unbalanced_angle);
  o.balance_tolerance = -1.0;
  EXPECT_THROW(clone(QuadratureMoments::coherent(0, 0), CoherentMedium{}, o), ValidationError);
}

TEST(Clone, InvalidMediumRejected) {
  EXPECT_THROW(clone(QuadratureMoments::coherent(0, 0), AtomicMediumState{FockMedium{0, 0}}),
               ValidationError);
}

}  // namespace
