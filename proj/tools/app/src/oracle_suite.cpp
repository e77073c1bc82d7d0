#include "eitcv_app/oracle_suite.hpp"

#include "eitcv/cloning.hpp"
#include "eitcv/fock_oracle.hpp"
#include "eitcv/qnd_storage.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace eitcv::app {
namespace {

using oracle::Complex;
using oracle::FockState;
using oracle::Observable;

constexpr double kPi = std::numbers::pi;

OracleCheck row(std::string section, std::string name, double analytic,
                double measured, double tolerance, const OracleSettings& s) {
  return {std::move(section), std::move(name), analytic, measured,
          std::abs(analytic - measured), tolerance * s.tolerance_scale, false};
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::Matrix2d squeezed_cov(double r, double angle) {
  Eigen::Matrix2d c;
  c << std::cosh(2 * r) - std::sinh(2 * r) * std::cos(angle),
      -std::sinh(2 * r) * std::sin(angle), -std::sinh(2 * r) * std::sin(angle),
      std::cosh(2 * r) + std::sinh(2 * r) * std::cos(angle);
  return c;
}

double corr2(double cov, double v1, double v2) { return cov * cov / (v1 * v2); }

// Q and P of the output combinations of an oracle state, plus the input
// signal quadratures, evaluated on one state in the Heisenberg picture.
struct HeisenbergTable {
  oracle::MomentTable t;
  // Index layout: 0 Q_in, 1 P_in, 2 Q_out1, 3 P_out1, 4 Q_out2, 5 P_out2.
  double var(int i) const { return t.cov(i, i); }
  double mean(int i) const { return t.means(i); }
  CorrelationTriple triple(int quad) const {
    const int in = quad, o1 = 2 + quad, o2 = 4 + quad;
    return {corr2(t.cov(in, o1), var(in), var(o1)), corr2(t.cov(in, o2), var(in), var(o2)),
            corr2(t.cov(o1, o2), var(o1), var(o2))};
  }
};

Observable quad_q(const Observable& a) { return a + a.adjoint(); }
Observable quad_p(const Observable& a) {
  return Complex{0.0, 1.0} * (a.adjoint() - a);
}

HeisenbergTable heisenberg(const FockState& state, const Observable& signal,
                           const Observable& out1, const Observable& out2) {
  const std::array<Observable, 6> ops{quad_q(signal), quad_p(signal), quad_q(out1),
                                      quad_p(out1),   quad_q(out2),   quad_p(out2)};
  return {oracle::moments(state, ops)};
}

double triple_diff(const CorrelationTriple& a, const CorrelationTriple& b) {
  return std::max({std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2), std::abs(a.c3 - b.c3)});
}

std::size_t coherent_cutoff(Complex alpha) {
  const double a = std::abs(alpha);
  return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 10.0));
}

}  // namespace

std::vector<OracleCheck> engine_equivalence_checks(const OracleSettings& s) {
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<ModeLabel> labels{kSignalMode, kSpinMode};
  std::vector<OracleCheck> out;
  for (std::size_t k = 0; k < s.scenarios; ++k) {
    const Complex alpha = std::polar(2.0 * unit(rng), 2 * kPi * unit(rng));
    const Complex beta = std::polar(0.5 * unit(rng), 2 * kPi * unit(rng));
    const double r = 0.4 * unit(rng);
    const double sq_angle = 2 * kPi * unit(rng);
    const double theta = 0.5 * kPi * unit(rng);

    const std::array<oracle::Factor, 2> factors{
        oracle::ModeFactor{kSignalMode, s.cutoff, oracle::CoherentSpec{alpha}},
        oracle::ModeFactor{kSpinMode, s.cutoff, oracle::SqueezedSpec{beta, r, sq_angle}}};
    const FockState in = oracle::build_state(factors);
    const oracle::Evolution evolve = [&](const FockState& st) {
      return oracle::apply_beamsplitter(st, kSignalMode, kSpinMode, theta);
    };
    const GaussianState oracle_out = oracle::to_gaussian(evolve(in), labels);
    const std::array<Observable, 4> quads{
        Observable::quadrature_q(kSignalMode), Observable::quadrature_p(kSignalMode),
        Observable::quadrature_q(kSpinMode), Observable::quadrature_p(kSpinMode)};
    const Eigen::MatrixXd oracle_cross = oracle::cross_covariance(in, quads, quads, evolve);

    Eigen::VectorXd means(4);
    means << 2 * alpha.real(), 2 * alpha.imag(), 2 * beta.real(), 2 * beta.imag();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(4, 4);
    cov.block<2, 2>(2, 2) = squeezed_cov(r, sq_angle);
    const MapResult engine = apply_map(GaussianState(labels, means, cov),
                                       storage_map(PolaritonAngle::from_theta(theta)), labels);

    const double delta = std::max(
        {max_abs_diff(engine.state.means(), oracle_out.means()),
         max_abs_diff(engine.state.cov(), oracle_out.cov()),
         max_abs_diff(engine.cross_cov, oracle_cross)});
    OracleCheck c{"engine_equivalence",
                  fmt::format("scenario {} |alpha|={:.3f} r={:.3f} theta={:.3f}", k,
                              std::abs(alpha), r, theta),
                  engine.state.cov()(0, 0), oracle_out.cov()(0, 0), delta,
                  1e-8 * s.tolerance_scale, false};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<OracleCheck> finite_n_checks(const OracleSettings& s) {
  std::vector<OracleCheck> out;
  double previous = std::numeric_limits<double>::infinity();
  int violations = 0;
  double worst_scaled = 0.0;
  for (unsigned n : {10u, 20u, 50u, 100u}) {
    const BecMedium medium = make_bec_medium_from_population(n, 0.5, kPi / 4);
    const std::array<oracle::Factor, 1> factors{oracle::BecPairFactor{"a1", "a2", medium}};
    const FockState st = oracle::build_state(factors);
    const QuadratureMoments exact = oracle::spin_mode_moments(st, "a1", "a2", n);
    const QuadratureMoments closed = spin_moments(medium);
    const double err = std::max(std::abs(exact.var_q - closed.var_q),
                                std::abs(exact.var_p - closed.var_p));
    OracleCheck c = row("finite_n", fmt::format("N={} Var Q_xi", n), closed.var_q,
                        exact.var_q, 5.0 / n, s);
    c.delta = err;
    out.push_back(std::move(c));
    constexpr double kRoundoffFloor = 1e-12;
    if (err > previous && err > kRoundoffFloor) ++violations;
    previous = err;
    worst_scaled = std::max(worst_scaled, err * n);
  }
  out.push_back({"finite_n", "monotone error decrease (violations)", 0.0,
                 static_cast<double>(violations), static_cast<double>(violations),
                 0.5 * s.tolerance_scale, false});
  out.push_back({"finite_n", "fitted C in |error| <= C/N", 0.0, worst_scaled,
                 worst_scaled, 0.0, true});
  return out;
}

std::vector<OracleCheck> storage_checks(const OracleSettings& s) {
  std::vector<OracleCheck> out;
  const Complex alpha{0.6, 0.2};
  const QuadratureMoments signal =
      QuadratureMoments::coherent(2 * alpha.real(), 2 * alpha.imag());

  for (double v : {0.5, 0.58, 1.0, 2.0}) {
    const double r = std::abs(std::log(v)) / 2;
    const double sq_angle = v <= 1.0 ? 0.0 : kPi;
    for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
      const std::array<oracle::Factor, 2> factors{
          oracle::ModeFactor{kSignalMode, s.cutoff, oracle::CoherentSpec{alpha}},
          oracle::ModeFactor{kSpinMode, s.cutoff,
                             oracle::SqueezedSpec{Complex{}, r, sq_angle}}};
      const FockState in = oracle::build_state(factors);
      const oracle::Evolution evolve = [&](const FockState& st) {
        return oracle::apply_beamsplitter(st, kSignalMode, kSpinMode, theta);
      };
      const std::array<Observable, 2> before{Observable::quadrature_q(kSignalMode),
                                             Observable::quadrature_p(kSignalMode)};
      const std::array<Observable, 4> after{
          Observable::quadrature_q(kSignalMode), Observable::quadrature_p(kSignalMode),
          Observable::quadrature_q(kSpinMode), Observable::quadrature_p(kSpinMode)};
      const Eigen::MatrixXd cross = oracle::cross_covariance(in, before, after, evolve);
      const FockState moved = evolve(in);
      const oracle::MomentTable outm = oracle::moments(moved, after);
      const oracle::MomentTable inm = oracle::moments(in, before);

      const PolaritonAngle angle = PolaritonAngle::from_theta(theta);
      double delta = 0.0;
      for (int quad = 0; quad < 2; ++quad) {
        const double vin = inm.cov(quad, quad);
        const double vf = outm.cov(quad, quad);
        const double vx = outm.cov(2 + quad, 2 + quad);
        const CorrelationTriple measured{corr2(cross(quad, quad), vin, vf),
                                         corr2(cross(quad, 2 + quad), vin, vx),
                                         corr2(outm.cov(quad, 2 + quad), vf, vx)};
        const CorrelationTriple closed =
            closed_form_coefficients(1.0, quad == 0 ? v : 1.0 / v, angle);
        delta = std::max(delta, triple_diff(measured, closed));
      }
      out.push_back({"storage_bosonic",
                     fmt::format("V_xi={} theta={:.4f}", v, theta), 0.0, delta, delta,
                     1e-8 * s.tolerance_scale, false});
    }
  }

  const unsigned n = 50;
  for (double phi : {0.0, kPi / 4}) {
    const BecMedium medium = make_bec_medium_from_population(n, 0.3, phi);
    const std::array<oracle::Factor, 2> factors{
        oracle::ModeFactor{kSignalMode, coherent_cutoff(alpha), oracle::CoherentSpec{alpha}},
        oracle::BecPairFactor{"a1", "a2", medium}};
    const FockState st = oracle::build_state(factors);
    const Observable f = Observable::annihilate(kSignalMode);
    const Observable xi = Complex{1.0 / std::sqrt(double(n)), 0.0} *
                          (Observable::create("a2") * Observable::annihilate("a1"));
    for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
      const Complex mu{std::cos(theta), 0.0};
      const Complex nu{std::sin(theta), 0.0};
      const HeisenbergTable h = heisenberg(st, f, mu * f - nu * xi, mu * xi + nu * f);
      const CorrelationReport rep =
          correlation_report(signal, spin_moments(medium), PolaritonAngle::from_theta(theta));
      const double delta = std::max(triple_diff(h.triple(0), rep.q.coefficients),
                                    triple_diff(h.triple(1), rep.p.coefficients));
      out.push_back({"storage_spin",
                     fmt::format("N={} |a1|^2=0.3 phi={:.4f} theta={:.4f}", n, phi, theta),
                     rep.q.coefficients.c1, h.triple(0).c1, delta,
                     1e-10 * s.tolerance_scale, false});
    }
  }

  // Sweep reference point: Var Q_xi = 0.58 at theta = pi/4 gives C1_Q = 1/1.58.
  const CorrelationReport ref = correlation_report(
      signal, spin_moments(make_bec_medium_from_population(n, 0.3, kPi / 4)),
      PolaritonAngle::from_theta(kPi / 4));
  out.push_back(row("storage_spin", "C1_Q at |a1|^2=0.3 phi=pi/4 theta=pi/4", 1.0 / 1.58,
                    ref.q.coefficients.c1, 1e-12, s));
  return out;
}

std::vector<OracleCheck> fock_medium_checks(const OracleSettings& s) {
  std::vector<OracleCheck> out;
  const std::array<std::array<unsigned, 2>, 4> cases{{{1, 20}, {2, 98}, {0, 30}, {3, 40}}};
  for (const auto& [n1, n2] : cases) {
    const std::array<oracle::Factor, 2> factors{
        oracle::ModeFactor{"a1", n1 + 2u, oracle::FockSpec{n1}},
        oracle::ModeFactor{"a2", n2 + 2u, oracle::FockSpec{n2}}};
    const FockState st = oracle::build_state(factors);
    const double total = n1 + n2;
    const QuadratureMoments m = oracle::spin_mode_moments(st, "a1", "a2", total);
    const double exact = (n1 * (n2 + 1.0) + n2 * (n1 + 1.0)) / total;
    out.push_back(row("fock_medium", fmt::format("n1={} n2={} Var Q_xi", n1, n2), exact,
                      m.var_q, 1e-10, s));
    out.push_back(row("fock_medium", fmt::format("n1={} n2={} Var P_xi", n1, n2), exact,
                      m.var_p, 1e-10, s));
    out.push_back(row("fock_medium",
                      fmt::format("n1={} n2={} Var - (1 + 2 n1) vs -2 n1^2/N", n1, n2),
                      -2.0 * n1 * n1 / total, m.var_q - (1.0 + 2.0 * n1), 1e-10, s));
  }
  for (double n1 : {1.0, 2.0, 5.0}) {
    for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
      const PolaritonAngle angle = PolaritonAngle::from_theta(theta);
      const double delta = triple_diff(fock_medium_coefficients(n1, angle),
                                       closed_form_coefficients(1.0, 1.0 + 2.0 * n1, angle));
      out.push_back({"fock_medium",
                     fmt::format("n1={} theta={:.4f} number-state formula vs V_xi=1+2n1",
                                 n1, theta),
                     0.0, delta, delta, 1e-12 * s.tolerance_scale, false});
    }
  }
  return out;
}

std::vector<OracleCheck> cloning_checks(const OracleSettings& s) {
  std::vector<OracleCheck> out;
  const Complex alpha{0.4, 0.3};
  const QuadratureMoments signal =
      QuadratureMoments::coherent(2 * alpha.real(), 2 * alpha.imag());

  {
    constexpr std::size_t cutoff = 56;
    const std::array<oracle::Factor, 3> factors{
        oracle::ModeFactor{kSignalMode, cutoff, oracle::CoherentSpec{alpha}},
        oracle::ModeFactor{kAncillaMode, cutoff, oracle::VacuumSpec{}},
        oracle::ModeFactor{kSpinMode, cutoff, oracle::VacuumSpec{}}};
    const FockState in = oracle::build_state(factors);
    const oracle::Evolution evolve = [](const FockState& st) {
      return oracle::apply_beamsplitter(
          oracle::apply_two_mode_squeezer(st, kSignalMode, kAncillaMode), kSignalMode,
          kSpinMode, kPi / 4);
    };
    const std::array<Observable, 2> before{Observable::quadrature_q(kSignalMode),
                                           Observable::quadrature_p(kSignalMode)};
    const std::array<Observable, 4> after{
        Observable::quadrature_q(kSignalMode), Observable::quadrature_p(kSignalMode),
        Observable::quadrature_q(kSpinMode), Observable::quadrature_p(kSpinMode)};
    const Eigen::MatrixXd cross = oracle::cross_covariance(in, before, after, evolve);
    const oracle::MomentTable o = oracle::moments(evolve(in), after);
    const CloneReport rep = clone(signal, CoherentMedium{});

    const double mean_delta = std::max(
        {std::abs(o.means(0) - rep.bright.moments.mean_q),
         std::abs(o.means(1) - rep.bright.moments.mean_p),
         std::abs(o.means(2) - rep.dark.moments.mean_q),
         std::abs(o.means(3) - rep.dark.moments.mean_p)});
    out.push_back({"cloning", "coherent medium clone means (unitary route)",
                   rep.bright.moments.mean_q, o.means(0), mean_delta,
                   1e-8 * s.tolerance_scale, false});
    const double var_delta = std::max(
        {std::abs(o.cov(0, 0) - rep.bright.moments.var_q),
         std::abs(o.cov(1, 1) - rep.bright.moments.var_p),
         std::abs(o.cov(2, 2) - rep.dark.moments.var_q),
         std::abs(o.cov(3, 3) - rep.dark.moments.var_p)});
    out.push_back({"cloning", "coherent medium clone variances (unitary route)",
                   rep.bright.moments.var_q, o.cov(0, 0), var_delta,
                   1e-8 * s.tolerance_scale, false});
    double corr_delta = 0.0;
    for (int quad = 0; quad < 2; ++quad) {
      const CorrelationTriple measured{
          corr2(cross(quad, quad), 1.0, o.cov(quad, quad)),
          corr2(cross(quad, 2 + quad), 1.0, o.cov(2 + quad, 2 + quad)),
          corr2(o.cov(quad, 2 + quad), o.cov(quad, quad), o.cov(2 + quad, 2 + quad))};
      corr_delta = std::max(
          corr_delta, triple_diff(measured, quad == 0 ? rep.correlations_q : rep.correlations_p));
    }
    out.push_back({"cloning", "coherent medium C1..C3 (unitary route)",
                   rep.correlations_q.c1, rep.correlations_q.c1, corr_delta,
                   1e-8 * s.tolerance_scale, false});
    out.push_back(row("cloning", "coherent medium fidelity (unitary route)", 2.0 / 3.0,
                      fidelity(o.cov(0, 0) - 1.0, o.cov(1, 1) - 1.0), 1e-8, s));
  }

  const unsigned n = 50;
  struct Case {
    double population1;
    double phi;
    std::string name;
  };
  const std::array<Case, 3> cases{{{0.5, kPi / 4, "balanced BEC"},
                                   {0.3, 1.0, "BEC |a1|^2=0.3 phi=1"},
                                   {0.0, 0.0, "BEC |a1|^2=0"}}};
  const double h = 1.0 / std::numbers::sqrt2;
  for (const Case& c : cases) {
    const BecMedium medium = make_bec_medium_from_population(n, c.population1, c.phi);
    const std::array<oracle::Factor, 3> factors{
        oracle::ModeFactor{kSignalMode, coherent_cutoff(alpha), oracle::CoherentSpec{alpha}},
        oracle::ModeFactor{kAncillaMode, 2, oracle::VacuumSpec{}},
        oracle::BecPairFactor{"a1", "a2", medium}};
    const FockState st = oracle::build_state(factors);
    const Observable f = Observable::annihilate(kSignalMode);
    const Observable cdag = Observable::create(kAncillaMode);
    const Observable xi = Complex{1.0 / std::sqrt(double(n)), 0.0} *
                          (Observable::create("a2") * Observable::annihilate("a1"));
    const Complex hc{h, 0.0};
    const HeisenbergTable t =
        heisenberg(st, f, f + hc * cdag - hc * xi, f + hc * cdag + hc * xi);
    const CloneReport rep = clone(signal, medium);

    const double mean_delta = std::max(
        {std::abs(t.mean(2) - rep.bright.moments.mean_q),
         std::abs(t.mean(3) - rep.bright.moments.mean_p),
         std::abs(t.mean(4) - rep.dark.moments.mean_q),
         std::abs(t.mean(5) - rep.dark.moments.mean_p)});
    out.push_back({"cloning", c.name + " clone means (Heisenberg route)",
                   rep.bright.moments.mean_q, t.mean(2), mean_delta,
                   1e-10 * s.tolerance_scale, false});
    const double var_delta = std::max(
        {std::abs(t.var(2) - rep.bright.moments.var_q),
         std::abs(t.var(3) - rep.bright.moments.var_p),
         std::abs(t.var(4) - rep.dark.moments.var_q),
         std::abs(t.var(5) - rep.dark.moments.var_p)});
    out.push_back({"cloning", c.name + " clone variances (Heisenberg route)",
                   rep.bright.moments.var_q, t.var(2), var_delta,
                   1e-10 * s.tolerance_scale, false});
    const double corr_delta = std::max(triple_diff(t.triple(0), rep.correlations_q),
                                       triple_diff(t.triple(1), rep.correlations_p));
    out.push_back({"cloning", c.name + " C1..C3 (Heisenberg route)",
                   rep.correlations_q.c1, t.triple(0).c1, corr_delta,
                   1e-10 * s.tolerance_scale, false});
    const double noise_q = 1.0 - 2.0 * c.population1 * (1 - c.population1) *
                                     std::cos(c.phi) * std::cos(c.phi);
    const double noise_p = 1.0 - 2.0 * c.population1 * (1 - c.population1) *
                                     std::sin(c.phi) * std::sin(c.phi);
    const double f_oracle = fidelity(t.var(2) - t.var(0), t.var(3) - t.var(1));
    out.push_back(row("cloning", c.name + " fidelity from reduced added noise",
                      fidelity(noise_q, noise_p), f_oracle, 1e-10, s));
    if (c.population1 == 0.5) {
      out.push_back({"cloning", c.name + " quoted fidelity 0.8 vs formula",
                     kQuotedBalancedBecFidelity, f_oracle,
                     std::abs(kQuotedBalancedBecFidelity - f_oracle), 0.0, true});
    }
  }
  return out;
}

std::vector<OracleCheck> squeezer_checks(const OracleSettings& s) {
  std::vector<OracleCheck> out;
  constexpr std::size_t cutoff = 44;
  const std::vector<ModeLabel> labels{kSignalMode, kAncillaMode};
  {
    const std::array<oracle::Factor, 2> factors{
        oracle::ModeFactor{kSignalMode, cutoff, oracle::VacuumSpec{}},
        oracle::ModeFactor{kAncillaMode, cutoff, oracle::VacuumSpec{}}};
    const FockState st = oracle::apply_two_mode_squeezer(oracle::build_state(factors),
                                                         kSignalMode, kAncillaMode);
    out.push_back(row("squeezer", "vacuum <n_f>", 1.0,
                      oracle::expectation(st, Observable::number(kSignalMode)).real(), 1e-9,
                      s));
    const GaussianState o = oracle::to_gaussian(st, labels);
    const GaussianState e =
        apply_map(make_vacuum(labels), amplifier_map(), labels).state;
    out.push_back(row("squeezer", "vacuum Var Q_f", 3.0, o.cov()(0, 0), 1e-9, s));
    out.push_back({"squeezer", "vacuum covariance vs amplifier map", 0.0,
                   max_abs_diff(o.cov(), e.cov()), max_abs_diff(o.cov(), e.cov()),
                   1e-9 * s.tolerance_scale, false});
  }
  {
    const Complex alpha{0.5, -0.2};
    const std::array<oracle::Factor, 2> factors{
        oracle::ModeFactor{kSignalMode, cutoff, oracle::CoherentSpec{alpha}},
        oracle::ModeFactor{kAncillaMode, cutoff, oracle::VacuumSpec{}}};
    const FockState st = oracle::apply_two_mode_squeezer(oracle::build_state(factors),
                                                         kSignalMode, kAncillaMode);
    out.push_back(row("squeezer", "coherent <Q_f> gains sqrt(2)",
                      std::numbers::sqrt2 * 2 * alpha.real(),
                      oracle::mode_moments(st, kSignalMode).mean_q, 1e-9, s));
  }
  for (unsigned n : {10u, 50u, 100u}) {
    const BecMedium medium = make_bec_medium_from_population(n, 0.3, kPi / 4);
    const std::array<oracle::Factor, 1> factors{oracle::BecPairFactor{"a1", "a2", medium}};
    const FockState st = oracle::build_state(factors);
    const double comm = oracle::xi_commutator(st, "a1", "a2", n);
    out.push_back(row("xi_boson", fmt::format("N={} <[xi, xi^+]> = |a2|^2 - |a1|^2", n),
                      0.4, comm, 1e-10, s));
    out.push_back({"xi_boson", fmt::format("N={} bosonic defect 1 - <[xi, xi^+]>", n), 0.0,
                   1.0 - comm, 1.0 - comm, 0.0, true});
  }
  return out;
}

std::vector<OracleCheck> run_oracle_suite(const OracleSettings& s) {
  std::vector<OracleCheck> all;
  for (auto* part : {&engine_equivalence_checks, &finite_n_checks, &storage_checks,
                     &fock_medium_checks, &cloning_checks, &squeezer_checks}) {
    std::vector<OracleCheck> rows = part(s);
    all.insert(all.end(), std::make_move_iterator(rows.begin()),
               std::make_move_iterator(rows.end()));
  }
  return all;
}

}  // namespace eitcv::app
