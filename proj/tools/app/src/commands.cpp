#include "eitcv_app/commands.hpp"

#include "eitcv/errors.hpp"
#include "eitcv/stirap.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace eitcv::app {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void add_config_meta(CsvTable& table, const Config& config) {
  for (const auto& [key, value] : flatten(config)) {
    table.add_meta("config." + key, value);
  }
}

json config_json(const Config& config) {
  json out = json::object();
  for (const auto& [key, value] : flatten(config)) out[key] = value;
  return out;
}

json moments_json(const QuadratureMoments& m) {
  return {{"mean_q", m.mean_q}, {"mean_p", m.mean_p}, {"var_q", m.var_q},
          {"var_p", m.var_p},   {"cov_qp", m.cov_qp}};
}

json triple_json(const CorrelationTriple& t) {
  return {{"C1", t.c1}, {"C2", t.c2}, {"C3", t.c3}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bool is_balanced_bec(const AtomicMediumState& medium) {
  const auto* b = std::get_if<BecMedium>(&medium);
  return b != nullptr && std::abs(b->mag1 * b->mag1 - 0.5) < 1e-12 &&
         std::abs(b->relative_phase() - kPi / 4) < 1e-12;
}

}  // namespace

std::vector<NamedMedium> default_sweep_media() {
  return {{"bec_phi_pi4", make_bec_medium_from_population(100, 0.3, kPi / 4)},
          {"bec_phi_0", make_bec_medium_from_population(100, 0.3, 0.0)}};
}

std::vector<NamedMedium> default_clone_media() {
  return {{"coherent", CoherentMedium{}},
          {"bec_balanced", make_bec_medium_from_population(100, 0.5, kPi / 4)},
          {"bec_empty", make_bec_medium_from_population(100, 0.0, 0.0)}};
}

std::vector<SweepRow> qnd_sweep(const AtomicMediumState& medium,
                                const SweepSettings& s) {
  if (s.points == 0) throw ValidationError("sweep needs at least one point");
  if (!(s.theta_min >= 0.0) || !(s.theta_max <= kPi / 2) ||
      !(s.theta_min < s.theta_max)) {
    throw ValidationError("sweep angles must satisfy 0 <= theta_min < theta_max <= pi/2");
  }
  if (!(s.margin > 0.0 && s.margin <= 1.0)) {
    throw ValidationError("QND margin must be in (0, 1]");
  }
  if (!(s.signal_var_q >= 0.0) || !(s.signal_var_p >= 0.0)) {
    throw ValidationError("signal variances must be nonnegative");
  }
  validate(medium);
  const SpinMoments spin = spin_moments(medium);
  const QuadratureMoments signal{0.0, 0.0, s.signal_var_q, s.signal_var_p, 0.0};
  const double step = (s.theta_max - s.theta_min) / static_cast<double>(s.points);
  return parallel_map(s.points, [&](std::size_t k) {
    const PolaritonAngle angle =
        PolaritonAngle::from_theta(s.theta_min + step * static_cast<double>(k));
    const CorrelationReport rep = correlation_report(signal, spin, angle);
    return SweepRow{angle.theta(),       rep.q.coefficients,
                    rep.p.coefficients,  rep.q.v_out_spin,
                    rep.p.v_out_spin,    qnd_condition_check(spin, angle, s.margin)};
  });
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
  CsvTable table({"theta", "C1_Q", "C2_Q", "C3_Q", "C1_P", "C2_P", "C3_P", "V_Q_xi",
                  "V_P_xi"});
  for (const SweepRow& r : rows) {
    table.add_row({r.theta, r.q.c1, r.q.c2, r.q.c3, r.p.c1, r.p.c2, r.p.c3, r.v_q_xi,
                   r.v_p_xi});
  }
  return table;
}

int qnd_sweep_command(const Config& config, const CommandOptions& options,
                      std::ostream& log) {
  SweepSettings s = parse_sweep(config);
  if (options.grid) s.points = *options.grid;
  if (options.margin) s.margin = *options.margin;
  const std::vector<NamedMedium> media = parse_media(config, default_sweep_media());

  for (const NamedMedium& m : media) {
    const std::vector<SweepRow> rows = qnd_sweep(m.medium, s);
    CsvTable table = sweep_table(rows);
    const SpinMoments spin = spin_moments(m.medium);
    const auto q_ok = std::count_if(rows.begin(), rows.end(),
                                    [](const SweepRow& r) { return r.qnd.q; });
    const auto p_ok = std::count_if(rows.begin(), rows.end(),
                                    [](const SweepRow& r) { return r.qnd.p; });
    table.add_meta("command", "qnd-sweep");
    table.add_meta("medium", m.name);
    table.add_meta("medium_state", describe(m.medium));
    table.add_meta("V_Q_xi_in", format_double(spin.var_q));
    table.add_meta("V_P_xi_in", format_double(spin.var_p));
    table.add_meta("signal_var_q", format_double(s.signal_var_q));
    table.add_meta("signal_var_p", format_double(s.signal_var_p));
    table.add_meta("points", std::to_string(s.points));
    table.add_meta("theta_min", format_double(s.theta_min));
    table.add_meta("theta_max_excluded", format_double(s.theta_max));
    table.add_meta("margin", format_double(s.margin));
    table.add_meta("qnd_condition_q_points", std::to_string(q_ok));
    table.add_meta("qnd_condition_p_points", std::to_string(p_ok));
    table.add_meta("V_Q_xi_column", "output spin-polariton variance");
    add_config_meta(table, config);
    const auto path = options.out / fmt::format("qnd_sweep_{}.csv", m.name);
    write_file(path, table.str());
    log << fmt::format("qnd-sweep: {} ({} points) -> {}\n", m.name, rows.size(),
                       path.string());
  }
  return kExitOk;
}

int clone_report_command(const Config& config, const CommandOptions& options,
                         std::ostream& log) {
  CloneSettings s = parse_clone(config);
  if (options.grid) s.grid = *options.grid;
  if (s.grid < 2) throw ValidationError("clone grid needs at least 2 points per axis");
  const CloneOptions copts{s.theta, s.balance_tolerance};
  const QuadratureMoments signal =
      QuadratureMoments::coherent(s.signal_mean_q, s.signal_mean_p);
  const std::vector<NamedMedium> media = parse_media(config, default_clone_media());

  json report = {{"command", "clone-report"},
                 {"config", config_json(config)},
                 {"theta", s.theta},
                 {"signal", moments_json(signal)},
                 {"media", json::array()}};
  for (const NamedMedium& m : media) {
    const CloneReport r = clone(signal, m.medium, copts);
    json entry = {
        {"name", m.name},
        {"medium", describe(m.medium)},
        {"unbalanced_angle", r.unbalanced_angle},
        {"bright", {{"moments", moments_json(r.bright.moments)},
                    {"added_noise_q", r.bright.added_noise_q},
                    {"added_noise_p", r.bright.added_noise_p},
                    {"fidelity", r.bright.fidelity}}},
        {"dark", {{"moments", moments_json(r.dark.moments)},
                  {"added_noise_q", r.dark.added_noise_q},
                  {"added_noise_p", r.dark.added_noise_p},
                  {"fidelity", r.dark.fidelity}}},
        {"correlations", {{"Q", triple_json(r.correlations_q)},
                          {"P", triple_json(r.correlations_p)}}},
        {"fidelity", r.fidelity},
        {"fidelity_quoted", nullptr},
        {"fidelity_note", nullptr}};
    if (is_balanced_bec(m.medium)) {
      entry["fidelity_quoted"] = kQuotedBalancedBecFidelity;
      entry["fidelity_note"] = fmt::format(
          "quoted value {} for this point differs from the fidelity formula "
          "2/sqrt((2+V_Q)(2+V_P)) evaluated on the clones' added noise ({:.17g} = 8/11); "
          "difference {:.17g}",
          kQuotedBalancedBecFidelity, r.fidelity, r.fidelity - kQuotedBalancedBecFidelity);
    }
    if (r.unbalanced_angle) {
      log << fmt::format("clone-report: warning: theta = {} is not balanced; the outputs "
                         "are not symmetric clones\n",
                         s.theta);
    }
    report["media"].push_back(std::move(entry));
  }
  const auto json_path = options.out / "clone_report.json";
  write_file(json_path, dump(report));

  const std::size_t g = s.grid;
  const auto cells = parallel_map(g * g, [&](std::size_t idx) {
    const double pop = static_cast<double>(idx / g) / static_cast<double>(g - 1);
    const double phi = (kPi / 2) * static_cast<double>(idx % g) / static_cast<double>(g - 1);
    const CloneReport r =
        clone(signal, make_bec_medium_from_population(s.grid_atoms, pop, phi), copts);
    return std::vector<double>{pop,
                               phi,
                               r.fidelity,
                               r.bright.added_noise_q,
                               r.bright.added_noise_p,
                               r.correlations_q.c1,
                               r.correlations_q.c2,
                               r.correlations_q.c3,
                               r.correlations_p.c1,
                               r.correlations_p.c2,
                               r.correlations_p.c3};
  });
  CsvTable grid({"population1", "phi", "fidelity", "added_noise_Q", "added_noise_P",
                 "C1_Q", "C2_Q", "C3_Q", "C1_P", "C2_P", "C3_P"});
  for (const auto& c : cells) grid.add_row(c);
  grid.add_meta("command", "clone-report");
  grid.add_meta("grid", std::to_string(g));
  grid.add_meta("grid_atoms", std::to_string(s.grid_atoms));
  grid.add_meta("theta", format_double(s.theta));
  grid.add_meta("signal_mean_q", format_double(s.signal_mean_q));
  grid.add_meta("signal_mean_p", format_double(s.signal_mean_p));
  add_config_meta(grid, config);
  const auto grid_path = options.out / "clone_grid.csv";
  write_file(grid_path, grid.str());
  log << fmt::format("clone-report: {} media -> {}, {}x{} grid -> {}\n", media.size(),
                     json_path.string(), g, g, grid_path.string());
  return kExitOk;
}

namespace {

struct StirapOutcome {
  EquationVariant variant;
  StirapRun run;
  Trajectory trajectory;
};

json stirap_summary(const StirapOutcome& o) {
  const TrajectoryDiagnostics& d = o.trajectory.diagnostics;
  const auto adiabatic = std::count(d.adiabatic_trace.begin(), d.adiabatic_trace.end(), true);
  const auto angles = eit_angle_trace(o.trajectory, o.run.params);
  json theta = json::array();
  for (const auto& a : angles) {
    if (a) theta.push_back(a->theta());
  }
  return {{"variant", std::string(to_string(o.variant))},
          {"atom_charge_drift", d.atom_charge_drift},
          {"printed_atom_charge_drift", d.printed_atom_charge_drift},
          {"photon_charge_drift", d.photon_charge_drift},
          {"max_excited_fraction", d.max_excited_fraction},
          {"final_molecular_fraction", d.final_molecular_fraction},
          {"adiabatic_samples", adiabatic},
          {"samples", o.trajectory.samples.size()},
          {"theta_first", theta.empty() ? json(nullptr) : theta.front()},
          {"theta_last", theta.empty() ? json(nullptr) : theta.back()},
          {"ode", {{"accepted", d.ode.accepted},
                   {"rejected", d.ode.rejected},
                   {"rhs_evaluations", d.ode.rhs_evaluations},
                   {"smallest_step", d.ode.smallest_step}}}};
}

CsvTable trajectory_table(const StirapOutcome& o, const Config& config) {
  CsvTable t({"t", "re_a1", "im_a1", "re_a2", "im_a2", "re_a3", "im_a3", "re_f", "im_f",
              "n1", "n2", "n3", "n_f", "Q1", "Q2", "theta"});
  const auto angles = eit_angle_trace(o.trajectory, o.run.params);
  for (std::size_t k = 0; k < o.trajectory.samples.size(); ++k) {
    const StirapState& s = o.trajectory.samples[k];
    t.add_row({s.t, s.a1.real(), s.a1.imag(), s.a2.real(), s.a2.imag(), s.a3.real(),
               s.a3.imag(), s.f.real(), s.f.imag(), s.n1(), s.n2(), s.n3(), s.nf(),
               atom_charge(s), photon_charge(s),
               angles[k] ? angles[k]->theta() : std::nan("")});
  }
  const StirapParams& p = o.run.params;
  t.add_meta("command", "stirap-run");
  t.add_meta("variant", std::string(to_string(o.variant)));
  t.add_meta("kappa", fmt::format("{:.17g}{:+.17g}i", p.kappa.real(), p.kappa.imag()));
  t.add_meta("omega2", fmt::format("{:.17g}{:+.17g}i", p.omega2.real(), p.omega2.imag()));
  t.add_meta("delta1", format_double(p.delta1));
  t.add_meta("delta2", format_double(p.delta2));
  t.add_meta("gamma", fmt::format("{:.17g},{:.17g},{:.17g}", p.gamma[0], p.gamma[1],
                                  p.gamma[2]));
  t.add_meta("kappa_pulse", fmt::format("{} center={:.17g} width={:.17g}",
                                        to_string(p.kappa_pulse.shape),
                                        p.kappa_pulse.center, p.kappa_pulse.width));
  t.add_meta("omega2_pulse", fmt::format("{} center={:.17g} width={:.17g}",
                                         to_string(p.omega2_pulse.shape),
                                         p.omega2_pulse.center, p.omega2_pulse.width));
  t.add_meta("t_end", format_double(o.run.t_end));
  t.add_meta("rel_tol", format_double(o.run.options.rel_tol));
  t.add_meta("abs_tol", format_double(o.run.options.abs_tol));
  t.add_meta("Q1", "n1 + 2 n2 + 2 n3");
  t.add_meta("Q2", "n_f - n2");
  add_config_meta(t, config);
  return t;
}

}  // namespace

int stirap_run_command(const Config& config, const CommandOptions& options,
                       std::ostream& log) {
  const std::string key = options.variant.value_or(stirap_variant_key(config));
  std::vector<EquationVariant> variants;
  if (key == "both") {
    variants = {EquationVariant::printed, EquationVariant::symmetrized};
  } else {
    variants = {parse_equation_variant(key)};
  }
  std::vector<StirapRun> runs;
  for (EquationVariant v : variants) runs.push_back(parse_stirap(config, v));

  const auto outcomes = parallel_map(runs.size(), [&](std::size_t i) {
    return StirapOutcome{variants[i], runs[i],
                         integrate(runs[i].initial, runs[i].params, runs[i].t_end,
                                   runs[i].options)};
  });

  json summary = {{"command", "stirap-run"}, {"config", config_json(config)},
                  {"runs", json::array()}};
  for (const StirapOutcome& o : outcomes) {
    const auto path = options.out / fmt::format("stirap_{}.csv", to_string(o.variant));
    write_file(path, trajectory_table(o, config).str());
    summary["runs"].push_back(stirap_summary(o));
    log << fmt::format(
        "stirap-run: {} -> {} (Q1 drift {:.3g}, Q2 drift {:.3g}, max n3/N {:.3g}, "
        "molecular fraction {:.4f})\n",
        to_string(o.variant), path.string(), o.trajectory.diagnostics.atom_charge_drift,
        o.trajectory.diagnostics.photon_charge_drift,
        o.trajectory.diagnostics.max_excited_fraction,
        o.trajectory.diagnostics.final_molecular_fraction);
  }
  if (outcomes.size() == 2) {
    const auto& a = outcomes[0].trajectory.samples;
    const auto& b = outcomes[1].trajectory.samples;
    double dn1 = 0, dn2 = 0, dn3 = 0, dnf = 0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
      dn1 = std::max(dn1, std::abs(a[k].n1() - b[k].n1()));
      dn2 = std::max(dn2, std::abs(a[k].n2() - b[k].n2()));
      dn3 = std::max(dn3, std::abs(a[k].n3() - b[k].n3()));
      dnf = std::max(dnf, std::abs(a[k].nf() - b[k].nf()));
    }
    summary["comparison"] = {
        {"max_abs_diff_n1", dn1},
        {"max_abs_diff_n2", dn2},
        {"max_abs_diff_n3", dn3},
        {"max_abs_diff_nf", dnf},
        {"final_molecular_fraction_diff",
         outcomes[1].trajectory.diagnostics.final_molecular_fraction -
             outcomes[0].trajectory.diagnostics.final_molecular_fraction}};
  }
  write_file(options.out / "stirap_summary.json", dump(summary));
  return kExitOk;
}

int oracle_check_command(const Config& config, const CommandOptions& options,
                         std::ostream& log) {
  OracleSettings s = parse_oracle(config);
  if (options.self_test) s.tolerance_scale = 0.0;
  if (s.cutoff < 2 || s.scenarios == 0) {
    throw ValidationError("oracle cutoff must be >= 2 and scenarios >= 1");
  }
  const std::vector<OracleCheck> checks = run_oracle_suite(s);

  json rows = json::array();
  std::size_t failures = 0;
  log << fmt::format("{:<20} {:<62} {:>12} {:>10} {}\n", "section", "check", "delta",
                     "tolerance", "result");
  for (const OracleCheck& c : checks) {
    const bool ok = c.pass();
    if (!ok) ++failures;
    log << fmt::format("{:<20} {:<62} {:>12.3e} {:>10.1e} {}\n", c.section, c.name,
                       c.delta, c.tolerance, c.informational ? "info" : (ok ? "PASS" : "FAIL"));
    rows.push_back({{"section", c.section},
                    {"name", c.name},
                    {"analytic", c.analytic},
                    {"oracle", c.oracle},
                    {"delta", c.delta},
                    {"tolerance", c.tolerance},
                    {"informational", c.informational},
                    {"pass", ok}});
  }
  const json report = {{"command", "oracle-check"},
                       {"config", config_json(config)},
                       {"self_test", options.self_test},
                       {"cutoff", s.cutoff},
                       {"scenarios", s.scenarios},
                       {"seed", s.seed},
                       {"tolerance_scale", s.tolerance_scale},
                       {"failures", failures},
                       {"checks", rows}};
  write_file(options.out / "oracle_check.json", dump(report));
  log << fmt::format("oracle-check: {} checks, {} failed\n", checks.size(), failures);
  return failures == 0 ? kExitOk : kExitNumerical;
}

int run_command(const std::string& name, const CommandOptions& options,
                std::ostream& log, std::ostream& err) {
  try {
    const Config config = options.config ? load_config(*options.config) : Config{};
    if (name == "qnd-sweep") return qnd_sweep_command(config, options, log);
    if (name == "clone-report") return clone_report_command(config, options, log);
    if (name == "stirap-run") return stirap_run_command(config, options, log);
    if (name == "oracle-check") return oracle_check_command(config, options, log);
    err << "unknown command '" << name << "'\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace eitcv::app
