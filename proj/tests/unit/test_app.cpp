#include "eitcv_app/commands.hpp"
#include "eitcv_app/config.hpp"
#include "eitcv_app/csv.hpp"
#include "eitcv_app/oracle_suite.hpp"

#include "eitcv/errors.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

using namespace eitcv;
using namespace eitcv::app;
namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("eitcv_app_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-20), "-2.4999999999999999e-20");
  EXPECT_EQ(std::stod(format_double(std::numbers::pi)), std::numbers::pi);
}

TEST(CsvTable, LayoutAndColumnCheck) {
  CsvTable t({"a", "b"});
  t.add_meta("k", "v");
  t.add_row({1.0, 0.5});
  EXPECT_EQ(t.row_count(), 1u);
  EXPECT_EQ(t.str(), "# k=v\na,b\n1,0.5\n");
  EXPECT_THROW(t.add_row({1.0}), std::logic_error);
}

TEST(WriteFile, CreatesParentsAndReportsFailure) {
  TempDir dir;
  const fs::path p = dir.path() / "x" / "y" / "out.txt";
  write_file(p, "hello");
  EXPECT_EQ(slurp(p), "hello");
  write_file(dir.path() / "blocker", "file");
  EXPECT_THROW(write_file(dir.path() / "blocker" / "out.txt", "z"), ValidationError);
}

TEST(ParallelMap, OrderedResultsAndExceptions) {
  const auto squares = parallel_map(100, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(squares[i], i * i);
  EXPECT_TRUE(parallel_map(0, [](std::size_t i) { return i; }).empty());
  std::atomic<int> calls{0};
  EXPECT_THROW(parallel_map(10,
                            [&](std::size_t i) {
                              ++calls;
                              if (i == 7) throw std::runtime_error("boom");
                              return i;
                            }),
               std::runtime_error);
  EXPECT_EQ(calls.load(), 10);
}

TEST(Config, ParsesKnownSectionsAndFlattens) {
  TempDir dir;
  const fs::path p = dir.write("c.ini",
                               "[qnd_sweep]\npoints = 11\nmargin = 0.2\n"
                               "[medium:squeezed]\nkind = bec\natoms = 50\n"
                               "population1 = 0.5\nphi = 0.7853981633974483\n"
                               "[medium:number]\nkind = fock\nn1 = 2\nn2 = 98\n");
  const Config c = load_config(p);
  const SweepSettings s = parse_sweep(c);
  EXPECT_EQ(s.points, 11u);
  EXPECT_EQ(s.margin, 0.2);
  const auto media = parse_media(c, {});
  ASSERT_EQ(media.size(), 2u);
  EXPECT_EQ(media[0].name, "squeezed");
  EXPECT_EQ(std::get<BecMedium>(media[0].medium).n_atoms, 50u);
  EXPECT_EQ(std::get<FockMedium>(media[1].medium).n1, 2u);
  const auto flat = flatten(c);
  EXPECT_EQ(flat.front().first, "qnd_sweep.points");
  EXPECT_EQ(flat.front().second, "11");
}

TEST(Config, Defaults) {
  const Config empty;
  EXPECT_EQ(parse_sweep(empty).points, 201u);
  EXPECT_EQ(parse_clone(empty).grid, 11u);
  EXPECT_EQ(parse_oracle(empty).cutoff, 30u);
  EXPECT_EQ(stirap_variant_key(empty), "printed");
  EXPECT_EQ(parse_media(empty, default_sweep_media()).size(), 2u);
  const StirapRun r = parse_stirap(empty, EquationVariant::symmetrized);
  EXPECT_EQ(r.params.variant, EquationVariant::symmetrized);
  EXPECT_EQ(r.t_end, 5.0);
}

TEST(Config, StirapOverrides) {
  TempDir dir;
  const Config c = load_config(dir.write(
      "s.ini",
      "[stirap]\nkappa_re = 12\ngamma3 = 0.5\nlambda12 = 0.1\nomega2_shape = sech\n"
      "f_im = 2\nsamples = 33\nt_end = 4\n"));
  const StirapRun r = parse_stirap(c, EquationVariant::printed);
  EXPECT_EQ(r.params.kappa, Complex(12.0, 0.0));
  EXPECT_EQ(r.params.gamma[2], 0.5);
  EXPECT_EQ(r.params.lambda[1][0], 0.1);
  EXPECT_EQ(r.params.omega2_pulse.shape, PulseShape::sech);
  EXPECT_EQ(r.initial.f, Complex(10.0, 2.0));
  EXPECT_EQ(r.options.samples, 33u);
  EXPECT_EQ(r.t_end, 4.0);
}

TEST(Config, RejectsMalformedInput) {
  TempDir dir;
  EXPECT_THROW(load_config(dir.write("a.ini", "[bogus]\nx = 1\n")), ValidationError);
  EXPECT_THROW(load_config(dir.write("b.ini", "x = 1\n")), ValidationError);
  EXPECT_THROW(load_config(dir.write("c.ini", "[qnd_sweep\n")), ValidationError);
  EXPECT_THROW(load_config(dir.path() / "missing.ini"), ValidationError);
  const Config bad_number = load_config(dir.write("d.ini", "[qnd_sweep]\nmargin = 0.1x\n"));
  EXPECT_THROW(parse_sweep(bad_number), ValidationError);
  const Config nan = load_config(dir.write("e.ini", "[qnd_sweep]\nmargin = nan\n"));
  EXPECT_THROW(parse_sweep(nan), ValidationError);
  const Config neg = load_config(dir.write("f.ini", "[qnd_sweep]\npoints = -3\n"));
  EXPECT_THROW(parse_sweep(neg), ValidationError);
  const Config unknown = load_config(dir.write("g.ini", "[clone]\nthetta = 1\n"));
  EXPECT_THROW(parse_clone(unknown), ValidationError);
  const Config kind = load_config(dir.write("h.ini", "[medium:x]\nkind = plasma\n"));
  EXPECT_THROW(parse_media(kind, {}), ValidationError);
  const Config pop = load_config(dir.write("i.ini", "[medium:x]\npopulation1 = 1.5\n"));
  EXPECT_THROW(parse_media(pop, {}), ValidationError);
  const Config name = load_config(dir.write("j.ini", "[medium:../x]\nkind = coherent\n"));
  EXPECT_THROW(parse_media(name, {}), ValidationError);
  const Config gamma = load_config(dir.write("k.ini", "[stirap]\ngamma1 = -1\n"));
  EXPECT_THROW(parse_stirap(gamma, EquationVariant::printed), ValidationError);
  const Config shape = load_config(dir.write("l.ini", "[stirap]\nkappa_shape = box\n"));
  EXPECT_THROW(parse_stirap(shape, EquationVariant::printed), ValidationError);
}

TEST(Describe, Media) {
  EXPECT_EQ(describe(CoherentMedium{}), "coherent");
  EXPECT_EQ(describe(make_fock_medium(1, 2)), "fock n1=1 n2=2");
  const std::string bec = describe(make_bec_medium_from_population(10, 0.5, 0.0));
  EXPECT_EQ(bec.rfind("bec atoms=10 population1=0.5", 0), 0u);
  EXPECT_NE(bec.find(" phi=0"), std::string::npos);
}

TEST(QndSweep, GridAndRows) {
  SweepSettings s;
  s.points = 8;
  const auto rows = qnd_sweep(make_bec_medium_from_population(100, 0.5, std::numbers::pi / 4), s);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].theta, 0.0);
  EXPECT_EQ(rows[0].q.c1, 1.0);
  EXPECT_EQ(rows[0].q.c2, 0.0);
  EXPECT_NEAR(rows[2].theta, std::numbers::pi / 8, 1e-15);
  EXPECT_NEAR(rows[4].q.c1, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rows[4].v_q_xi, 0.75, 1e-12);
  EXPECT_EQ(sweep_table(rows).row_count(), 8u);
}

TEST(QndSweep, ValidatesSettings) {
  const AtomicMediumState m = CoherentMedium{};
  SweepSettings s;
  s.points = 0;
  EXPECT_THROW(qnd_sweep(m, s), ValidationError);
  s = {};
  s.theta_max = 2.0;
  EXPECT_THROW(qnd_sweep(m, s), ValidationError);
  s = {};
  s.theta_min = 1.0;
  s.theta_max = 0.5;
  EXPECT_THROW(qnd_sweep(m, s), ValidationError);
  s = {};
  s.margin = 0.0;
  EXPECT_THROW(qnd_sweep(m, s), ValidationError);
  s = {};
  s.signal_var_q = -1.0;
  EXPECT_THROW(qnd_sweep(m, s), ValidationError);
}

TEST(Commands, ExitCodesAndFiles) {
  TempDir dir;
  std::ostringstream log, err;
  CommandOptions o;
  o.out = dir.path() / "out";
  o.grid = 5;
  EXPECT_EQ(run_command("qnd-sweep", o, log, err), kExitOk);
  EXPECT_TRUE(fs::exists(o.out / "qnd_sweep_bec_phi_pi4.csv"));
  EXPECT_TRUE(fs::exists(o.out / "qnd_sweep_bec_phi_0.csv"));
  o.grid = 3;
  EXPECT_EQ(run_command("clone-report", o, log, err), kExitOk);
  EXPECT_TRUE(fs::exists(o.out / "clone_report.json"));
  EXPECT_NE(slurp(o.out / "clone_report.json").find("\"fidelity_quoted\": 0.8"),
            std::string::npos);
  o.grid = 1;
  EXPECT_EQ(run_command("clone-report", o, log, err), kExitValidation);
  o.grid.reset();
  o.variant = "both";
  EXPECT_EQ(run_command("stirap-run", o, log, err), kExitOk);
  EXPECT_TRUE(fs::exists(o.out / "stirap_printed.csv"));
  EXPECT_TRUE(fs::exists(o.out / "stirap_symmetrized.csv"));
  EXPECT_NE(slurp(o.out / "stirap_summary.json").find("comparison"), std::string::npos);
  o.variant = "neither";
  EXPECT_EQ(run_command("stirap-run", o, log, err), kExitValidation);
  EXPECT_EQ(run_command("not-a-command", o, log, err), kExitValidation);
  o.config = dir.path() / "nope.ini";
  EXPECT_EQ(run_command("qnd-sweep", o, log, err), kExitValidation);
}

TEST(Commands, SweepCsvHasMetadataAndHeader) {
  TempDir dir;
  const fs::path cfg = dir.write("s.ini", "[qnd_sweep]\npoints = 4\n[medium:m]\nkind = coherent\n");
  std::ostringstream log, err;
  CommandOptions o;
  o.config = cfg;
  o.out = dir.path();
  ASSERT_EQ(run_command("qnd-sweep", o, log, err), kExitOk) << err.str();
  const std::string csv = slurp(dir.path() / "qnd_sweep_m.csv");
  EXPECT_EQ(csv.rfind("# command=qnd-sweep\n", 0), 0u);
  EXPECT_NE(csv.find("# config.qnd_sweep.points=4\n"), std::string::npos);
  EXPECT_NE(csv.find("\ntheta,C1_Q,C2_Q,C3_Q,C1_P,C2_P,C3_P,V_Q_xi,V_P_xi\n"), std::string::npos);
}

TEST(OracleSuite, SmallRunPasses) {
  OracleSettings s;
  s.scenarios = 3;
  for (const auto& section : {engine_equivalence_checks(s), fock_medium_checks(s)}) {
    ASSERT_FALSE(section.empty());
    for (const OracleCheck& c : section) EXPECT_TRUE(c.pass()) << c.section << " " << c.name;
  }
  OracleSettings zero = s;
  zero.tolerance_scale = 0.0;
  const auto strict = engine_equivalence_checks(zero);
  EXPECT_FALSE(strict.front().pass());
}

TEST(OracleCheckRow, InformationalNeverFails) {
  OracleCheck c;
  c.delta = 1.0;
  c.tolerance = 0.1;
  EXPECT_FALSE(c.pass());
  c.informational = true;
  EXPECT_TRUE(c.pass());
}

}  // namespace
