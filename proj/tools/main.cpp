#include "eitcv_app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace eitcv::app;

  CLI::App app{"Quantum storage and cloning of optical continuous variables in an EIT medium"};
  app.require_subcommand(1);

  CommandOptions options;
  std::string config_path;
  std::string out_path;
  std::size_t grid = 0;
  double margin = 0.0;
  std::string variant;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_path, "output directory (default: current directory)");
  };

  CLI::App* sweep = app.add_subcommand("qnd-sweep", "correlation coefficients versus theta");
  add_common(sweep);
  sweep->add_option("--grid", grid, "number of theta points")->check(CLI::PositiveNumber);
  sweep->add_option("--margin", margin, "QND condition margin in (0, 1]");

  CLI::App* clone = app.add_subcommand("clone-report", "cloning report and (|alpha1|^2, phi) grid");
  add_common(clone);
  clone->add_option("--grid", grid, "grid points per axis")->check(CLI::PositiveNumber);

  CLI::App* stirap = app.add_subcommand("stirap-run", "integrate the photoassociation mean-field equations");
  add_common(stirap);
  stirap->add_option("--variant", variant, "equation variant")
      ->check(CLI::IsMember({"printed", "symmetrized", "both"}));

  CLI::App* oracle = app.add_subcommand("oracle-check", "analytic results against the Fock-space oracle");
  add_common(oracle);
  oracle->add_flag("--self-test", options.self_test,
                   "corrupt every tolerance; the run must then exit with code 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (!config_path.empty()) options.config = config_path;
  if (!out_path.empty()) options.out = out_path;
  for (CLI::App* cmd : {sweep, clone}) {
    if (cmd->parsed() && cmd->count("--grid") > 0) options.grid = grid;
  }
  if (sweep->parsed() && sweep->count("--margin") > 0) options.margin = margin;
  if (stirap->parsed() && stirap->count("--variant") > 0) options.variant = variant;

  const std::string name = app.get_subcommands().front()->get_name();
  return run_command(name, options, std::cout, std::cerr);
}
