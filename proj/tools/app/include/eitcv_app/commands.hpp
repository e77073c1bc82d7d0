#pragma once

#include "eitcv_app/config.hpp"
#include "eitcv_app/csv.hpp"
#include "eitcv_app/oracle_suite.hpp"

#include "eitcv/cloning.hpp"
#include "eitcv/qnd_storage.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eitcv::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = ".";
  std::optional<std::size_t> grid;
  std::optional<double> margin;
  std::optional<std::string> variant;  // printed | symmetrized | both
  bool self_test = false;
};

// One qnd-sweep row: theta, C1..C3 for Q then P, output spin-polariton
// variances for Q and P.
struct SweepRow {
  double theta = 0.0;
  CorrelationTriple q;
  CorrelationTriple p;
  double v_q_xi = 0.0;
  double v_p_xi = 0.0;
  QndConditions qnd;
};

std::vector<SweepRow> qnd_sweep(const AtomicMediumState& medium,
                                const SweepSettings& settings);
CsvTable sweep_table(const std::vector<SweepRow>& rows);

// Built-in media when the config defines none.
std::vector<NamedMedium> default_sweep_media();
std::vector<NamedMedium> default_clone_media();

// Each command writes its files under options.out, logs to `log`, and
// returns an exit code; domain errors propagate as exceptions and are
// mapped by run_command.
int qnd_sweep_command(const Config& config, const CommandOptions& options,
                      std::ostream& log);
int clone_report_command(const Config& config, const CommandOptions& options,
                         std::ostream& log);
int stirap_run_command(const Config& config, const CommandOptions& options,
                       std::ostream& log);
int oracle_check_command(const Config& config, const CommandOptions& options,
                         std::ostream& log);

// Loads the config, dispatches, and maps ValidationError to 2 and
// NumericalError (or any other failure) to 3.
int run_command(const std::string& name, const CommandOptions& options,
                std::ostream& log, std::ostream& err);

}  // namespace eitcv::app
