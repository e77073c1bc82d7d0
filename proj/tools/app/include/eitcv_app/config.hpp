#pragma once

// INI run configuration. Every key is optional; missing keys fall back to
// the defaults documented in README.md. Values are parsed strictly and any
// malformed entry raises ValidationError.

#include "eitcv/atomic_states.hpp"
#include "eitcv/stirap.hpp"

#include <boost/property_tree/ptree.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace eitcv::app {

using Config = boost::property_tree::ptree;

Config load_config(const std::filesystem::path& path);

// "section.key" = value pairs in file order, for CSV/JSON metadata.
std::vector<std::pair<std::string, std::string>> flatten(const Config& config);

double get_double(const Config& config, const std::string& key, double fallback);
std::size_t get_size(const Config& config, const std::string& key,
                     std::size_t fallback);
std::string get_string(const Config& config, const std::string& key,
                       const std::string& fallback);

struct NamedMedium {
  std::string name;
  AtomicMediumState medium;
};

// Sections named [medium] or [medium:<name>]:
//   kind = bec | fock | coherent
//   bec:  atoms (100), population1 (|alpha1|^2), phi (phase2 - phase1)
//   fock: n1, n2
// Returns `defaults` when the config defines no medium section.
std::vector<NamedMedium> parse_media(const Config& config,
                                     std::vector<NamedMedium> defaults);

std::string describe(const AtomicMediumState& medium);

struct SweepSettings {
  std::size_t points = 201;
  double theta_min = 0.0;
  double theta_max = 1.5707963267948966;  // excluded
  double margin = 0.1;
  double signal_var_q = 1.0;
  double signal_var_p = 1.0;
};
SweepSettings parse_sweep(const Config& config);

struct CloneSettings {
  double theta = 0.7853981633974483;
  double balance_tolerance = 1e-6;
  double signal_mean_q = 0.0;
  double signal_mean_p = 0.0;
  std::size_t grid = 11;
  unsigned grid_atoms = 100;
};
CloneSettings parse_clone(const Config& config);

struct StirapRun {
  StirapParams params;
  StirapState initial;
  double t_end = 0.0;
  StirapOptions options;
};
// [stirap] section layered over counterintuitive_preset(variant).
StirapRun parse_stirap(const Config& config, EquationVariant variant);
// [stirap] variant key, "printed" if absent.
std::string stirap_variant_key(const Config& config);

struct OracleSettings {
  std::size_t cutoff = 30;
  std::size_t scenarios = 20;
  std::uint64_t seed = 20240611;
  double tolerance_scale = 1.0;
};
OracleSettings parse_oracle(const Config& config);

}  // namespace eitcv::app
