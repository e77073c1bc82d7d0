#include "eitcv_app/config.hpp"

#include "eitcv/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <initializer_list>
#include <string_view>

namespace eitcv::app {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kMediumSection = "medium";

bool is_medium_section(std::string_view name) {
  return name == kMediumSection ||
         (name.size() > kMediumSection.size() + 1 &&
          name.substr(0, kMediumSection.size() + 1) == "medium:");
}

void check_keys(const Config& section, std::string_view name,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, child] : section) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(fmt::format("unknown key '{}' in section [{}]", key, name));
    }
  }
}

void check_sections(const Config& config) {
  for (const auto& [name, child] : config) {
    if (child.empty()) {
      throw ValidationError(fmt::format("key '{}' must sit inside a section", name));
    }
    if (name == "qnd_sweep" || name == "clone" || name == "stirap" ||
        name == "oracle" || is_medium_section(name)) {
      continue;
    }
    throw ValidationError(fmt::format("unknown section [{}]", name));
  }
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ValidationError(fmt::format("'{}' = '{}' is not a finite number", key, text));
  }
  return value;
}

std::size_t parse_size(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(
        fmt::format("'{}' = '{}' is not a nonnegative integer", key, text));
  }
  return value;
}

const Config* section_of(const Config& config, const std::string& name) {
  const auto child = config.get_child_optional(name);
  return child ? &*child : nullptr;
}

}  // namespace

Config load_config(const std::filesystem::path& path) {
  Config config;
  try {
    pt::read_ini(path.string(), config);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(fmt::format("cannot read config: {}", e.what()));
  }
  check_sections(config);
  return config;
}

std::vector<std::pair<std::string, std::string>> flatten(const Config& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, child] : config) {
    for (const auto& [key, value] : child) {
      out.emplace_back(section + "." + key, value.data());
    }
  }
  return out;
}

double get_double(const Config& config, const std::string& key, double fallback) {
  const auto value = config.get_optional<std::string>(key);
  return value ? parse_double(key, *value) : fallback;
}

std::size_t get_size(const Config& config, const std::string& key,
                     std::size_t fallback) {
  const auto value = config.get_optional<std::string>(key);
  return value ? parse_size(key, *value) : fallback;
}

std::string get_string(const Config& config, const std::string& key,
                       const std::string& fallback) {
  return config.get<std::string>(key, fallback);
}

std::vector<NamedMedium> parse_media(const Config& config,
                                     std::vector<NamedMedium> defaults) {
  std::vector<NamedMedium> media;
  for (const auto& [name, section] : config) {
    if (!is_medium_section(name)) continue;
    check_keys(section, name, {"kind", "atoms", "population1", "phi", "n1", "n2"});
    const std::string label =
        name == kMediumSection ? std::string("medium") : name.substr(kMediumSection.size() + 1);
    // The name becomes part of an output file name.
    if (!std::all_of(label.begin(), label.end(), [](unsigned char c) {
          return std::isalnum(c) || c == '_' || c == '-';
        })) {
      throw ValidationError(fmt::format("medium name '{}' may only use [A-Za-z0-9_-]", label));
    }
    const std::string kind = section.get<std::string>("kind", "bec");
    AtomicMediumState medium;
    if (kind == "bec") {
      const std::size_t atoms = get_size(section, "atoms", 100);
      if (atoms == 0 || atoms > 1'000'000'000) {
        throw ValidationError("medium atoms must be in [1, 1e9]");
      }
      medium = make_bec_medium_from_population(
          static_cast<unsigned>(atoms), get_double(section, "population1", 0.3),
          get_double(section, "phi", 0.0));
    } else if (kind == "fock") {
      const std::size_t n1 = get_size(section, "n1", 0);
      const std::size_t n2 = get_size(section, "n2", 100);
      if (n1 > 1'000'000'000 || n2 > 1'000'000'000) {
        throw ValidationError("Fock occupations must be at most 1e9");
      }
      medium = make_fock_medium(static_cast<unsigned>(n1), static_cast<unsigned>(n2));
    } else if (kind == "coherent") {
      medium = CoherentMedium{};
    } else {
      throw ValidationError(fmt::format(
          "medium kind '{}' in [{}] (expected bec, fock or coherent)", kind, name));
    }
    validate(medium);
    media.push_back({label, medium});
  }
  return media.empty() ? defaults : media;
}

std::string describe(const AtomicMediumState& medium) {
  if (const auto* b = std::get_if<BecMedium>(&medium)) {
    return fmt::format("bec atoms={} population1={:.17g} phi={:.17g}", b->n_atoms,
                       b->mag1 * b->mag1, b->relative_phase());
  }
  if (const auto* f = std::get_if<FockMedium>(&medium)) {
    return fmt::format("fock n1={} n2={}", f->n1, f->n2);
  }
  return "coherent";
}

SweepSettings parse_sweep(const Config& config) {
  SweepSettings s;
  if (const Config* sec = section_of(config, "qnd_sweep")) {
    check_keys(*sec, "qnd_sweep",
               {"points", "theta_min", "theta_max", "margin", "signal_var_q",
                "signal_var_p"});
    s.points = get_size(*sec, "points", s.points);
    s.theta_min = get_double(*sec, "theta_min", s.theta_min);
    s.theta_max = get_double(*sec, "theta_max", s.theta_max);
    s.margin = get_double(*sec, "margin", s.margin);
    s.signal_var_q = get_double(*sec, "signal_var_q", s.signal_var_q);
    s.signal_var_p = get_double(*sec, "signal_var_p", s.signal_var_p);
  }
  return s;
}

CloneSettings parse_clone(const Config& config) {
  CloneSettings s;
  if (const Config* sec = section_of(config, "clone")) {
    check_keys(*sec, "clone",
               {"theta", "balance_tolerance", "signal_mean_q", "signal_mean_p",
                "grid", "grid_atoms"});
    s.theta = get_double(*sec, "theta", s.theta);
    s.balance_tolerance = get_double(*sec, "balance_tolerance", s.balance_tolerance);
    s.signal_mean_q = get_double(*sec, "signal_mean_q", s.signal_mean_q);
    s.signal_mean_p = get_double(*sec, "signal_mean_p", s.signal_mean_p);
    s.grid = get_size(*sec, "grid", s.grid);
    const std::size_t atoms = get_size(*sec, "grid_atoms", s.grid_atoms);
    if (atoms == 0 || atoms > 1'000'000'000) {
      throw ValidationError("grid_atoms must be in [1, 1e9]");
    }
    s.grid_atoms = static_cast<unsigned>(atoms);
  }
  return s;
}

std::string stirap_variant_key(const Config& config) {
  return config.get<std::string>("stirap.variant", "printed");
}

StirapRun parse_stirap(const Config& config, EquationVariant variant) {
  const StirapPreset preset = counterintuitive_preset(variant);
  StirapRun run{preset.params, preset.initial, preset.t_end, {}};
  const Config* sec = section_of(config, "stirap");
  if (sec == nullptr) return run;
  check_keys(*sec, "stirap",
             {"variant", "kappa_re", "kappa_im", "omega2_re", "omega2_im", "delta1",
              "delta2", "gamma1", "gamma2", "gamma3", "lambda11", "lambda12",
              "lambda13", "lambda22", "lambda23", "lambda33", "kappa_shape",
              "kappa_center", "kappa_width", "omega2_shape", "omega2_center",
              "omega2_width", "a1_re", "a1_im", "a2_re", "a2_im", "a3_re", "a3_im",
              "f_re", "f_im", "t0", "t_end", "rel_tol", "abs_tol", "samples",
              "adiabatic_ratio"});

  StirapParams& p = run.params;
  auto complex_key = [&](const std::string& stem, Complex fallback) {
    return Complex{get_double(*sec, stem + "_re", fallback.real()),
                   get_double(*sec, stem + "_im", fallback.imag())};
  };
  p.kappa = complex_key("kappa", p.kappa);
  p.omega2 = complex_key("omega2", p.omega2);
  p.delta1 = get_double(*sec, "delta1", p.delta1);
  p.delta2 = get_double(*sec, "delta2", p.delta2);
  for (std::size_t j = 0; j < 3; ++j) {
    p.gamma[j] = get_double(*sec, fmt::format("gamma{}", j + 1), p.gamma[j]);
    for (std::size_t k = j; k < 3; ++k) {
      const double v =
          get_double(*sec, fmt::format("lambda{}{}", j + 1, k + 1), p.lambda[j][k]);
      p.lambda[j][k] = p.lambda[k][j] = v;
    }
  }
  auto pulse = [&](const std::string& stem, PulseEnvelope fallback) {
    PulseEnvelope e = fallback;
    if (const auto shape = sec->get_optional<std::string>(stem + "_shape")) {
      e.shape = parse_pulse_shape(*shape);
    }
    e.center = get_double(*sec, stem + "_center", e.center);
    e.width = get_double(*sec, stem + "_width", e.width);
    return e;
  };
  p.kappa_pulse = pulse("kappa", p.kappa_pulse);
  p.omega2_pulse = pulse("omega2", p.omega2_pulse);

  run.initial.a1 = complex_key("a1", run.initial.a1);
  run.initial.a2 = complex_key("a2", run.initial.a2);
  run.initial.a3 = complex_key("a3", run.initial.a3);
  run.initial.f = complex_key("f", run.initial.f);
  run.initial.t = get_double(*sec, "t0", run.initial.t);
  run.t_end = get_double(*sec, "t_end", run.t_end);
  run.options.rel_tol = get_double(*sec, "rel_tol", run.options.rel_tol);
  run.options.abs_tol = get_double(*sec, "abs_tol", run.options.abs_tol);
  run.options.samples = get_size(*sec, "samples", run.options.samples);
  run.options.adiabatic_ratio =
      get_double(*sec, "adiabatic_ratio", run.options.adiabatic_ratio);
  p.validate();
  return run;
}

OracleSettings parse_oracle(const Config& config) {
  OracleSettings s;
  if (const Config* sec = section_of(config, "oracle")) {
    check_keys(*sec, "oracle", {"cutoff", "scenarios", "seed", "tolerance_scale"});
    s.cutoff = get_size(*sec, "cutoff", s.cutoff);
    s.scenarios = get_size(*sec, "scenarios", s.scenarios);
    s.seed = get_size(*sec, "seed", s.seed);
    s.tolerance_scale = get_double(*sec, "tolerance_scale", s.tolerance_scale);
  }
  return s;
}

}  // namespace eitcv::app
