#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "chiralwg/disorder.hpp"
#include "chiralwg/lattice.hpp"

namespace chiralwg {

/// Raised for malformed configuration; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lattice keys: {p, V_Hz, t1_Hz, t2_Hz, tQ_Hz, VQ_Hz, VM_Hz, tL_Hz, tR_Hz};
/// missing tL/tR default to t1, missing VM defaults to 0.
LatticeSpec lattice_spec_from_json(const nlohmann::json& j);

struct SweepConfig {
  enum class Kind { Vq, Omega, Gamma };
  Kind kind = Kind::Omega;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  bool log_scale = false;
};

struct RunConfig {
  LatticeSpec lattice;
  PortSet ports;  ///< sites are 1-based in JSON, converted to 0-based here
  std::optional<SweepConfig> sweep;
  std::optional<double> eta;    ///< defaults to default_eta(lattice)
  std::optional<double> omega;  ///< probe frequency for gamma sweeps
  std::string out_path;
  std::string format = "csv";

  double f0 = 7e9;   ///< circuit synthesis offset
  double l0 = 1e-9;  ///< circuit synthesis inductance

  DisorderConfig disorder;
  bool disorder_configured = false;
  std::uint64_t seed = 12345;
};

RunConfig run_config_from_json(const nlohmann::json& j);

/// Built-in figure-reproduction configs: fig1c, fig2, spice1, spice2.
nlohmann::json preset_config(const std::string& name);

/// Preset (when named) deep-merged with the user config; user keys win.
nlohmann::json merge_configs(nlohmann::json base, const nlohmann::json& overlay);

}  // namespace chiralwg
