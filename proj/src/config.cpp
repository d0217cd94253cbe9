#include "chiralwg/config.hpp"

#include <cmath>

namespace chiralwg {

using nlohmann::json;

namespace {

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError("key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required key '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError("key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

LatticeSpec lattice_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("'lattice' must be an object");
  LatticeSpec spec;
  const double p = require_number(j, "p");
  if (p != std::floor(p) || p < 0) throw ConfigError("'p' must be a non-negative integer");
  spec.p = static_cast<int>(p);
  spec.V = require_number(j, "V_Hz");
  spec.t1 = require_number(j, "t1_Hz");
  spec.t2 = require_number(j, "t2_Hz");
  spec.tQ = require_number(j, "tQ_Hz");
  spec.VQ = number_or(j, "VQ_Hz", 0.0);
  spec.VM = number_or(j, "VM_Hz", 0.0);
  spec.tL = number_or(j, "tL_Hz", LatticeSpec::kUnsetCoupling);
  spec.tR = number_or(j, "tR_Hz", LatticeSpec::kUnsetCoupling);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  RunConfig cfg;
  if (j.contains("lattice")) cfg.lattice = lattice_spec_from_json(j.at("lattice"));

  if (j.contains("ports")) {
    if (!j.at("ports").is_array()) throw ConfigError("'ports' must be an array");
    for (const json& pj : j.at("ports")) {
      Port port;
      const double site = require_number(pj, "site");
      if (site != std::floor(site) || site < 1)
        throw ConfigError("port 'site' must be a positive integer (1-based)");
      port.site = static_cast<int>(site) - 1;
      port.gamma = number_or(pj, "gamma_Hz", 0.0);
      if (port.gamma < 0.0) throw ConfigError("'gamma_Hz' must be >= 0");
      cfg.ports.push_back(port);
    }
  }

  if (j.contains("sweep")) {
    const json& sj = j.at("sweep");
    SweepConfig sweep;
    const std::string kind = sj.value("kind", "");
    if (kind == "vq")
      sweep.kind = SweepConfig::Kind::Vq;
    else if (kind == "omega")
      sweep.kind = SweepConfig::Kind::Omega;
    else if (kind == "gamma")
      sweep.kind = SweepConfig::Kind::Gamma;
    else
      throw ConfigError("sweep 'kind' must be one of vq|omega|gamma");
    sweep.start = require_number(sj, "start");
    sweep.stop = require_number(sj, "stop");
    const double points = require_number(sj, "points");
    if (points != std::floor(points) || points < 1)
      throw ConfigError("sweep 'points' must be a positive integer");
    sweep.points = static_cast<int>(points);
    if (!(sweep.start <= sweep.stop)) throw ConfigError("sweep requires start <= stop");
    const std::string scale =
        sj.value("scale", sweep.kind == SweepConfig::Kind::Gamma ? "log" : "linear");
    if (scale == "log")
      sweep.log_scale = true;
    else if (scale == "linear")
      sweep.log_scale = false;
    else
      throw ConfigError("sweep 'scale' must be linear|log");
    if (sweep.log_scale && !(sweep.start > 0.0))
      throw ConfigError("log sweep requires positive endpoints");
    cfg.sweep = sweep;
  }

  if (j.contains("eta_Hz")) {
    cfg.eta = require_number(j, "eta_Hz");
    if (*cfg.eta < 0.0) throw ConfigError("'eta_Hz' must be >= 0");
  }
  if (j.contains("omega_Hz")) cfg.omega = require_number(j, "omega_Hz");

  if (j.contains("output")) {
    const json& oj = j.at("output");
    cfg.out_path = oj.value("path", "");
    cfg.format = oj.value("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json")
      throw ConfigError("output 'format' must be csv|json");
  }

  cfg.f0 = number_or(j, "f0_Hz", cfg.f0);
  cfg.l0 = number_or(j, "L0_H", cfg.l0);
  if (!(cfg.f0 > 0.0) || !(cfg.l0 > 0.0))
    throw ConfigError("'f0_Hz' and 'L0_H' must be > 0");

  if (j.contains("seed")) {
    const double seed = require_number(j, "seed");
    if (seed < 0 || seed != std::floor(seed))
      throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }

  cfg.disorder.seed = cfg.seed;
  if (j.contains("disorder")) {
    cfg.disorder_configured = true;
    const json& dj = j.at("disorder");
    cfg.disorder.sigma_rel = number_or(dj, "sigma_rel", 0.0);
    const double n = number_or(dj, "n_samples", 1);
    if (n < 1 || n != std::floor(n))
      throw ConfigError("disorder 'n_samples' must be a positive integer");
    cfg.disorder.n_samples = static_cast<int>(n);
    const std::string dist = dj.value("distribution", "gaussian");
    if (dist == "gaussian")
      cfg.disorder.distribution = DisorderDistribution::Gaussian;
    else if (dist == "uniform")
      cfg.disorder.distribution = DisorderDistribution::Uniform;
    else
      throw ConfigError("disorder 'distribution' must be gaussian|uniform");
    if (dj.contains("seed")) {
      const double seed = require_number(dj, "seed");
      if (seed < 0 || seed != std::floor(seed))
        throw ConfigError("disorder 'seed' must be a non-negative integer");
      cfg.disorder.seed = static_cast<std::uint64_t>(seed);
    }
    try {
      cfg.disorder.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  cfg.disorder.ports = cfg.ports;
  return cfg;
}

json preset_config(const std::string& name) {
  // reference parameter sets; fig1c/fig2 share the 10-cell lattice, the two
  // spice presets are the p = 4 circuit fixtures
  const json pstd = {{"p", 10},         {"V_Hz", 37.5e6}, {"t1_Hz", 120e6},
                     {"t2_Hz", 150e6},  {"tQ_Hz", 62.5e6}};
  if (name == "fig1c") {
    json j;
    j["lattice"] = pstd;
    j["lattice"]["VQ_Hz"] = -37.5e6;
    return j;
  }
  if (name == "fig2") {
    json j;
    j["lattice"] = pstd;
    j["lattice"]["VQ_Hz"] = -37.5e6;
    j["ports"] = json::array({{{"site", 1}, {"gamma_Hz", 12.5e6}},
                              {{"site", 43}, {"gamma_Hz", 12.5e6}}});
    j["sweep"] = {{"kind", "gamma"}, {"start", 12.5e6}, {"stop", 125e9},
                  {"points", 30},    {"scale", "log"}};
    j["omega_Hz"] = -37.5e6;
    j["eta_Hz"] = 0.0;
    return j;
  }
  if (name == "spice1" || name == "spice2") {
    json j;
    j["lattice"] = {{"p", 4},
                    {"V_Hz", name == "spice1" ? 37.5e6 : 15e6},
                    {"t1_Hz", name == "spice1" ? 110e6 : 60e6},
                    {"t2_Hz", name == "spice1" ? 150e6 : 48e6},
                    {"tQ_Hz", name == "spice1" ? 75e6 : 30e6},
                    {"VQ_Hz", 0.0}};
    j["f0_Hz"] = 7e9;
    j["L0_H"] = 1e-9;
    return j;
  }
  throw ConfigError("unknown preset '" + name +
                    "' (expected fig1c|fig2|spice1|spice2)");
}

json merge_configs(json base, const json& overlay) {
  if (!overlay.is_object() || !base.is_object()) return overlay;
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it->is_object())
      base[it.key()] = merge_configs(base[it.key()], *it);
    else
      base[it.key()] = *it;
  }
  return base;
}

}  // namespace chiralwg
