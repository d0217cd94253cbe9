// chiralwg — spectra, Green's-function transport, circuit synthesis and
// disorder statistics for qubit-controlled Rice-Mele Y-couplers.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiralwg/analytic.hpp"
#include "chiralwg/config.hpp"
#include "chiralwg/cqed.hpp"
#include "chiralwg/disorder.hpp"
#include "chiralwg/io.hpp"
#include "chiralwg/spectra.hpp"
#include "chiralwg/transport.hpp"
#include "chiralwg/verify.hpp"

namespace {

using namespace chiralwg;
using nlohmann::json;

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON configuration file");
  cmd->add_option("--preset", args.preset,
                  "built-in configuration: fig1c|fig2|spice1|spice2");
  cmd->add_option("--out", args.out_path, "output file path");
}

RunConfig load_config(const CommonArgs& args) {
  json j = json::object();
  if (!args.preset.empty()) j = preset_config(args.preset);
  if (!args.config_path.empty()) {
    json user;
    try {
      user = json::parse(read_text_file(args.config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    j = merge_configs(j, user);
  }
  if (j.empty()) throw ConfigError("provide --config and/or --preset");
  if (!j.contains("lattice")) throw ConfigError("config needs a 'lattice' object");
  RunConfig cfg = run_config_from_json(j);
  if (!args.out_path.empty()) cfg.out_path = args.out_path;
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out_path.empty())
    std::cout << content;
  else
    write_text_file(cfg.out_path, content);
}

std::string json_number(double v) {
  return std::isfinite(v) ? format_full(v) : ('"' + format_full(v) + '"');
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const CommonArgs& args) {
  const RunConfig cfg = load_config(args);
  const Spectrum s = eigendecompose(build_y_coupler(cfg.lattice));
  const GapReport gaps = find_gap_states(s, cfg.lattice);

  std::ostringstream csv;
  csv << "eig_index,E_Hz,in_gap_flag\n";
  for (int k = 0; k < s.eigenvalues.size(); ++k) {
    const bool in_gap = std::any_of(gaps.in_gap.begin(), gaps.in_gap.end(),
                                    [&](const GapState& g) { return g.index == k; });
    csv << k << ',' << format_full(s.eigenvalues[k]) << ',' << (in_gap ? 1 : 0)
        << '\n';
  }
  emit(cfg, csv.str());

  std::cerr << "band gap: [" << format_full(gaps.gap_lower) << ", "
            << format_full(gaps.gap_upper) << "] Hz; " << gaps.in_gap.size()
            << " gap state(s)";
  for (const GapState& g : gaps.in_gap)
    std::cerr << "  E=" << format_full(g.energy) << " (index " << g.index << ")";
  std::cerr << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig cfg = load_config(args);
  if (!cfg.sweep || cfg.sweep->kind != SweepConfig::Kind::Vq)
    throw ConfigError("sweep command needs a 'sweep' object with kind=vq");
  const Vector grid = cfg.sweep->log_scale
                          ? logspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points)
                          : linspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points);
  const auto table = sweep_vq(cfg.lattice, grid);

  std::ostringstream csv;
  csv << "VQ_Hz,eig_index,E_Hz,in_gap_flag\n";
  for (const VqSweepPoint& point : table) {
    for (int k = 0; k < point.spectrum.eigenvalues.size(); ++k) {
      const bool in_gap =
          std::any_of(point.gaps.in_gap.begin(), point.gaps.in_gap.end(),
                      [&](const GapState& g) { return g.index == k; });
      csv << format_full(point.vq) << ',' << k << ','
          << format_full(point.spectrum.eigenvalues[k]) << ',' << (in_gap ? 1 : 0)
          << '\n';
    }
  }
  emit(cfg, csv.str());
  return 0;
}

void transport_row(std::ostringstream& csv, double x, const ScatterResult& r) {
  csv << format_full(x) << ',' << format_full(r.s(0, 0).real()) << ','
      << format_full(r.s(0, 0).imag()) << ',' << format_full(r.s(1, 1).real())
      << ',' << format_full(r.s(1, 1).imag()) << ','
      << format_full(r.s(1, 0).real()) << ',' << format_full(r.s(1, 0).imag())
      << ',' << format_full(r.chirality);
  for (int i = 0; i < r.ldos.size(); ++i) csv << ',' << format_full(r.ldos[i]);
  csv << '\n';
}

int cmd_transport(const CommonArgs& args, std::optional<double> gamma_over_2pi) {
  RunConfig cfg = load_config(args);
  if (gamma_over_2pi) {
    cfg.ports = {{0, *gamma_over_2pi},
                 {cfg.lattice.n_chain_sites() - 1, *gamma_over_2pi}};
  }
  if (cfg.ports.size() < 2)
    throw ConfigError("transport requires two ports (or --gamma-over-2pi)");
  const SiteGraph g = build_y_coupler(cfg.lattice);
  const double eta = cfg.eta.value_or(default_eta(cfg.lattice));

  std::ostringstream csv;
  const int n = g.n_sites();
  auto header = [&](const char* xname) {
    csv << xname << ",Re_S11,Im_S11,Re_SNN,Im_SNN,Re_SN1,Im_SN1,chirality";
    for (int i = 1; i <= n; ++i) csv << ",ldos_" << i;
    csv << '\n';
  };

  if (cfg.sweep && cfg.sweep->kind == SweepConfig::Kind::Gamma) {
    if (!cfg.omega)
      throw ConfigError("gamma sweep needs 'omega_Hz' (probe frequency)");
    const Vector grid = cfg.sweep->log_scale
                            ? logspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points)
                            : linspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points);
    header("gamma_Hz");
    for (int k = 0; k < grid.size(); ++k) {
      PortSet ports = cfg.ports;
      for (Port& p : ports) p.gamma = grid[k];
      const EffectiveHamiltonian h = attach_ports(g, ports);
      const auto rows = frequency_sweep(h, Vector::Constant(1, *cfg.omega), eta);
      transport_row(csv, grid[k], rows[0]);
    }
  } else {
    Vector grid;
    if (cfg.sweep) {
      grid = cfg.sweep->log_scale
                 ? logspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points)
                 : linspaced(cfg.sweep->start, cfg.sweep->stop, cfg.sweep->points);
    } else if (cfg.omega) {
      grid = Vector::Constant(1, *cfg.omega);
    } else {
      throw ConfigError("transport needs a sweep or a single 'omega_Hz'");
    }
    header("omega_Hz");
    const EffectiveHamiltonian h = attach_ports(g, cfg.ports);
    const auto rows = frequency_sweep(h, grid, eta);
    for (const ScatterResult& r : rows) transport_row(csv, r.omega, r);
  }
  emit(cfg, csv.str());

  if (cfg.omega && !cfg.sweep) {
    const EffectiveHamiltonian h = attach_ports(g, cfg.ports);
    const auto rows = frequency_sweep(h, Vector::Constant(1, *cfg.omega), eta);
    std::cerr << "S11 = " << format_full(rows[0].s(0, 0).real()) << " + "
              << format_full(rows[0].s(0, 0).imag()) << "i\n";
  }
  return 0;
}

int cmd_verify_analytic(const CommonArgs& args, double tolerance) {
  const RunConfig cfg = load_config(args);
  std::vector<int> ps = {1, 2, 4};
  if (std::find(ps.begin(), ps.end(), cfg.lattice.p) == ps.end())
    ps.push_back(cfg.lattice.p);
  double gamma1 = 250e6, gamma_n = 250e6;
  if (cfg.ports.size() >= 2) {
    gamma1 = cfg.ports[0].gamma;
    gamma_n = cfg.ports[1].gamma;
  }
  const double eta = cfg.eta.value_or(1e-6 * cfg.lattice.t2);
  const EquivalenceReport rep =
      analytic_equivalence(cfg.lattice, ps, 40, gamma1, gamma_n, eta, cfg.seed);
  std::cout << "max relative deviation, closed form vs dense inversion\n"
            << "  bare chain GF:    " << format_full(rep.max_dev_bare) << '\n'
            << "  dressed chain GF: " << format_full(rep.max_dev_dressed) << '\n'
            << "  central block:    " << format_full(rep.max_dev_central) << '\n'
            << "  S-parameters:     " << format_full(rep.max_dev_s) << '\n'
            << (rep.pass(tolerance) ? "OK" : "FAIL") << " (tolerance "
            << format_full(tolerance) << ")\n";
  return rep.pass(tolerance) ? 0 : 1;
}

int cmd_circuit(const CommonArgs& args, std::optional<double> f0_cli,
                std::optional<double> l0_cli, bool verify,
                const std::string& mode, const std::string& report_path,
                const std::string& trace_path) {
  RunConfig cfg = load_config(args);
  if (f0_cli) cfg.f0 = *f0_cli;
  if (l0_cli) cfg.l0 = *l0_cli;
  const SiteGraph g = build_y_coupler(cfg.lattice);
  auto [netlist, report] = synthesize_circuit(g, cfg.f0, cfg.l0);

  // with --verify the exported netlist carries the measurement ports that
  // the AC sweep actually probes
  const int node_in = 1;
  const int node_out = cfg.lattice.n_chain_sites();  // chain end, qubit excluded
  Netlist probed =
      mode == "matched"
          ? with_measurement_ports(netlist, node_in, node_out, 20e-15, 50.0)
          : with_measurement_ports(netlist, node_in, node_out, 0.0, 10e9);

  const std::string netlist_path =
      cfg.out_path.empty() ? "netlist.cir" : cfg.out_path;
  write_text_file(netlist_path, export_netlist(verify ? probed : netlist));

  json rj;
  rj["f0_Hz"] = cfg.f0;
  rj["L0_H"] = cfg.l0;
  rj["max_rel_deviation"] = report.max_rel_deviation;
  rj["c_total_F"] = std::vector<double>(report.c_total.begin(), report.c_total.end());
  rj["c_ground_F"] = std::vector<double>(report.c_ground.begin(), report.c_ground.end());
  json caps = json::array();
  for (const auto& [i, j2, c] : report.coupling_caps)
    caps.push_back({{"site_a", i + 1}, {"site_b", j2 + 1}, {"C_F", c}});
  rj["coupling_caps"] = caps;
  json flags = json::array();
  for (const auto& [i, j2, r] : report.large_ratio_flags)
    flags.push_back({{"site_a", i + 1}, {"site_b", j2 + 1}, {"ratio", r}});
  rj["large_ratio_flags"] = flags;
  rj["achieved_onsite_Hz"] = std::vector<double>(report.achieved_onsite.begin(),
                                                 report.achieved_onsite.end());
  write_text_file(report_path.empty() ? netlist_path + ".report.json" : report_path,
                  rj.dump(2) + "\n");

  double max_c = 0.0;
  for (const auto& [i, j2, c] : report.coupling_caps) max_c = std::max(max_c, c);
  std::cerr << "synthesized " << netlist.n_nodes << " resonators; max coupling "
            << format_full(max_c * 1e15) << " fF, min resonator "
            << format_full(report.c_ground.minCoeff() * 1e15) << " fF\n";

  if (!verify) return 0;

  const double span = 2.5 * (cfg.lattice.t1 + cfg.lattice.t2);
  const int points = static_cast<int>(std::round(2.0 * span / 10e3)) + 1;
  const Vector grid = linspaced(cfg.f0 - span, cfg.f0 + span, points);
  const std::vector<double> peaks = find_peaks_refined(probed, grid);

  const Spectrum s = eigendecompose(g);
  double max_dev = 0.0;
  for (int k = 0; k < s.eigenvalues.size(); ++k) {
    const double ideal = cfg.f0 + s.eigenvalues[k];
    double best = std::numeric_limits<double>::infinity();
    for (double pk : peaks) best = std::min(best, std::abs(pk - ideal));
    max_dev = std::max(max_dev, best);
  }
  std::cerr << "AC verification (" << mode << "): " << peaks.size()
            << " peaks, ideal modes " << s.eigenvalues.size()
            << ", max |peak - (f0 + E)| = " << format_full(max_dev) << " Hz\n";

  if (!trace_path.empty()) {
    const AcTrace trace = ac_nodal_solve(probed, grid);
    std::ostringstream csv;
    csv << "f_Hz,Re_S21,Im_S21,abs_S21_dB\n";
    for (int k = 0; k < trace.freq.size(); ++k) {
      const double mag = std::abs(trace.s21[k]);
      csv << format_full(trace.freq[k]) << ',' << format_full(trace.s21[k].real())
          << ',' << format_full(trace.s21[k].imag()) << ','
          << format_full(20.0 * std::log10(std::max(mag, 1e-300))) << '\n';
    }
    write_text_file(trace_path, csv.str());
  }
  return 0;
}

int cmd_disorder(const CommonArgs& args, const std::string& samples_path) {
  const RunConfig cfg = load_config(args);
  if (!cfg.disorder_configured)
    throw ConfigError("disorder command needs a 'disorder' object");
  const DisorderReport rep = mc_chirality(cfg.lattice, cfg.disorder);

  std::ostringstream out;
  out << "{\n"
      << "  \"mean\": " << json_number(rep.mean) << ",\n"
      << "  \"std\": " << json_number(rep.stddev) << ",\n"
      << "  \"median\": " << json_number(rep.median) << ",\n"
      << "  \"q05\": " << json_number(rep.q05) << ",\n"
      << "  \"q95\": " << json_number(rep.q95) << ",\n"
      << "  \"n_infinite\": " << rep.n_infinite << ",\n"
      << "  \"n_samples\": " << rep.n_samples << ",\n"
      << "  \"seed\": " << rep.seed << "\n"
      << "}\n";
  emit(cfg, out.str());

  if (!samples_path.empty()) {
    std::ostringstream csv;
    csv << "sample_index,chi\n";
    for (size_t i = 0; i < rep.chis.size(); ++i)
      csv << i << ',' << format_full(rep.chis[i]) << '\n';
    write_text_file(samples_path, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubit-controlled directional edge states in Rice-Mele waveguides"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, sweep_args, transport_args, verify_args,
      circuit_args, disorder_args;

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and gap states");
  add_common(spectrum, spectrum_args);

  CLI::App* sweep = app.add_subcommand("sweep", "qubit-potential sweep of the spectrum");
  add_common(sweep, sweep_args);

  CLI::App* transport = app.add_subcommand("transport", "S-parameters, LDOS and chirality");
  add_common(transport, transport_args);
  std::optional<double> gamma_over_2pi;
  transport->add_option("--gamma-over-2pi", gamma_over_2pi,
                        "attach equal ports at both chain ends (value in Hz, "
                        "quoted as Gamma/2pi)");

  CLI::App* verify = app.add_subcommand("verify-analytic",
                                        "closed-form GF stack vs dense inversion");
  add_common(verify, verify_args);
  double tolerance = 1e-6;
  verify->add_option("--tolerance", tolerance, "maximum relative deviation");

  CLI::App* circuit = app.add_subcommand("circuit", "LC-circuit synthesis and AC verification");
  add_common(circuit, circuit_args);
  circuit->allow_extras();  // tolerate a trailing 'synth' action word
  std::optional<double> f0_cli, l0_cli;
  bool do_verify = false;
  std::string mode = "highz", report_path, trace_path;
  circuit->add_option("--f0", f0_cli, "resonator offset frequency in Hz");
  circuit->add_option("--L0", l0_cli, "common inductance in H");
  circuit->add_flag("--verify", do_verify, "run the AC nodal sweep");
  circuit->add_option("--mode", mode, "probing mode: highz (10 GOhm) or matched (50 Ohm + 20 fF)")
      ->check(CLI::IsMember({"highz", "matched"}));
  circuit->add_option("--report", report_path, "synthesis report JSON path");
  circuit->add_option("--trace", trace_path, "AC trace CSV path (with --verify)");

  CLI::App* disorder = app.add_subcommand("disorder", "Monte-Carlo chirality statistics");
  add_common(disorder, disorder_args);
  std::string samples_path;
  disorder->add_option("--samples-out", samples_path, "raw per-sample CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (transport->parsed()) return cmd_transport(transport_args, gamma_over_2pi);
    if (verify->parsed()) return cmd_verify_analytic(verify_args, tolerance);
    if (circuit->parsed())
      return cmd_circuit(circuit_args, f0_cli, l0_cli, do_verify, mode,
                         report_path, trace_path);
    if (disorder->parsed()) return cmd_disorder(disorder_args, samples_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
