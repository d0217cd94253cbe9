// Acceptance suite: one line per criterion, exit code = number of failures.
// Run with no arguments for all criteria, or with a single criterion number.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "chiralwg/analytic.hpp"
#include "chiralwg/cqed.hpp"
#include "chiralwg/disorder.hpp"
#include "chiralwg/io.hpp"
#include "chiralwg/spectra.hpp"
#include "chiralwg/transport.hpp"
#include "chiralwg/verify.hpp"

using namespace chiralwg;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& name,
            const std::string& detail) {
  std::printf("[%2d] %s %s: %s\n", number, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

LatticeSpec pstd(double vq = -37.5e6) {
  LatticeSpec s;
  s.p = 10;
  s.V = 37.5e6;
  s.t1 = 120e6;
  s.t2 = 150e6;
  s.tQ = 62.5e6;
  s.VQ = vq;
  return s;
}

LatticeSpec cq(int which) {
  LatticeSpec s;
  s.p = 4;
  s.V = which == 1 ? 37.5e6 : 15e6;
  s.t1 = which == 1 ? 110e6 : 60e6;
  s.t2 = which == 1 ? 150e6 : 48e6;
  s.tQ = which == 1 ? 75e6 : 30e6;
  s.VQ = 0.0;
  return s;
}

EffectiveHamiltonian ported(const LatticeSpec& spec, double gamma) {
  return attach_ports(build_y_coupler(spec),
                      {{0, gamma}, {spec.n_chain_sites() - 1, gamma}});
}

// --------------------------------------------------------------------------

void criterion_1() {
  bool pass = true;
  std::string detail;
  for (double sign : {-1.0, +1.0}) {
    const LatticeSpec spec = pstd(sign * 37.5e6);
    const SiteGraph g = build_y_coupler(spec);
    const Spectrum s = eigendecompose(g);
    int k = -1;
    (s.eigenvalues.array() - spec.VQ).abs().minCoeff(&k);
    const double de = std::abs(s.eigenvalues[k] - spec.VQ);
    const Vector p = occupation(s.eigenvectors.col(k));
    double wrong_side = p[g.central];
    if (sign < 0)
      for (int i = g.central + 1; i < spec.n_chain_sites(); ++i) wrong_side += p[i];
    else
      for (int i = 0; i < g.central; ++i) wrong_side += p[i];
    pass = pass && de < 1e-3 && wrong_side < 1e-18;
    detail += (sign < 0 ? "VQ=-V: " : " VQ=+V: ") + std::string("|dE|=") +
              format_full(de) + " Hz, wrong-side occ=" + format_full(wrong_side);
  }
  report(1, pass, "exact chirality of the clean edge state", detail);
}

void criterion_2() {
  LatticeSpec spec = pstd(0.0);
  spec.p = 0;
  // anticrossing: minimum middle-branch splitting across the sweep
  const Vector grid = linspaced(-2.0 * spec.V, 2.0 * spec.V, 81);
  const auto table = sweep_vq(spec, grid);
  double min_split = 1e300, at_vq = 0.0;
  for (const VqSweepPoint& pt : table) {
    const double split = pt.spectrum.eigenvalues[2] - pt.spectrum.eigenvalues[1];
    if (split < min_split) {
      min_split = split;
      at_vq = pt.vq;
    }
  }
  const double formula = 2.0 * four_site_gap(spec.V, spec.t1, spec.tQ);
  const bool gap_ok = std::abs(at_vq) < 2.0 * spec.V / 40.0 &&
                      std::abs(formula - min_split) < 0.10 * min_split;

  // band asymptotes measured far from the anticrossing
  bool asym_ok = true;
  double worst = 0.0;
  for (double vq : {-20.0 * spec.V, 20.0 * spec.V}) {
    LatticeSpec far = spec;
    far.VQ = vq;
    const Vector e = eigendecompose(build_y_coupler(far)).eigenvalues;
    int qubit_level = -1;
    (e.array() - vq).abs().minCoeff(&qubit_level);
    for (int k = 0; k < e.size(); ++k) {
      if (k == qubit_level || std::abs(e[k]) < spec.V) continue;
      const double rel =
          std::abs(std::abs(e[k]) - std::numbers::sqrt2 * spec.t1) /
          (std::numbers::sqrt2 * spec.t1);
      worst = std::max(worst, rel);
      asym_ok = asym_ok && rel < 0.05;
    }
  }
  report(2, gap_ok && asym_ok, "four-site spectrum features",
         "anticrossing at VQ=" + format_full(at_vq) + ", splitting " +
             format_full(min_split) + " vs formula " + format_full(formula) +
             "; worst band asymptote deviation " + format_full(worst));
}

void criterion_3() {
  const LatticeSpec spec = pstd(-37.5e6);
  const double wf = w_f_approx(spec.t1, spec.t2, spec.p);
  bool pass = true;
  std::string detail;
  for (double gamma : {12.5e6, 250e6, 1.25e9}) {
    const EffectiveHamiltonian h = ported(spec, gamma);
    const ComplexMatrix s = s_matrix(greens_function(h, -spec.V, 0.0), h.ports);
    const EdgeReflectance closed =
        edge_reflectance_closed_form(spec.V, gamma, wf);
    const double d11 = std::abs(s(0, 0) - Complex(-1.0, 0.0));
    const double dn1 = std::abs(s(1, 0));
    const double dnn = std::abs(s(1, 1) - closed.opposite);
    pass = pass && d11 < 1e-6 && dn1 < 1e-8 && dnn < 1e-2;
    detail += "G=" + format_full(gamma) + ": |S11+1|=" + format_full(d11) +
              " |SN1|=" + format_full(dn1) + " |SNN-closed|=" + format_full(dnn) +
              "  ";
  }
  report(3, pass, "scattering fixed points at the edge state", detail);
}

void criterion_4() {
  const LatticeSpec spec = pstd(-37.5e6);
  const Vector gammas = logspaced(12.5e6, 125e9, 30);
  std::vector<double> chi;
  for (int k = 0; k < gammas.size(); ++k) {
    const EffectiveHamiltonian h = ported(spec, gammas[k]);
    const Vector rho = ldos(greens_function(h, -spec.V, 0.0));
    chi.push_back(chirality_from_ldos(rho, h.central, h.qubit));
  }
  bool monotone = true;
  for (size_t k = 1; k < chi.size(); ++k)
    monotone = monotone && chi[k] <= chi[k - 1] * 1.001;
  const double early = std::log(chi[0] / chi[4]) / std::log(gammas[4] / gammas[0]);
  const double late = std::log(chi[24] / chi[29]) / std::log(gammas[29] / gammas[24]);
  const bool shape = early > 1.5 && late < 1.0;
  report(4, monotone && shape, "port-sweep chirality trend",
         "monotone=" + std::string(monotone ? "yes" : "no") +
             ", early log-slope " + format_full(-early) + ", late log-slope " +
             format_full(-late) + ", chi range [" + format_full(chi.back()) +
             ", " + format_full(chi.front()) + "]");
}

void criterion_5() {
  const LatticeSpec spec = pstd(-37.5e6);
  const EquivalenceReport rep = analytic_equivalence(
      spec, {1, 2, 4}, 40, 250e6, 250e6, 1e-6 * spec.t2, 20260810);
  report(5, rep.pass(1e-6), "analytic/numeric Green's-function equivalence",
         "max rel deviations: bare " + format_full(rep.max_dev_bare) +
             ", dressed " + format_full(rep.max_dev_dressed) + ", central " +
             format_full(rep.max_dev_central) + ", S " +
             format_full(rep.max_dev_s));
}

void criterion_6() {
  const LatticeSpec spec = pstd(-37.5e6);
  const EffectiveHamiltonian h = ported(spec, 250e6);
  const Vector grid = linspaced(-650e6, 650e6, 200);
  double worst_flux = 0.0, worst_recip = 0.0;
  for (const ScatterResult& r : frequency_sweep(h, grid, 0.0)) {
    worst_flux = std::max(
        worst_flux, std::abs(std::norm(r.s(0, 0)) + std::norm(r.s(1, 0)) - 1.0));
    worst_recip = std::max(worst_recip, std::abs(r.s(0, 1) - r.s(1, 0)));
  }
  report(6, worst_flux < 1e-6 && worst_recip < 1e-12,
         "scattering unitarity and reciprocity",
         "max ||S11|^2+|SN1|^2 - 1| = " + format_full(worst_flux) +
             ", max |S1N - SN1| = " + format_full(worst_recip));
}

void criterion_7() {
  const LatticeSpec spec = pstd(-37.5e6);
  const double gamma = 250e6;
  const EffectiveHamiltonian h = ported(spec, gamma);
  const Vector grid = linspaced(-650e6, 650e6, 200);
  double worst = 0.0;
  for (const ScatterResult& r : frequency_sweep(h, grid, 0.0)) {
    const double via_s =
        ((1.0 - r.s(0, 0)) / (2.0 * std::numbers::pi * gamma)).real();
    worst = std::max(worst, std::abs(r.ldos[0] - via_s));
  }
  report(7, worst < 1e-10, "LDOS consistency with S11",
         "max |rho_1 - Re((1-S11)/(2 pi Gamma))| = " + format_full(worst));
}

void criterion_8() {
  bool pass = true;
  std::string detail;
  const double targets[2][2] = {{22e-15, 467e-15}, {9e-15, 497e-15}};
  for (int which : {1, 2}) {
    const auto [nl, rep] =
        synthesize_circuit(build_y_coupler(cq(which)), 7e9, 1e-9);
    double max_c = 0.0;
    for (const auto& [i, j, c] : rep.coupling_caps) max_c = std::max(max_c, c);
    const double min_res = rep.c_ground.minCoeff();
    const double dev_c = std::abs(max_c - targets[which - 1][0]) / targets[which - 1][0];
    const double dev_r = std::abs(min_res - targets[which - 1][1]) / targets[which - 1][1];
    pass = pass && dev_c < 0.15 && dev_r < 0.15;
    detail += "CQ" + std::to_string(which) + ": coupling " +
              format_full(max_c * 1e15) + " fF, resonator " +
              format_full(min_res * 1e15) + " fF  ";
  }
  report(8, pass, "circuit synthesis capacitance targets", detail);
}

void criterion_9() {
  double max_dev[2] = {0.0, 0.0};
  int peak_count[2] = {0, 0};
  for (int which : {1, 2}) {
    const LatticeSpec spec = cq(which);
    const SiteGraph g = build_y_coupler(spec);
    const auto [plain, rep] = synthesize_circuit(g, 7e9, 1e-9);
    const Netlist probedz =
        with_measurement_ports(plain, 1, spec.n_chain_sites(), 0.0, 10e9);
    const double span = 2.5 * (spec.t1 + spec.t2);
    const int points = static_cast<int>(std::round(2.0 * span / 10e3)) + 1;
    const Vector grid = linspaced(7e9 - span, 7e9 + span, points);
    const std::vector<double> peaks = find_peaks_refined(probedz, grid);
    peak_count[which - 1] = static_cast<int>(peaks.size());
    const Vector eigs = eigendecompose(g).eigenvalues;
    for (int k = 0; k < eigs.size(); ++k) {
      double best = 1e300;
      for (double pk : peaks) best = std::min(best, std::abs(pk - (7e9 + eigs[k])));
      max_dev[which - 1] = std::max(max_dev[which - 1], best);
    }
  }
  const bool pass = peak_count[1] == 20 && max_dev[1] < max_dev[0];
  report(9, pass, "peak convergence of the circuit implementation",
         "CQ1: " + std::to_string(peak_count[0]) + " peaks, max dev " +
             format_full(max_dev[0]) + " Hz; CQ2: " +
             std::to_string(peak_count[1]) + " peaks, max dev " +
             format_full(max_dev[1]) + " Hz (must be smaller)");
}

void criterion_10() {
  const LatticeSpec spec = pstd(-37.5e6);
  // CQ-style measurement ports: 50 Ohm leads through 20 fF capacitors on the
  // synthesized end resonators
  const auto [nl, rep] = synthesize_circuit(build_y_coupler(spec), 7e9, 1e-9);
  const double gamma =
      port_self_energy(20e-15, rep.c_ground[0], 1e-9, 50.0).gamma();

  DisorderConfig cfg;
  cfg.sigma_rel = 0.01;
  cfg.n_samples = 10000;
  cfg.seed = 20260810;
  cfg.ports = {{0, gamma}, {spec.n_chain_sites() - 1, gamma}};
  const DisorderReport with_ports = mc_chirality(spec, cfg);

  cfg.ports.clear();
  const DisorderReport portless = mc_chirality(spec, cfg);

  const bool mean_ok = with_ports.mean >= 950.0 && with_ports.mean <= 1350.0;
  const bool median_ok = portless.median >= 1e4 && portless.median <= 2e5;
  const bool q_ok = portless.q05 >= 1e3 && portless.q95 <= 1e8;
  report(10, mean_ok && median_ok && q_ok, "disorder statistics",
         "ported (Gamma=" + format_full(gamma) + "): mean " +
             format_full(with_ports.mean) + " (band [950, 1350]); portless: "
             "median " + format_full(portless.median) +
             " (band [1e4, 2e5]), q05 " + format_full(portless.q05) +
             " (>= 1e3), q95 " + format_full(portless.q95) + " (<= 1e8)");
}

void criterion_11() {
#ifndef CHIRALWG_CLI_PATH
  report(11, false, "determinism of CLI outputs", "CLI path not configured");
#else
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("chiralwg_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = CHIRALWG_CLI_PATH;

  const std::string disorder_cfg = (dir / "disorder.json").string();
  write_text_file(disorder_cfg, R"({
  "lattice": {"p": 6, "V_Hz": 37.5e6, "t1_Hz": 120e6, "t2_Hz": 150e6,
              "tQ_Hz": 62.5e6, "VQ_Hz": -37.5e6},
  "ports": [{"site": 1, "gamma_Hz": 6.4e6}, {"site": 27, "gamma_Hz": 6.4e6}],
  "disorder": {"sigma_rel": 0.01, "n_samples": 200, "seed": 7}
}
)");

  const std::string sweep_cfg = (dir / "sweep.json").string();
  write_text_file(sweep_cfg, R"({
  "lattice": {"p": 0, "V_Hz": 37.5e6, "t1_Hz": 120e6, "t2_Hz": 150e6,
              "tQ_Hz": 62.5e6},
  "sweep": {"kind": "vq", "start": -75e6, "stop": 75e6, "points": 11}
}
)");

  struct Job {
    std::string name;
    std::string args;
  };
  const std::vector<Job> jobs = {
      {"spectrum", "spectrum --preset fig1c"},
      {"sweep", "sweep --config " + sweep_cfg},
      {"transport", "transport --preset fig2"},
      {"circuit", "circuit --preset spice2"},
      {"disorder", "disorder --config " + disorder_cfg},
  };
  bool pass = true;
  std::string detail;
  for (const Job& job : jobs) {
    const std::string a = (dir / (job.name + "_a.out")).string();
    const std::string b = (dir / (job.name + "_b.out")).string();
    for (const std::string& out : {a, b}) {
      const std::string cmd =
          cli + " " + job.args + " --out " + out + " 2> /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        pass = false;
        detail += job.name + ": nonzero exit  ";
      }
    }
    const bool same = read_text_file(a) == read_text_file(b);
    pass = pass && same;
    detail += job.name + (same ? ": byte-identical  " : ": DIFFERS  ");
  }
  fs::remove_all(dir);
  report(11, pass, "determinism of CLI outputs", detail);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  using Criterion = void (*)();
  const Criterion all[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                           criterion_5, criterion_6, criterion_7, criterion_8,
                           criterion_9, criterion_10, criterion_11};
  if (only >= 1 && only <= 11) {
    all[only - 1]();
  } else {
    for (Criterion c : all) c();
  }
  return g_failures;
}
