#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chiralwg/lattice.hpp"
#include "chiralwg/types.hpp"

namespace chiralwg {

enum class ElementKind { Capacitor, Inductor, Resistor };

struct CircuitElement {
  ElementKind kind = ElementKind::Capacitor;
  std::string name;  ///< without the kind letter, e.g. "3" or "3_4"
  int node_a = 0;
  int node_b = 0;  ///< ground = 0
  double value = 0.0;  ///< F / H / Ohm
};

struct CircuitPort {
  int node = 0;
  double coupling_cap = 0.0;  ///< series capacitor in F; 0 means direct
  double resistance = 0.0;    ///< source/load resistance in Ohm
};

/// Lumped-element circuit; nodes are numbered 1..n_nodes with ground at 0.
struct Netlist {
  int n_nodes = 0;
  std::vector<CircuitElement> elements;
  std::vector<CircuitPort> ports;

  void validate() const;
};

/// On-site frequencies (relative to f0) and coupling magnitudes recovered
/// from a resonator-array netlist: every site is one inductor plus one
/// capacitor to ground, bonds are single coupling capacitors.
struct SiteParams {
  Vector onsite;  ///< f_n - f0 in Hz
  std::vector<std::tuple<int, int, double>> couplings;  ///< (i, j, |t|), 0-based
};

SiteParams site_params_from_circuit(const Netlist& nl, double f0);

struct SynthesisReport {
  Vector c_total;   ///< C_{n(B)}, F
  Vector c_ground;  ///< resonator capacitors C_n, F
  Vector inductance;
  std::vector<std::tuple<int, int, double>> coupling_caps;  ///< (i, j, C), 0-based
  Vector achieved_onsite;
  std::vector<std::tuple<int, int, double>> achieved_couplings;
  double max_rel_deviation = 0.0;
  /// coupling-to-total capacitance ratios above 0.1, outside the
  /// perturbative regime the mapping assumes
  std::vector<std::tuple<int, int, double>> large_ratio_flags;
};

/// Maps a site graph onto LC resonators at f0 + V_n with a common inductance
/// L0 and coupling capacitors proportional to the bond magnitudes. Throws
/// when a resonator capacitor would go non-positive (couplings too large for
/// the chosen f0, L0).
std::pair<Netlist, SynthesisReport> synthesize_circuit(const SiteGraph& g,
                                                       double f0, double L0);

struct PortSelfEnergy {
  double delta_f = 0.0;  ///< resonator frequency shift, Hz
  double kappa = 0.0;    ///< photon loss rate, Hz
  double gamma() const { return 0.5 * kappa; }  ///< Fisher-Lee broadening
};

/// Loading of one resonator (C, L) by a lead of resistance R coupled through
/// a series capacitor c; valid for c << C. Both outputs are ordinary
/// frequencies.
PortSelfEnergy port_self_energy(double c, double C, double L, double R);

/// Returns a copy of nl with a source port at node_in and a load port at
/// node_out. coupling_cap = 0 attaches the resistance directly (high-Z
/// probing).
Netlist with_measurement_ports(Netlist nl, int node_in, int node_out,
                               double coupling_cap, double resistance);

struct AcTrace {
  Vector freq;
  ComplexVector s21;
};

/// AC nodal analysis: for each frequency assemble the complex admittance
/// matrix, drive the first port with a unit Thevenin source and report
/// S21 = 2 V_load / V_source at the second port.
AcTrace ac_nodal_solve(const Netlist& nl, const Eigen::Ref<const Vector>& f_grid);

/// Strict local maxima of |y| whose topographic prominence is at least 1e-3
/// of the trace maximum; returns the corresponding x positions.
std::vector<double> find_peaks(const Eigen::Ref<const Vector>& x,
                               const Eigen::Ref<const Vector>& y);
std::vector<double> find_peaks(const AcTrace& trace);

/// Peak positions of |S21| localized beyond the coarse grid: every interior
/// local maximum is refined by re-solving the circuit on progressively finer
/// local grids, then the prominence filter is applied to the refined heights.
std::vector<double> find_peaks_refined(const Netlist& nl,
                                       const Eigen::Ref<const Vector>& coarse_grid);

/// SPICE-compatible card lines, deterministically ordered by element kind and
/// name; ports are carried on comment cards so that parsing is lossless.
std::string export_netlist(const Netlist& nl);
Netlist parse_netlist(const std::string& text);

}  // namespace chiralwg
