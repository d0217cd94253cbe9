#pragma once

#include <cmath>
#include <vector>

#include "chiralwg/types.hpp"

namespace chiralwg {

/// Declarative parameters of a Rice-Mele Y-coupler: two chains of p strongly
/// coupled site pairs joined at a central site that is side-coupled to a
/// tunable qubit site. All energies are ordinary frequencies in Hz (not
/// angular); a bond with coupling t enters the Hamiltonian as -t.
struct LatticeSpec {
  int p = 0;        ///< unit cells (t2-coupled pairs) per chain
  double V = 0.0;   ///< on-site alternation amplitude
  double t1 = 0.0;  ///< weak tunnel coupling
  double t2 = 0.0;  ///< strong tunnel coupling
  double tQ = 0.0;  ///< qubit-to-central coupling
  double VQ = 0.0;  ///< qubit on-site potential
  double VM = 0.0;  ///< central-site potential
  double tL = kUnsetCoupling;  ///< center to left chain; defaults to t1
  double tR = kUnsetCoupling;  ///< center to right chain; defaults to t1

  static constexpr double kUnsetCoupling = -1.0;

  double t_left() const { return tL < 0.0 ? t1 : tL; }
  double t_right() const { return tR < 0.0 ? t1 : tR; }

  /// Chain sites are 0..4p+2 with the central site at 2p+1 and the qubit
  /// appended at 4p+3 (0-based; site labels printed for users are 1-based).
  int n_chain_sites() const { return 4 * p + 3; }
  int central_site() const { return 2 * p + 1; }
  int qubit_site() const { return 4 * p + 3; }
  int n_sites() const { return 4 * p + 4; }

  /// Throws std::invalid_argument on a malformed spec.
  void validate() const;
};

struct Bond {
  int i = 0;
  int j = 0;  ///< i < j
  double t = 0.0;
};

/// Explicit site model: on-site energies plus a symmetric bond list.
struct SiteGraph {
  Vector onsite;
  std::vector<Bond> bonds;
  int central = -1;  ///< chain-joining site when the graph is a Y-coupler
  int qubit = -1;    ///< side-coupled qubit site when present

  int n_sites() const { return static_cast<int>(onsite.size()); }

  /// Dense real symmetric Hamiltonian; bonds enter as -t.
  Matrix matrix() const;

  void validate() const;
};

struct Port {
  int site = 0;
  double gamma = 0.0;  ///< broadening in Hz, >= 0
};
using PortSet = std::vector<Port>;

/// H' = H - i sum_n Gamma_n |n><n|, complex symmetric (not Hermitian) once
/// any port broadening is attached.
struct EffectiveHamiltonian {
  ComplexMatrix matrix;
  PortSet ports;
  int central = -1;
  int qubit = -1;
};

/// Builds the full Y-coupler on 4p+4 sites. On-site energies alternate +-V
/// away from the central site so that the leftmost site carries -V and the
/// rightmost chain site +V; outward bonds alternate t1, t2, ... ending with a
/// strong t2 pair at each chain end.
SiteGraph build_y_coupler(const LatticeSpec& spec);

/// SSH chain of n_cells strongly coupled pairs with alternating t2/t1 bonds
/// and zero on-site energies. With lonely_site an extra site is prepended and
/// attached by the weak t1, which roots an in-gap edge state.
SiteGraph build_ssh_chain(int n_cells, double t1, double t2, bool lonely_site);

/// General 4-site cell over the basis order (Q, C, L, R).
SiteGraph build_four_site(double VQ, double VM, double tQ, double tL, double tR,
                          double V);

/// 3-level anticrossing model over the basis order (Q, C, S).
SiteGraph build_three_level(double VS, double VC, double tQ, double tc);

/// Adds -i*Gamma at each port site; duplicate port sites are rejected.
EffectiveHamiltonian attach_ports(const SiteGraph& g, const PortSet& ports);

}  // namespace chiralwg
