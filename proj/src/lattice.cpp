#include "chiralwg/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace chiralwg {

void LatticeSpec::validate() const {
  if (p < 0) throw std::invalid_argument("LatticeSpec: p must be >= 0");
  for (double c : {t1, t2, tQ, t_left(), t_right()})
    if (!(c >= 0.0)) throw std::invalid_argument("LatticeSpec: couplings must be >= 0");
  for (double e : {V, t1, t2, tQ, VQ, VM, t_left(), t_right()})
    if (!std::isfinite(e)) throw std::invalid_argument("LatticeSpec: energies must be finite");
}

Matrix SiteGraph::matrix() const {
  const int n = n_sites();
  Matrix h = Matrix::Zero(n, n);
  h.diagonal() = onsite;
  for (const Bond& b : bonds) {
    h(b.i, b.j) -= b.t;
    h(b.j, b.i) -= b.t;
  }
  return h;
}

void SiteGraph::validate() const {
  const int n = n_sites();
  std::set<std::pair<int, int>> seen;
  for (const Bond& b : bonds) {
    if (b.i < 0 || b.j < 0 || b.i >= n || b.j >= n || b.i >= b.j)
      throw std::invalid_argument("SiteGraph: bond indices out of range");
    if (!seen.insert({b.i, b.j}).second)
      throw std::invalid_argument("SiteGraph: duplicate bond");
    if (!std::isfinite(b.t)) throw std::invalid_argument("SiteGraph: bond coupling not finite");
  }
  if (!onsite.allFinite()) throw std::invalid_argument("SiteGraph: on-site energy not finite");
}

SiteGraph build_y_coupler(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.n_sites();
  const int central = spec.central_site();
  const int qubit = spec.qubit_site();

  SiteGraph g;
  g.onsite = Vector::Zero(n);
  g.central = central;
  g.qubit = qubit;

  for (int s = 0; s < spec.n_chain_sites(); ++s) {
    if (s == central)
      g.onsite[s] = spec.VM;
    else if (s > central)
      g.onsite[s] = ((s - central) % 2 == 1) ? spec.V : -spec.V;
    else
      g.onsite[s] = ((central - s) % 2 == 1) ? -spec.V : spec.V;
  }
  g.onsite[qubit] = spec.VQ;

  g.bonds.push_back({central, qubit, spec.tQ});
  g.bonds.push_back({central - 1, central, spec.t_left()});
  g.bonds.push_back({central, central + 1, spec.t_right()});
  const double alt[2] = {spec.t1, spec.t2};
  for (int k = 1; k <= 2 * spec.p; ++k) {
    const double t = alt[(k - 1) % 2];
    g.bonds.push_back({central + k, central + k + 1, t});
    g.bonds.push_back({central - k - 1, central - k, t});
  }
  g.validate();
  return g;
}

SiteGraph build_ssh_chain(int n_cells, double t1, double t2, bool lonely_site) {
  if (n_cells < 1) throw std::invalid_argument("build_ssh_chain: n_cells must be >= 1");
  if (t1 < 0.0 || t2 < 0.0) throw std::invalid_argument("build_ssh_chain: couplings must be >= 0");
  const int n = 2 * n_cells + (lonely_site ? 1 : 0);
  SiteGraph g;
  g.onsite = Vector::Zero(n);
  int first = 0;
  if (lonely_site) {
    g.bonds.push_back({0, 1, t1});
    first = 1;
  }
  for (int c = 0; c < n_cells; ++c) {
    const int a = first + 2 * c;
    g.bonds.push_back({a, a + 1, t2});
    if (c + 1 < n_cells) g.bonds.push_back({a + 1, a + 2, t1});
  }
  return g;
}

SiteGraph build_four_site(double VQ, double VM, double tQ, double tL, double tR,
                          double V) {
  SiteGraph g;
  g.onsite = Vector(4);
  g.onsite << VQ, VM, -V, V;
  g.bonds = {{0, 1, tQ}, {1, 2, tL}, {1, 3, tR}};
  g.central = 1;
  g.qubit = 0;
  g.validate();
  return g;
}

SiteGraph build_three_level(double VS, double VC, double tQ, double tc) {
  SiteGraph g;
  g.onsite = Vector(3);
  g.onsite << VS, VC, VS;
  g.bonds = {{0, 1, tQ}, {1, 2, tc}};
  g.central = 1;
  g.qubit = 0;
  g.validate();
  return g;
}

EffectiveHamiltonian attach_ports(const SiteGraph& g, const PortSet& ports) {
  const int n = g.n_sites();
  std::set<int> seen;
  for (const Port& port : ports) {
    if (port.site < 0 || port.site >= n)
      throw std::invalid_argument("attach_ports: port site out of range");
    if (port.gamma < 0.0)
      throw std::invalid_argument("attach_ports: port broadening must be >= 0");
    if (!seen.insert(port.site).second)
      throw std::invalid_argument("attach_ports: duplicate port site " +
                                  std::to_string(port.site + 1));
  }
  EffectiveHamiltonian h;
  h.matrix = g.matrix().cast<Complex>();
  for (const Port& port : ports) h.matrix(port.site, port.site) -= kI * port.gamma;
  h.ports = ports;
  h.central = g.central;
  h.qubit = g.qubit;
  return h;
}

}  // namespace chiralwg
