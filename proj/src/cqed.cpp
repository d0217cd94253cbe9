#include "chiralwg/cqed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chiralwg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

char kind_letter(ElementKind k) {
  switch (k) {
    case ElementKind::Capacitor: return 'C';
    case ElementKind::Inductor: return 'L';
    case ElementKind::Resistor: return 'R';
  }
  return '?';
}

std::string shortest_repr(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void Netlist::validate() const {
  std::set<std::string> names;
  for (const CircuitElement& e : elements) {
    if (!(e.value > 0.0))
      throw std::invalid_argument("Netlist: element " + e.name +
                                  " must have a positive value");
    if (e.node_a < 0 || e.node_a > n_nodes || e.node_b < 0 || e.node_b > n_nodes)
      throw std::invalid_argument("Netlist: node index out of range");
    if (!names.insert(std::string(1, kind_letter(e.kind)) + e.name).second)
      throw std::invalid_argument("Netlist: duplicate element name " + e.name);
  }
  for (const CircuitPort& p : ports) {
    if (p.node < 1 || p.node > n_nodes)
      throw std::invalid_argument("Netlist: port node out of range");
    if (p.coupling_cap < 0.0 || !(p.resistance > 0.0))
      throw std::invalid_argument("Netlist: bad port parameters");
  }
  // every node must reach ground through the element graph
  std::vector<std::vector<int>> adj(n_nodes + 1);
  for (const CircuitElement& e : elements) {
    adj[e.node_a].push_back(e.node_b);
    adj[e.node_b].push_back(e.node_a);
  }
  std::vector<char> seen(n_nodes + 1, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  for (int v = 1; v <= n_nodes; ++v)
    if (!seen[v])
      throw std::invalid_argument("Netlist: node " + std::to_string(v) +
                                  " not reachable from ground");
}

SiteParams site_params_from_circuit(const Netlist& nl, double f0) {
  nl.validate();
  const int n = nl.n_nodes;
  Vector c_ground = Vector::Zero(n);
  Vector inductance = Vector::Zero(n);
  std::vector<int> n_ind(n, 0), n_cap(n, 0);
  std::map<std::pair<int, int>, double> coupling;

  for (const CircuitElement& e : nl.elements) {
    const bool grounded = e.node_a == 0 || e.node_b == 0;
    const int site = e.node_a == 0 ? e.node_b : e.node_a;
    switch (e.kind) {
      case ElementKind::Inductor:
        if (!grounded)
          throw std::invalid_argument("site_params_from_circuit: floating inductor");
        inductance[site - 1] = e.value;
        ++n_ind[site - 1];
        break;
      case ElementKind::Capacitor:
        if (grounded) {
          c_ground[site - 1] += e.value;
          ++n_cap[site - 1];
        } else {
          auto key = std::minmax(e.node_a, e.node_b);
          if (!coupling.emplace(std::pair{key.first, key.second}, e.value).second)
            throw std::invalid_argument(
                "site_params_from_circuit: parallel coupling capacitors");
        }
        break;
      case ElementKind::Resistor:
        throw std::invalid_argument(
            "site_params_from_circuit: resistors are not part of a resonator array");
    }
  }
  for (int s = 0; s < n; ++s)
    if (n_ind[s] != 1 || n_cap[s] != 1)
      throw std::invalid_argument(
          "site_params_from_circuit: site " + std::to_string(s + 1) +
          " is not a single LC resonator to ground");

  // C_{n(B)}: everything hanging off the node, port capacitors included
  Vector c_total = c_ground;
  for (const auto& [key, c] : coupling) {
    c_total[key.first - 1] += c;
    c_total[key.second - 1] += c;
  }
  for (const CircuitPort& p : nl.ports) c_total[p.node - 1] += p.coupling_cap;

  SiteParams out;
  out.onsite = Vector(n);
  Vector z(n);
  for (int s = 0; s < n; ++s) {
    out.onsite[s] = 1.0 / (kTwoPi * std::sqrt(inductance[s] * c_total[s])) - f0;
    z[s] = std::sqrt(c_total[s] / inductance[s]);
  }
  for (const auto& [key, c] : coupling) {
    const int i = key.first - 1, j = key.second - 1;
    const double t = std::sqrt(z[i] * z[j]) * c /
                     (2.0 * kTwoPi * c_total[i] * c_total[j]);
    out.couplings.emplace_back(i, j, t);
  }
  return out;
}

std::pair<Netlist, SynthesisReport> synthesize_circuit(const SiteGraph& g,
                                                       double f0, double L0) {
  g.validate();
  if (!(f0 > 0.0) || !(L0 > 0.0))
    throw std::invalid_argument("synthesize_circuit: f0 and L0 must be > 0");
  const int n = g.n_sites();

  SynthesisReport rep;
  rep.c_total = Vector(n);
  rep.inductance = Vector::Constant(n, L0);
  Vector z(n);
  for (int s = 0; s < n; ++s) {
    const double f = f0 + g.onsite[s];
    if (!(f > 0.0))
      throw std::invalid_argument("synthesize_circuit: site frequency f0 + V_n <= 0");
    rep.c_total[s] = 1.0 / (L0 * (kTwoPi * f) * (kTwoPi * f));
    z[s] = std::sqrt(rep.c_total[s] / L0);
  }

  rep.c_ground = rep.c_total;
  for (const Bond& b : g.bonds) {
    const double c = 2.0 * (kTwoPi * std::abs(b.t)) * rep.c_total[b.i] *
                     rep.c_total[b.j] / std::sqrt(z[b.i] * z[b.j]);
    rep.coupling_caps.emplace_back(b.i, b.j, c);
    rep.c_ground[b.i] -= c;
    rep.c_ground[b.j] -= c;
    const double ratio = c / std::min(rep.c_total[b.i], rep.c_total[b.j]);
    if (ratio > 0.1) rep.large_ratio_flags.emplace_back(b.i, b.j, ratio);
  }
  for (int s = 0; s < n; ++s)
    if (!(rep.c_ground[s] > 0.0))
      throw std::runtime_error(
          "synthesize_circuit: resonator capacitance at site " +
          std::to_string(s + 1) + " is not positive; couplings too large for f0, L0");

  Netlist nl;
  nl.n_nodes = n;
  for (int s = 0; s < n; ++s) {
    nl.elements.push_back({ElementKind::Capacitor, std::to_string(s + 1), s + 1,
                           0, rep.c_ground[s]});
    nl.elements.push_back({ElementKind::Inductor, std::to_string(s + 1), s + 1,
                           0, L0});
  }
  for (const auto& [i, j, c] : rep.coupling_caps)
    nl.elements.push_back({ElementKind::Capacitor,
                           std::to_string(i + 1) + "_" + std::to_string(j + 1),
                           i + 1, j + 1, c});
  nl.validate();

  // forward recomputation against the requested graph
  const SiteParams achieved = site_params_from_circuit(nl, f0);
  rep.achieved_onsite = achieved.onsite;
  rep.achieved_couplings = achieved.couplings;
  std::map<std::pair<int, int>, double> achieved_map;
  for (const auto& [i, j, t] : achieved.couplings) achieved_map[{i, j}] = t;
  double dev = 0.0;
  const double floor = 1e-6 * f0;
  for (int s = 0; s < n; ++s)
    dev = std::max(dev, std::abs(achieved.onsite[s] - g.onsite[s]) /
                            std::max(std::abs(g.onsite[s]), floor));
  for (const Bond& b : g.bonds) {
    const double t = achieved_map.at({std::min(b.i, b.j), std::max(b.i, b.j)});
    dev = std::max(dev, std::abs(t - std::abs(b.t)) /
                            std::max(std::abs(b.t), floor));
  }
  rep.max_rel_deviation = dev;
  return {std::move(nl), std::move(rep)};
}

PortSelfEnergy port_self_energy(double c, double C, double L, double R) {
  if (c < 0.0 || !(C > 0.0) || !(L > 0.0) || R < 0.0)
    throw std::invalid_argument("port_self_energy: bad parameters");
  PortSelfEnergy out;
  if (c == 0.0) return out;
  const double f_res = 1.0 / (kTwoPi * std::sqrt(L * C));
  out.delta_f = f_res * (1.0 / std::sqrt(1.0 + c / C) - 1.0);
  out.kappa = c * c * R / (C * C * L) / kTwoPi;
  return out;
}

Netlist with_measurement_ports(Netlist nl, int node_in, int node_out,
                               double coupling_cap, double resistance) {
  nl.ports.clear();
  nl.ports.push_back({node_in, coupling_cap, resistance});
  nl.ports.push_back({node_out, coupling_cap, resistance});
  nl.validate();
  return nl;
}

AcTrace ac_nodal_solve(const Netlist& nl, const Eigen::Ref<const Vector>& f_grid) {
  nl.validate();
  if (nl.ports.size() < 2)
    throw std::invalid_argument("ac_nodal_solve: need a source and a load port");
  const CircuitPort src = nl.ports[0];
  const CircuitPort load = nl.ports[1];

  // ports with a series capacitor get an auxiliary node between R and C
  int n_unknowns = nl.n_nodes;
  const int aux_src = src.coupling_cap > 0.0 ? n_unknowns++ : -1;
  const int aux_load = load.coupling_cap > 0.0 ? n_unknowns++ : -1;

  AcTrace trace;
  trace.freq = f_grid;
  trace.s21 = ComplexVector(f_grid.size());

  ComplexMatrix y(n_unknowns, n_unknowns);
  ComplexVector rhs(n_unknowns);
  for (int k = 0; k < f_grid.size(); ++k) {
    const Complex jw = kI * kTwoPi * f_grid[k];
    y.setZero();
    rhs.setZero();
    auto stamp = [&](int a, int b, Complex adm) {
      // nodes are 1-based with ground 0; unknown index = node - 1
      const int ia = a - 1, ib = b - 1;
      if (ia >= 0) y(ia, ia) += adm;
      if (ib >= 0) y(ib, ib) += adm;
      if (ia >= 0 && ib >= 0) {
        y(ia, ib) -= adm;
        y(ib, ia) -= adm;
      }
    };
    for (const CircuitElement& e : nl.elements) {
      Complex adm;
      switch (e.kind) {
        case ElementKind::Capacitor: adm = jw * e.value; break;
        case ElementKind::Inductor: adm = 1.0 / (jw * e.value); break;
        case ElementKind::Resistor: adm = 1.0 / e.value; break;
      }
      stamp(e.node_a, e.node_b, adm);
    }
    // source: unit Thevenin voltage behind its resistance
    int src_node = src.node;
    if (aux_src >= 0) {
      stamp(aux_src + 1, src.node, jw * src.coupling_cap);
      src_node = aux_src + 1;
    }
    stamp(src_node, 0, 1.0 / src.resistance);
    rhs[src_node - 1] += 1.0 / src.resistance;
    // load: resistance to ground, optionally behind the coupling capacitor
    int load_node = load.node;
    if (aux_load >= 0) {
      stamp(aux_load + 1, load.node, jw * load.coupling_cap);
      load_node = aux_load + 1;
    }
    stamp(load_node, 0, 1.0 / load.resistance);

    Eigen::PartialPivLU<ComplexMatrix> lu(y);
    ComplexVector v = lu.solve(rhs);
    if (!v.allFinite())
      throw std::runtime_error("ac_nodal_solve: singular admittance matrix at f = " +
                               std::to_string(f_grid[k]));
    trace.s21[k] = 2.0 * v[load_node - 1];
  }
  return trace;
}

std::vector<double> find_peaks(const Eigen::Ref<const Vector>& x,
                               const Eigen::Ref<const Vector>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> peaks;
  if (n < 3) return peaks;
  const double threshold = 1e-3 * y.maxCoeff();
  for (int k = 1; k + 1 < n; ++k) {
    if (!(y[k] > y[k - 1] && y[k] > y[k + 1])) continue;
    // topographic prominence: drop to the highest saddle separating this
    // maximum from higher ground (or from the trace boundary)
    double left_min = y[k];
    for (int i = k - 1; i >= 0; --i) {
      left_min = std::min(left_min, y[i]);
      if (y[i] > y[k]) break;
    }
    double right_min = y[k];
    for (int i = k + 1; i < n; ++i) {
      right_min = std::min(right_min, y[i]);
      if (y[i] > y[k]) break;
    }
    if (y[k] - std::max(left_min, right_min) >= threshold) peaks.push_back(x[k]);
  }
  return peaks;
}

std::vector<double> find_peaks(const AcTrace& trace) {
  return find_peaks(trace.freq, trace.s21.cwiseAbs());
}

std::vector<double> find_peaks_refined(const Netlist& nl,
                                       const Eigen::Ref<const Vector>& coarse_grid) {
  const AcTrace coarse = ac_nodal_solve(nl, coarse_grid);
  const Vector mag = coarse.s21.cwiseAbs();
  const int n = static_cast<int>(mag.size());

  struct Peak {
    double f;
    double height;
  };
  std::vector<Peak> refined;
  for (int k = 1; k + 1 < n; ++k) {
    if (!(mag[k] > mag[k - 1] && mag[k] > mag[k + 1])) continue;
    double lo = coarse.freq[k - 1], hi = coarse.freq[k + 1];
    double best_f = coarse.freq[k], best_h = mag[k];
    for (int level = 0; level < 6 && hi - lo > 1e-3; ++level) {
      const AcTrace local = ac_nodal_solve(nl, linspaced(lo, hi, 33));
      int arg = 0;
      const double h = local.s21.cwiseAbs().maxCoeff(&arg);
      if (h > best_h) {
        best_h = h;
        best_f = local.freq[arg];
      }
      const double step = (hi - lo) / 32.0;
      lo = best_f - 1.5 * step;
      hi = best_f + 1.5 * step;
    }
    refined.push_back({best_f, best_h});
  }
  if (refined.empty()) return {};
  double max_h = 0.0;
  for (const Peak& p : refined) max_h = std::max(max_h, p.height);
  std::vector<double> out;
  for (const Peak& p : refined)
    if (p.height >= 1e-3 * max_h) out.push_back(p.f);
  std::sort(out.begin(), out.end());
  return out;
}

std::string export_netlist(const Netlist& nl) {
  std::vector<CircuitElement> sorted = nl.elements;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CircuitElement& a, const CircuitElement& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.name < b.name;
                   });
  std::ostringstream out;
  for (const CircuitElement& e : sorted)
    out << kind_letter(e.kind) << e.name << ' ' << e.node_a << ' ' << e.node_b
        << ' ' << shortest_repr(e.value) << '\n';
  for (const CircuitPort& p : nl.ports)
    out << "* PORT " << p.node << ' ' << shortest_repr(p.coupling_cap) << ' '
        << shortest_repr(p.resistance) << '\n';
  return out.str();
}

Netlist parse_netlist(const std::string& text) {
  Netlist nl;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string head;
    if (!(row >> head)) continue;
    if (head == "*") {
      std::string tag;
      row >> tag;
      if (tag == "PORT") {
        CircuitPort p;
        row >> p.node >> p.coupling_cap >> p.resistance;
        nl.ports.push_back(p);
      }
      continue;
    }
    CircuitElement e;
    switch (head[0]) {
      case 'C': e.kind = ElementKind::Capacitor; break;
      case 'L': e.kind = ElementKind::Inductor; break;
      case 'R': e.kind = ElementKind::Resistor; break;
      default:
        throw std::invalid_argument("parse_netlist: unknown card '" + line + "'");
    }
    e.name = head.substr(1);
    if (!(row >> e.node_a >> e.node_b >> e.value))
      throw std::invalid_argument("parse_netlist: malformed card '" + line + "'");
    nl.elements.push_back(e);
    nl.n_nodes = std::max({nl.n_nodes, e.node_a, e.node_b});
  }
  nl.validate();
  return nl;
}

}  // namespace chiralwg
