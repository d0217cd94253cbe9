#include "chiralwg/transport.hpp"

#include "chiralwg/spectra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chiralwg {

ComplexMatrix greens_function(const EffectiveHamiltonian& h, double omega,
                              double eta) {
  if (eta < 0.0) throw std::invalid_argument("greens_function: eta must be >= 0");
  const auto n = h.matrix.rows();
  ComplexMatrix a = -h.matrix;
  a.diagonal().array() += Complex(omega, eta);
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  ComplexMatrix g = lu.solve(ComplexMatrix::Identity(n, n));
  const double residual = (a * g - ComplexMatrix::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff();
  if (!g.allFinite() || residual >= 1e-10)
    throw std::runtime_error(
        "greens_function: resolvent singular or ill-conditioned at omega = " +
        std::to_string(omega) + " (residual " + std::to_string(residual) +
        "); evaluate with eta > 0");
  return g;
}

ComplexMatrix s_matrix(const Eigen::Ref<const ComplexMatrix>& g,
                       const PortSet& ports) {
  if (ports.empty()) throw std::invalid_argument("s_matrix: no ports");
  const int np = static_cast<int>(ports.size());
  ComplexMatrix s(np, np);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      const double root = std::sqrt(ports[a].gamma * ports[b].gamma);
      s(a, b) = (a == b ? 1.0 : 0.0) -
                2.0 * kI * root * g(ports[a].site, ports[b].site);
    }
  return s;
}

Vector ldos(const Eigen::Ref<const ComplexMatrix>& g) {
  return -g.diagonal().imag() / std::numbers::pi;
}

double chirality_from_ldos(const Eigen::Ref<const Vector>& rho, int central,
                           int qubit) {
  Vector p = rho.cwiseMax(0.0);
  return chirality_from_probs(p, central, qubit);
}

std::vector<ScatterResult> frequency_sweep(
    const EffectiveHamiltonian& h, const Eigen::Ref<const Vector>& omega_grid,
    double eta) {
  if (!omega_grid.allFinite())
    throw std::invalid_argument("frequency_sweep: grid not finite");
  std::vector<ScatterResult> out;
  out.reserve(omega_grid.size());
  for (int k = 0; k < omega_grid.size(); ++k) {
    ScatterResult r;
    r.omega = omega_grid[k];
    const ComplexMatrix g = greens_function(h, r.omega, eta);
    r.s = s_matrix(g, h.ports);
    r.ldos = ldos(g);
    r.chirality = h.central >= 0
                      ? chirality_from_ldos(r.ldos, h.central, h.qubit)
                      : std::numeric_limits<double>::quiet_NaN();
    out.push_back(std::move(r));
  }
  return out;
}

EdgeReflectance edge_reflectance_closed_form(double v, double gamma,
                                             double w_f) {
  if (gamma < 0.0 || w_f <= 0.0)
    throw std::invalid_argument("edge_reflectance_closed_form: need Gamma >= 0, w_f > 0");
  EdgeReflectance r;
  r.facing = -1.0;
  if (gamma == 0.0) {
    r.opposite = 1.0;
    return r;
  }
  const Complex x = kI * (2.0 * v / (gamma * w_f));
  r.opposite = -(1.0 - x) / (1.0 + x);
  return r;
}

double w_f_approx(double t1, double t2, int p) {
  if (!(t2 > t1) || !(t1 > 0.0))
    throw std::invalid_argument("w_f_approx: requires t2 > t1 > 0");
  if (p < 0) throw std::invalid_argument("w_f_approx: p must be >= 0");
  return (t2 * t2 - t1 * t1) /
         (t2 * t2 * std::pow(t2 / t1, 2.0 * p) - t1 * t1);
}

double default_eta(const LatticeSpec& spec) {
  return 1e-6 * std::max(spec.t2, spec.V);
}

}  // namespace chiralwg
