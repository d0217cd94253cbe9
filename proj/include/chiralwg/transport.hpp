#pragma once

#include <vector>

#include "chiralwg/lattice.hpp"
#include "chiralwg/types.hpp"

namespace chiralwg {

/// Retarded Green's function G = ((omega + i*eta) I - H')^{-1} via dense LU
/// with partial pivoting. Throws when the resolvent is singular (portless
/// system probed exactly on an eigenvalue with eta = 0) with a hint to raise
/// eta.
ComplexMatrix greens_function(const EffectiveHamiltonian& h, double omega,
                              double eta = 0.0);

/// Fisher-Lee scattering amplitudes S_ab = delta_ab - 2i sqrt(Gamma_a Gamma_b)
/// G_ab, indexed by the port order.
ComplexMatrix s_matrix(const Eigen::Ref<const ComplexMatrix>& g,
                       const PortSet& ports);

/// Local density of states rho_n = -Im G_nn / pi.
Vector ldos(const Eigen::Ref<const ComplexMatrix>& g);

/// Chirality of an LDOS profile; tiny negative entries (numerical noise) are
/// clamped before forming the left/right ratio.
double chirality_from_ldos(const Eigen::Ref<const Vector>& rho, int central,
                           int qubit = -1);

struct ScatterResult {
  double omega = 0.0;
  ComplexMatrix s;   ///< port-indexed scattering matrix
  Vector ldos;       ///< per-site LDOS (1/Hz)
  double chirality = 0.0;
};

std::vector<ScatterResult> frequency_sweep(
    const EffectiveHamiltonian& h, const Eigen::Ref<const Vector>& omega_grid,
    double eta = 0.0);

struct EdgeReflectance {
  Complex facing;    ///< port the edge state points at
  Complex opposite;  ///< the far port
};

/// Reflectances at the edge-state point (VQ = -+V, omega = VQ): the facing
/// port reflects with a pi phase shift, the opposite port's phase is set by
/// 2V/(Gamma w_f). The sign of the imaginary part follows the decaying-port
/// convention H' = H - i*Gamma used throughout. At Gamma = 0 the opposite
/// port reflectance is defined as +1.
EdgeReflectance edge_reflectance_closed_form(double v, double gamma, double w_f);

/// Large-gap approximation of the edge-state end-site weight,
/// (t2^2 - t1^2) / (t2^2 (t2/t1)^{2p} - t1^2); requires t2 > t1 > 0.
double w_f_approx(double t1, double t2, int p);

/// Default retarded regularization, 1e-6 * max(t2, V).
double default_eta(const LatticeSpec& spec);

}  // namespace chiralwg
