#pragma once

#include "chiralwg/lattice.hpp"
#include "chiralwg/types.hpp"

namespace chiralwg {

/// Bulk dispersion parameters of the Rice-Mele chain at complex frequency
/// omega + i*eta. Q and 1/Q are the two roots of Q^2 - 2aQ + 1 = 0; the
/// retarded (decaying) branch with |Q| <= 1 is selected.
struct BulkParams {
  Complex a;
  Complex f0;
  Complex q;
};

BulkParams bulk_params(double omega, double V, double t1, double t2,
                       double eta);

/// Finite-chain weight functions: the bare boundary Green's functions of each
/// chain are w_f/(omega -+ V) (far end), w_n/(omega -+ V) (near end) and
/// w_c/(omega -+ V) (cross), with - for the left chain and + for the right.
struct ChainWeights {
  Complex w_f;
  Complex w_n;
  Complex w_c;
};

ChainWeights chain_weights(double omega, double V, double t1, double t2, int p,
                           double eta);

/// delta_w = w_f w_n - w_c^2 in its product form; the two agree to roundoff.
Complex chain_weights_delta(const ChainWeights& w);
Complex chain_weights_delta_product_form(double omega, double V, double t1,
                                         double t2, int p, double eta);

/// One chain's boundary Green's-function components.
struct ChainGf {
  Complex far;    ///< outer end to outer end
  Complex near;   ///< inner end to inner end
  Complex cross;  ///< outer end to inner end (symmetric)
};

struct BareChainGf {
  ChainGf left;   ///< poles at omega = -V
  ChainGf right;  ///< poles at omega = +V
};

BareChainGf bare_chain_gf(double omega, double V, double t1, double t2, int p,
                          double eta);

/// Dyson dressing of one chain by the port broadening at its outer end.
ChainGf dressed_chain_gf(const ChainGf& bare, double gamma);

/// Central (qubit + M) block dressed by both chains: the self-energy
/// Sigma_M = tL^2 G^L_near + tR^2 G^R_near, the pole function
/// d = (omega - VQ)(omega - VM - Sigma_M) - tQ^2, and the 2x2 block over the
/// basis (Q, M).
struct CentralDressing {
  Complex sigma_m;
  Complex d;
  Eigen::Matrix2cd gc;
};

CentralDressing central_gf(double omega, const LatticeSpec& spec,
                           double gamma1, double gamma_n, double eta);

struct AnalyticSParams {
  Complex s_n1;
  Complex s_11;
  Complex s_nn;
};

/// Closed-form scattering amplitudes of the port-coupled Y-coupler; exact
/// given the weight functions, so they match dense inversion to roundoff.
AnalyticSParams analytic_s_params(double omega, const LatticeSpec& spec,
                                  double gamma1, double gamma_n, double eta);

/// Weight functions in the omega -> -+V limit, where Q = -t1/t2 defines the
/// decay length via exp(-1/xi) = t1/t2.
struct EdgeLimitWeights {
  double w_f;
  double w_n;
  double w_c;
  double norm;  ///< the geometric normalization sum
  double xi;
};

EdgeLimitWeights edge_limit_weights(double t1, double t2, int p);

/// Normalized edge-state amplitudes on the -V sublattice, ordered from the
/// site adjacent to the center outward (alternating sign, geometric decay).
Vector edge_wavefunction(double t1, double t2, int p);

/// Large-VM reduction of the central block: effective qubit energy, the
/// frequency-dependent width gamma(omega), and its omega -> -+V limits.
struct ThreeSiteParams {
  double vq_eff;
  Complex gamma_omega;
  double gamma_l;
  double gamma_r;
};

ThreeSiteParams three_site_params(double omega, const LatticeSpec& spec,
                                  double gamma1, double gamma_n);

namespace detail {

/// Translationally invariant bulk Green's function of the infinite chain for
/// the right-chain unit-cell choice, at relative site indices (n, n'); odd
/// indices sit on the +V sublattice.
Complex bulk_gf_right(Complex omega, double V, double t1, double t2,
                      const BulkParams& bp, int n, int nprime);

}  // namespace detail

}  // namespace chiralwg
