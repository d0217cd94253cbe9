#pragma once

#include <vector>

#include "chiralwg/lattice.hpp"
#include "chiralwg/types.hpp"

namespace chiralwg {

/// Full eigendecomposition of a closed (portless) system, eigenvalues
/// ascending and eigenvector columns orthonormal.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

Spectrum eigendecompose(const SiteGraph& g);

struct GapState {
  double energy = 0.0;
  int index = 0;  ///< eigenvalue index in the Spectrum
};

/// Band edges of the closed-form gap together with the eigenpairs strictly
/// inside it.
struct GapReport {
  double gap_lower = 0.0;
  double gap_upper = 0.0;
  std::vector<GapState> in_gap;
};

/// Half width of the band gap, sqrt((t2 - t1)^2 + V^2).
double band_gap_half_width(const LatticeSpec& spec);

/// Gap edges come from the closed form, not from the finite-size spectrum;
/// "strictly inside" carries a 1e-9 * width margin against boundary jitter.
GapReport find_gap_states(const Spectrum& s, const LatticeSpec& spec);

/// Elementwise squared magnitudes of a normalized eigenvector.
Vector occupation(const Eigen::Ref<const Vector>& v);

/// chi = sum_{n < central} P_n / sum_{n > central} P_n over chain sites; the
/// central site and the qubit site (when given) are excluded from both sums.
/// Returns +infinity when the denominator vanishes: underflow, or below the
/// double-precision noise floor (1e-24) relative to the numerator, which is
/// where eigensolver noise lands for exactly directional states.
double chirality_from_probs(const Eigen::Ref<const Vector>& probs, int central,
                            int qubit = -1);

struct VqSweepPoint {
  double vq = 0.0;
  Spectrum spectrum;
  GapReport gaps;
};

std::vector<VqSweepPoint> sweep_vq(const LatticeSpec& spec,
                                   const Eigen::Ref<const Vector>& vq_grid);

/// Inner anticrossing energy E0 = tQ*V/(sqrt(2)*t1) of the 4-site cell at
/// VQ = 0; the full anticrossing width is 2*E0.
double four_site_gap(double V, double t1, double tQ);

/// Binomial-approximation splitting (tc^2 + tQ^2)/(VC - VS) of the 3-level
/// anticrossing.
double anticrossing_gap_3level(double VC, double VS, double tQ, double tc);

/// Diabatic passage probability exp(-2 pi^2 f0^2 / omega_dot) through an
/// anticrossing of half-gap f0 (Hz), swept at omega_dot = d(2 pi f)/dt in
/// angular frequency per second. For a sweep rate given as df/dt in Hz/s use
/// omega_dot = 2 pi * df/dt, which reduces the exponent to -pi f0^2/(df/dt).
double lzsm_probability(double f0, double omega_dot);

}  // namespace chiralwg
