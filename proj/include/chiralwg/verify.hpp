#pragma once

#include <cstdint>
#include <vector>

#include "chiralwg/lattice.hpp"

namespace chiralwg {

/// Maximum relative deviations between the closed-form Green's-function
/// stack and dense inversion, per component class.
struct EquivalenceReport {
  double max_dev_bare = 0.0;
  double max_dev_dressed = 0.0;
  double max_dev_central = 0.0;
  double max_dev_s = 0.0;

  double worst() const;
  bool pass(double tol) const { return worst() <= tol; }
};

/// Evaluates every bare, dressed and central component plus the three
/// analytic scattering amplitudes at n_freq random in-gap frequencies for
/// each chain length in ps, comparing against direct inversion of the
/// corresponding matrices at omega + i*eta.
EquivalenceReport analytic_equivalence(const LatticeSpec& base,
                                       const std::vector<int>& ps, int n_freq,
                                       double gamma1, double gamma_n,
                                       double eta, std::uint64_t seed);

}  // namespace chiralwg
