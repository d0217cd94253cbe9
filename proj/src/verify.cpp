#include "chiralwg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "chiralwg/analytic.hpp"
#include "chiralwg/disorder.hpp"
#include "chiralwg/spectra.hpp"
#include "chiralwg/transport.hpp"

namespace chiralwg {

namespace {

double rel_dev(Complex got, Complex want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

/// Dense resolvent of one isolated chain block, optionally broadened at its
/// outer end.
ComplexMatrix chain_resolvent(const Matrix& full, int begin, int size,
                              int outer_local, double gamma, Complex omega) {
  ComplexMatrix block = full.block(begin, begin, size, size).cast<Complex>();
  if (gamma > 0.0) block(outer_local, outer_local) -= kI * gamma;
  ComplexMatrix a = -block;
  a.diagonal().array() += omega;
  return a.partialPivLu().solve(ComplexMatrix::Identity(size, size));
}

}  // namespace

double EquivalenceReport::worst() const {
  return std::max({max_dev_bare, max_dev_dressed, max_dev_central, max_dev_s});
}

EquivalenceReport analytic_equivalence(const LatticeSpec& base,
                                       const std::vector<int>& ps, int n_freq,
                                       double gamma1, double gamma_n,
                                       double eta, std::uint64_t seed) {
  EquivalenceReport rep;
  detail::SampleRng rng(seed, 0);

  for (int p : ps) {
    LatticeSpec spec = base;
    spec.p = p;
    spec.validate();
    const SiteGraph g = build_y_coupler(spec);
    const Matrix h = g.matrix();
    const int central = g.central;
    const int n_chain = spec.n_chain_sites();
    const int chain_len = central;  // sites on one side of the center
    const double half_gap = band_gap_half_width(spec);

    const EffectiveHamiltonian ported = attach_ports(
        g, {{0, gamma1}, {n_chain - 1, gamma_n}});

    for (int k = 0; k < n_freq; ++k) {
      const double omega = 0.9 * half_gap * (2.0 * rng.uniform01() - 1.0);
      const Complex z(omega, eta);

      // bare chains against direct inversion of the isolated blocks
      const BareChainGf bare =
          bare_chain_gf(omega, spec.V, spec.t1, spec.t2, spec.p, eta);
      const ComplexMatrix gl0 = chain_resolvent(h, 0, chain_len, 0, 0.0, z);
      const ComplexMatrix gr0 =
          chain_resolvent(h, central + 1, chain_len, chain_len - 1, 0.0, z);
      const int inner_l = chain_len - 1;  // site adjacent to the center
      rep.max_dev_bare = std::max(
          {rep.max_dev_bare, rel_dev(bare.left.far, gl0(0, 0)),
           rel_dev(bare.left.near, gl0(inner_l, inner_l)),
           rel_dev(bare.left.cross, gl0(0, inner_l)),
           rel_dev(bare.right.far, gr0(chain_len - 1, chain_len - 1)),
           rel_dev(bare.right.near, gr0(0, 0)),
           rel_dev(bare.right.cross, gr0(chain_len - 1, 0))});

      // dressed chains against inversion with -i Gamma at the outer site
      const ChainGf dl = dressed_chain_gf(bare.left, gamma1);
      const ChainGf dr = dressed_chain_gf(bare.right, gamma_n);
      const ComplexMatrix gl = chain_resolvent(h, 0, chain_len, 0, gamma1, z);
      const ComplexMatrix gr = chain_resolvent(h, central + 1, chain_len,
                                               chain_len - 1, gamma_n, z);
      rep.max_dev_dressed = std::max(
          {rep.max_dev_dressed, rel_dev(dl.far, gl(0, 0)),
           rel_dev(dl.near, gl(inner_l, inner_l)),
           rel_dev(dl.cross, gl(0, inner_l)),
           rel_dev(dr.far, gr(chain_len - 1, chain_len - 1)),
           rel_dev(dr.near, gr(0, 0)),
           rel_dev(dr.cross, gr(chain_len - 1, 0))});

      // central block against the (Q, M) entries of the full resolvent
      const CentralDressing c = central_gf(omega, spec, gamma1, gamma_n, eta);
      const ComplexMatrix gfull = greens_function(ported, omega, eta);
      const int q = g.qubit;
      rep.max_dev_central = std::max(
          {rep.max_dev_central, rel_dev(c.gc(0, 0), gfull(q, q)),
           rel_dev(c.gc(0, 1), gfull(q, central)),
           rel_dev(c.gc(1, 1), gfull(central, central))});

      // scattering amplitudes against the Fisher-Lee matrix
      const AnalyticSParams s =
          analytic_s_params(omega, spec, gamma1, gamma_n, eta);
      const ComplexMatrix s_num = s_matrix(gfull, ported.ports);
      rep.max_dev_s = std::max({rep.max_dev_s, rel_dev(s.s_n1, s_num(1, 0)),
                                rel_dev(s.s_11, s_num(0, 0)),
                                rel_dev(s.s_nn, s_num(1, 1))});
    }
  }
  return rep;
}

}  // namespace chiralwg
