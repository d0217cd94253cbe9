#include "chiralwg/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace chiralwg {

namespace {

Complex pow_int(Complex base, int n) {
  Complex out = 1.0;
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

// w_tilde of the delta_w product identity, delta_w = w_tilde (w^2 - V^2)/(t1 t2)
Complex w_tilde_of(const BulkParams& bp, int p) {
  const Complex q = bp.q;
  const Complex pref = -bp.f0 / (2.0 * q) * (1.0 - q * q);
  return pref * pref * q * (1.0 - pow_int(q, 2 * p)) /
         (1.0 - pow_int(q, 2 * p + 2));
}

}  // namespace

BulkParams bulk_params(double omega, double V, double t1, double t2,
                       double eta) {
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw std::invalid_argument("bulk_params: t1, t2 must be > 0");
  if (eta < 0.0) throw std::invalid_argument("bulk_params: eta must be >= 0");
  const Complex w(omega, eta);
  const Complex a = (w * w - V * V - t1 * t1 - t2 * t2) / (2.0 * t1 * t2);
  const Complex disc = a * a - 1.0;
  if (disc == Complex(0.0, 0.0))
    throw std::runtime_error(
        "bulk_params: band edge (a = +-1); evaluate with eta > 0");
  // Q and 1/Q solve Q^2 - 2aQ + 1 = 0; the retarded branch keeps |Q| <= 1.
  Complex root = std::sqrt(disc);
  Complex q = a - root;
  if (std::abs(q) > 1.0) {
    root = -root;
    q = a - root;
  }
  BulkParams bp;
  bp.a = a;
  bp.q = q;
  bp.f0 = -1.0 / root;  // F0 = -1/(a sqrt(1 - 1/a^2)) on the same branch
  return bp;
}

ChainWeights chain_weights(double omega, double V, double t1, double t2, int p,
                           double eta) {
  if (p < 0) throw std::invalid_argument("chain_weights: p must be >= 0");
  const BulkParams bp = bulk_params(omega, V, t1, t2, eta);
  const Complex q = bp.q;
  const Complex f0 = bp.f0;
  const Complex q2p1 = pow_int(q, 2 * p + 1);
  const Complex denom_pole = 1.0 - q * q2p1;  // 1 - Q^{2p+2}
  if (std::abs(denom_pole) < 1e-300)
    throw std::runtime_error(
        "chain_weights: resonant denominator Q^{2p+2} = 1; evaluate with eta > 0");
  const Complex one_m_q2 = 1.0 - q * q;
  ChainWeights cw;
  cw.w_f = -f0 * one_m_q2 * (q * t2 + t1 - q2p1 * (t2 + q * t1)) /
           (2.0 * q * denom_pole * t1);
  cw.w_n = -f0 * one_m_q2 * (t2 + q * t1 - q2p1 * (q * t2 + t1)) /
           (2.0 * q * denom_pole * t2);
  cw.w_c = -f0 / (2.0 * q) * pow_int(q, p) * one_m_q2 * one_m_q2 / denom_pole;
  return cw;
}

Complex chain_weights_delta(const ChainWeights& w) {
  return w.w_f * w.w_n - w.w_c * w.w_c;
}

Complex chain_weights_delta_product_form(double omega, double V, double t1,
                                         double t2, int p, double eta) {
  const BulkParams bp = bulk_params(omega, V, t1, t2, eta);
  const Complex w(omega, eta);
  return w_tilde_of(bp, p) * (w * w - V * V) / (t1 * t2);
}

BareChainGf bare_chain_gf(double omega, double V, double t1, double t2, int p,
                          double eta) {
  const ChainWeights cw = chain_weights(omega, V, t1, t2, p, eta);
  const Complex w(omega, eta);
  BareChainGf g;
  g.left = {cw.w_f / (w + V), cw.w_n / (w + V), cw.w_c / (w + V)};
  g.right = {cw.w_f / (w - V), cw.w_n / (w - V), cw.w_c / (w - V)};
  return g;
}

ChainGf dressed_chain_gf(const ChainGf& bare, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("dressed_chain_gf: gamma must be >= 0");
  const Complex denom = 1.0 + kI * gamma * bare.far;
  if (std::abs(denom) < 1e-300)
    throw std::runtime_error("dressed_chain_gf: 1 + i Gamma G_far vanishes");
  ChainGf g;
  g.far = bare.far / denom;
  g.cross = bare.cross / denom;
  g.near = bare.near - kI * gamma * bare.cross * bare.cross / denom;
  return g;
}

CentralDressing central_gf(double omega, const LatticeSpec& spec,
                           double gamma1, double gamma_n, double eta) {
  spec.validate();
  const BulkParams bp = bulk_params(omega, spec.V, spec.t1, spec.t2, eta);
  const ChainWeights cw =
      chain_weights(omega, spec.V, spec.t1, spec.t2, spec.p, eta);
  const Complex wt = w_tilde_of(bp, spec.p);
  const double tl = spec.t_left();
  const double tr = spec.t_right();
  const Complex w(omega, eta);
  const double t1t2 = spec.t1 * spec.t2;

  // dressed inner components in the pole-cancelled form, finite at omega =
  // -+V as long as a port broadens the corresponding chain
  const Complex left_near = (cw.w_n + kI * gamma1 * wt * (w - spec.V) / t1t2) /
                            (w + spec.V + kI * gamma1 * cw.w_f);
  const Complex right_near = (cw.w_n + kI * gamma_n * wt * (w + spec.V) / t1t2) /
                             (w - spec.V + kI * gamma_n * cw.w_f);

  CentralDressing c;
  c.sigma_m = tl * tl * left_near + tr * tr * right_near;
  c.d = (w - spec.VQ) * (w - spec.VM - c.sigma_m) - spec.tQ * spec.tQ;
  if (!std::isfinite(std::abs(c.d)) || std::abs(c.d) < 1e-300)
    throw std::runtime_error(
        "central_gf: bound-state pole of the chains or d(omega) = 0; "
        "evaluate with eta > 0");
  c.gc << (w - spec.VM - c.sigma_m) / c.d, -spec.tQ / c.d,
      -spec.tQ / c.d, (w - spec.VQ) / c.d;
  return c;
}

AnalyticSParams analytic_s_params(double omega, const LatticeSpec& spec,
                                  double gamma1, double gamma_n, double eta) {
  const ChainWeights cw =
      chain_weights(omega, spec.V, spec.t1, spec.t2, spec.p, eta);
  const CentralDressing c = central_gf(omega, spec, gamma1, gamma_n, eta);
  const Complex w(omega, eta);
  const double tl = spec.t_left();
  const double tr = spec.t_right();
  const Complex gamma_l = gamma1 * cw.w_f;
  const Complex gamma_r = gamma_n * cw.w_f;
  const Complex pole_l = w + spec.V + kI * gamma_l;
  const Complex pole_r = w - spec.V + kI * gamma_r;
  const Complex qfrac = (w - spec.VQ) / c.d;

  AnalyticSParams s;
  s.s_n1 = -2.0 * kI * std::sqrt(gamma_n * gamma1) * tr * tl * cw.w_c *
           cw.w_c / (pole_r * pole_l) * qfrac;
  s.s_11 = 1.0 - 2.0 * kI * gamma1 *
                     (cw.w_f / pole_l +
                      tl * tl * cw.w_c * cw.w_c / (pole_l * pole_l) * qfrac);
  s.s_nn = 1.0 - 2.0 * kI * gamma_n *
                     (cw.w_f / pole_r +
                      tr * tr * cw.w_c * cw.w_c / (pole_r * pole_r) * qfrac);
  return s;
}

EdgeLimitWeights edge_limit_weights(double t1, double t2, int p) {
  if (!(t2 > t1) || !(t1 > 0.0))
    throw std::invalid_argument("edge_limit_weights: requires t2 > t1 > 0");
  if (p < 0) throw std::invalid_argument("edge_limit_weights: p must be >= 0");
  const double r = t1 / t2;  // e^{-1/xi}
  const double r2 = r * r;
  EdgeLimitWeights w;
  w.xi = 1.0 / std::log(t2 / t1);
  w.norm = (1.0 - std::pow(r2, p + 1)) / (1.0 - r2);
  w.w_f = std::pow(r2, p) / w.norm;
  w.w_n = 1.0 / w.norm;
  w.w_c = ((p % 2 == 0) ? 1.0 : -1.0) * std::pow(r, p) / w.norm;
  return w;
}

Vector edge_wavefunction(double t1, double t2, int p) {
  const EdgeLimitWeights w = edge_limit_weights(t1, t2, p);
  const double r = t1 / t2;
  Vector psi(p + 1);
  double amp = 1.0 / std::sqrt(w.norm);
  for (int l = 0; l <= p; ++l) {
    psi[l] = amp;
    amp *= -r;
  }
  return psi;
}

ThreeSiteParams three_site_params(double omega, const LatticeSpec& spec,
                                  double gamma1, double gamma_n) {
  if (spec.VM == 0.0)
    throw std::invalid_argument("three_site_params: requires VM != 0");
  const double tl = spec.t_left();
  const double tr = spec.t_right();
  const double tq2_vm2 = spec.tQ * spec.tQ / (spec.VM * spec.VM);

  const ChainWeights cw =
      chain_weights(omega, spec.V, spec.t1, spec.t2, spec.p, 0.0);
  const Complex gamma_l = gamma1 * cw.w_f;
  const Complex gamma_r = gamma_n * cw.w_f;
  const Complex dl = omega + spec.V;
  const Complex dr = omega - spec.V;

  ThreeSiteParams out;
  out.vq_eff = spec.VQ - spec.tQ * spec.tQ / spec.VM;
  out.gamma_omega =
      tq2_vm2 * (tl * tl * gamma_l / (dl * dl + gamma_l * gamma_l) +
                 tr * tr * gamma_r / (dr * dr + gamma_r * gamma_r));
  const double w_f_edge = edge_limit_weights(spec.t1, spec.t2, spec.p).w_f;
  out.gamma_l = tq2_vm2 * tl * tl / (gamma1 * w_f_edge);
  out.gamma_r = tq2_vm2 * tr * tr / (gamma_n * w_f_edge);
  return out;
}

namespace detail {

Complex bulk_gf_right(Complex omega, double V, double t1, double t2,
                      const BulkParams& bp, int n, int nprime) {
  const double norm = 2.0 * t1 * t2;
  const bool n_odd = ((n % 2) + 2) % 2 == 1;
  const bool np_odd = ((nprime % 2) + 2) % 2 == 1;
  auto cell = [](int site, bool odd) {
    return odd ? (site + 1) / 2 : site / 2;
  };
  const int l = cell(n, n_odd);
  const int lp = cell(nprime, np_odd);
  const Complex qpow = pow_int(bp.q, std::abs(l - lp));
  if (n_odd && np_odd) return -(omega + V) * bp.f0 * qpow / norm;
  if (!n_odd && !np_odd) return -(omega - V) * bp.f0 * qpow / norm;
  if (!n_odd) return bulk_gf_right(omega, V, t1, t2, bp, nprime, n);
  // n odd, n' even
  const Complex factor = (l <= lp) ? (t1 + t2 * bp.q) : (t1 + t2 / bp.q);
  return bp.f0 * qpow * factor / norm;
}

}  // namespace detail

}  // namespace chiralwg
