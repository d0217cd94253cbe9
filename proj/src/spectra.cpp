#include "chiralwg/spectra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chiralwg {

Spectrum eigendecompose(const SiteGraph& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(g.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecompose: solver did not converge (n = " +
                             std::to_string(g.n_sites()) + ")");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double band_gap_half_width(const LatticeSpec& spec) {
  return std::hypot(spec.t2 - spec.t1, spec.V);
}

GapReport find_gap_states(const Spectrum& s, const LatticeSpec& spec) {
  const double half = band_gap_half_width(spec);
  GapReport report;
  report.gap_lower = -half;
  report.gap_upper = half;
  const double margin = 1e-9 * (2.0 * half);
  for (int k = 0; k < s.eigenvalues.size(); ++k) {
    const double e = s.eigenvalues[k];
    if (e > report.gap_lower + margin && e < report.gap_upper - margin)
      report.in_gap.push_back({e, k});
  }
  return report;
}

Vector occupation(const Eigen::Ref<const Vector>& v) {
  if (v.size() == 0 || v.isZero(0.0))
    throw std::invalid_argument("occupation: zero vector");
  return v.array().square();
}

double chirality_from_probs(const Eigen::Ref<const Vector>& probs, int central,
                            int qubit) {
  const int n = static_cast<int>(probs.size());
  if (central <= 0 || central >= n - 1)
    throw std::invalid_argument("chirality_from_probs: central site not interior");
  double left = 0.0, right = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == central || i == qubit) continue;
    (i < central ? left : right) += probs[i];
  }
  // a denominator at the double-precision noise floor of the numerator is a
  // true zero (exactly directional state): return the infinity sentinel
  if (right < 1e-300 || right < 1e-24 * left)
    return std::numeric_limits<double>::infinity();
  return left / right;
}

std::vector<VqSweepPoint> sweep_vq(const LatticeSpec& spec,
                                   const Eigen::Ref<const Vector>& vq_grid) {
  if (!vq_grid.allFinite()) throw std::invalid_argument("sweep_vq: grid not finite");
  std::vector<VqSweepPoint> out;
  out.reserve(vq_grid.size());
  for (int k = 0; k < vq_grid.size(); ++k) {
    LatticeSpec point = spec;
    point.VQ = vq_grid[k];
    VqSweepPoint row;
    row.vq = point.VQ;
    row.spectrum = eigendecompose(build_y_coupler(point));
    row.gaps = find_gap_states(row.spectrum, point);
    out.push_back(std::move(row));
  }
  return out;
}

double four_site_gap(double V, double t1, double tQ) {
  if (t1 <= 0.0) throw std::invalid_argument("four_site_gap: t1 must be > 0");
  return tQ * V / (std::numbers::sqrt2 * t1);
}

double anticrossing_gap_3level(double VC, double VS, double tQ, double tc) {
  if (VC == VS) throw std::invalid_argument("anticrossing_gap_3level: VC == VS");
  return (tc * tc + tQ * tQ) / (VC - VS);
}

double lzsm_probability(double f0, double omega_dot) {
  if (!(omega_dot > 0.0))
    throw std::invalid_argument("lzsm_probability: sweep rate must be > 0");
  const double pi = std::numbers::pi;
  return std::exp(-2.0 * pi * pi * f0 * f0 / omega_dot);
}

}  // namespace chiralwg
