#include "chiralwg/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chiralwg/parallel.hpp"
#include "chiralwg/spectra.hpp"
#include "chiralwg/transport.hpp"

namespace chiralwg {

namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
  state = seed;
  std::uint64_t mixed = splitmix64(state) ^ (index * 0xD2B74407B1CE6E93ULL);
  state = mixed;
  (void)splitmix64(state);
}

std::uint64_t SampleRng::next_u64() { return splitmix64(state); }

double SampleRng::uniform01() {
  return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double SampleRng::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

void DisorderConfig::validate() const {
  if (!(sigma_rel >= 0.0))
    throw std::invalid_argument("DisorderConfig: sigma_rel must be >= 0");
  if (n_samples < 1)
    throw std::invalid_argument("DisorderConfig: n_samples must be >= 1");
}

SiteGraph sample_disordered(const LatticeSpec& spec, const DisorderConfig& cfg,
                            int sample_index) {
  cfg.validate();
  SiteGraph g = build_y_coupler(spec);
  detail::SampleRng rng(cfg.seed, static_cast<std::uint64_t>(sample_index));
  auto delta = [&]() {
    return cfg.distribution == DisorderDistribution::Gaussian
               ? cfg.sigma_rel * rng.normal()
               : cfg.sigma_rel * (2.0 * rng.uniform01() - 1.0);
  };
  for (int s = 0; s < g.n_sites(); ++s) {
    if (s == g.central || s == g.qubit) continue;
    g.onsite[s] *= 1.0 + delta();
  }
  for (Bond& b : g.bonds) {
    if (b.j == g.qubit) continue;  // tQ is the tunable element, held exact
    b.t *= 1.0 + delta();
  }
  return g;
}

namespace {

double quantile_nearest_rank(const std::vector<double>& sorted, double q) {
  const int n = static_cast<int>(sorted.size());
  int rank = static_cast<int>(std::ceil(q * n));
  rank = std::clamp(rank, 1, n);
  return sorted[rank - 1];
}

}  // namespace

DisorderReport mc_chirality(const LatticeSpec& spec, const DisorderConfig& cfg) {
  cfg.validate();
  spec.validate();

  DisorderReport report;
  report.n_samples = cfg.n_samples;
  report.seed = cfg.seed;
  report.chis.assign(cfg.n_samples, 0.0);

  parallel_for(cfg.n_samples, [&](int i) {
    const SiteGraph g = sample_disordered(spec, cfg, i);
    const Spectrum s = eigendecompose(g);
    const GapReport gaps = find_gap_states(s, spec);
    // the probe state: the in-gap eigenvalue nearest the qubit setting
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const GapState& gs : gaps.in_gap) {
      const double d = std::abs(gs.energy - spec.VQ);
      if (d < best_dist) {
        best_dist = d;
        best = gs.index;
      }
    }
    if (best < 0) {
      // disorder pushed every state out of the gap; fall back to the
      // globally nearest eigenvalue
      (s.eigenvalues.array() - spec.VQ).abs().minCoeff(&best);
    }
    if (cfg.ports.empty()) {
      report.chis[i] =
          chirality_from_probs(occupation(s.eigenvectors.col(best)), g.central,
                               g.qubit);
    } else {
      const EffectiveHamiltonian h = attach_ports(g, cfg.ports);
      const ComplexMatrix green = greens_function(h, s.eigenvalues[best], 0.0);
      report.chis[i] = chirality_from_ldos(ldos(green), g.central, g.qubit);
    }
  });

  std::vector<double> sorted = report.chis;
  std::sort(sorted.begin(), sorted.end());
  report.median = quantile_nearest_rank(sorted, 0.5);
  report.q05 = quantile_nearest_rank(sorted, 0.05);
  report.q95 = quantile_nearest_rank(sorted, 0.95);

  double sum = 0.0;
  int n_finite = 0;
  for (double chi : sorted) {
    if (std::isinf(chi)) {
      ++report.n_infinite;
    } else {
      sum += chi;
      ++n_finite;
    }
  }
  report.mean = n_finite > 0 ? sum / n_finite
                             : std::numeric_limits<double>::infinity();
  double ss = 0.0;
  for (double chi : sorted)
    if (!std::isinf(chi)) ss += (chi - report.mean) * (chi - report.mean);
  report.stddev = n_finite > 0 ? std::sqrt(ss / n_finite) : 0.0;
  return report;
}

}  // namespace chiralwg
