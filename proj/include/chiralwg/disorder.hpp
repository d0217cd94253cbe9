#pragma once

#include <cstdint>
#include <vector>

#include "chiralwg/lattice.hpp"
#include "chiralwg/types.hpp"

namespace chiralwg {

enum class DisorderDistribution { Gaussian, Uniform };

struct DisorderConfig {
  double sigma_rel = 0.0;
  int n_samples = 1;
  DisorderDistribution distribution = DisorderDistribution::Gaussian;
  std::uint64_t seed = 0;
  PortSet ports;  ///< empty: chirality from the gap eigenvector occupation

  void validate() const;
};

/// One disordered realization: every +-V on-site energy and every chain bond
/// (t1/t2 class, including the center couplings) is multiplied by an
/// independent (1 + delta); the qubit potential and its coupling tQ stay
/// exact. Deterministic in (seed, sample_index) regardless of execution
/// order, via a counter-based per-sample stream.
SiteGraph sample_disordered(const LatticeSpec& spec, const DisorderConfig& cfg,
                            int sample_index);

struct DisorderReport {
  std::vector<double> chis;  ///< per-sample chirality, in sample order
  double mean = 0.0;    ///< over finite samples
  double stddev = 0.0;  ///< over finite samples
  double median = 0.0;  ///< nearest-rank over all samples
  double q05 = 0.0;
  double q95 = 0.0;
  int n_infinite = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo chirality. With ports: chi from the LDOS probed at each
/// sample's own gap eigenvalue nearest VQ (disorder shifts the pole; probing
/// off-pole would understate chi). Without ports: chi from that eigenvector's
/// occupation. Infinite samples are excluded from mean/stddev but counted.
DisorderReport mc_chirality(const LatticeSpec& spec, const DisorderConfig& cfg);

namespace detail {

/// splitmix64 stream; normals via Box-Muller, two uniforms per draw.
struct SampleRng {
  std::uint64_t state;

  SampleRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next_u64();
  double uniform01();  ///< in (0, 1]
  double normal();
};

}  // namespace detail

}  // namespace chiralwg
