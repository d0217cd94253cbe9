#pragma once

#include "chiralwg/lattice.hpp"

namespace fixtures {

/// The 10-cell reference system used across the test suite.
inline chiralwg::LatticeSpec pstd(double vq = -37.5e6) {
  chiralwg::LatticeSpec s;
  s.p = 10;
  s.V = 37.5e6;
  s.t1 = 120e6;
  s.t2 = 150e6;
  s.tQ = 62.5e6;
  s.VQ = vq;
  return s;
}

/// The two p = 4 circuit fixtures (7 GHz offset, 1 nH inductors).
inline chiralwg::LatticeSpec cq1() {
  chiralwg::LatticeSpec s;
  s.p = 4;
  s.V = 37.5e6;
  s.t1 = 110e6;
  s.t2 = 150e6;
  s.tQ = 75e6;
  s.VQ = 0.0;
  return s;
}

inline chiralwg::LatticeSpec cq2() {
  chiralwg::LatticeSpec s;
  s.p = 4;
  s.V = 15e6;
  s.t1 = 60e6;
  s.t2 = 48e6;
  s.tQ = 30e6;
  s.VQ = 0.0;
  return s;
}

inline constexpr double kCircuitF0 = 7e9;
inline constexpr double kCircuitL0 = 1e-9;

}  // namespace fixtures
