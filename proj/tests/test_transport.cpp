#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chiralwg/cqed.hpp"
#include "chiralwg/spectra.hpp"
#include "chiralwg/transport.hpp"
#include "fixtures.hpp"

using namespace chiralwg;

namespace {

EffectiveHamiltonian pstd_with_ports(double gamma, double vq = -37.5e6) {
  const LatticeSpec spec = fixtures::pstd(vq);
  return attach_ports(build_y_coupler(spec),
                      {{0, gamma}, {spec.n_chain_sites() - 1, gamma}});
}

}  // namespace

TEST_CASE("greens function basics") {
  SUBCASE("single site is the textbook resolvent") {
    SiteGraph g;
    g.onsite = Vector::Constant(1, 3.0);
    const EffectiveHamiltonian h = attach_ports(g, {});
    const Complex got = greens_function(h, 5.0, 0.25)(0, 0);
    CHECK(std::abs(got - 1.0 / Complex(5.0 - 3.0, 0.25)) < 1e-15);
  }

  SUBCASE("complex-symmetric H' gives a symmetric inverse") {
    const EffectiveHamiltonian h = pstd_with_ports(12.5e6);
    const ComplexMatrix g = greens_function(h, 10e6, 0.0);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-12 * g.cwiseAbs().maxCoeff());
  }

  SUBCASE("portless resolvent in the gap is real at eta = 0") {
    const LatticeSpec spec = fixtures::pstd();
    const EffectiveHamiltonian h = attach_ports(build_y_coupler(spec), {});
    const ComplexMatrix g = greens_function(h, 5e6, 0.0);
    CHECK(g.imag().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("probing an eigenvalue portless with eta = 0 errors with advice") {
    const LatticeSpec spec = fixtures::pstd();
    const SiteGraph graph = build_y_coupler(spec);
    const EffectiveHamiltonian h = attach_ports(graph, {});
    const double pole = eigendecompose(graph).eigenvalues[7];
    CHECK_THROWS_WITH_AS(greens_function(h, pole, 0.0),
                         doctest::Contains("eta > 0"), std::runtime_error);
  }
}

TEST_CASE("zero broadening gives the identity S-matrix") {
  const LatticeSpec spec = fixtures::pstd();
  const EffectiveHamiltonian h = attach_ports(
      build_y_coupler(spec), {{0, 0.0}, {spec.n_chain_sites() - 1, 0.0}});
  const ComplexMatrix s = s_matrix(greens_function(h, 5e6, 0.0), h.ports);
  CHECK((s - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scattering fixed points at the edge state") {
  const double v = 37.5e6;
  for (double gamma : {12.5e6, 250e6, 1.25e9}) {
    const EffectiveHamiltonian h = pstd_with_ports(gamma);
    const ComplexMatrix g = greens_function(h, -v, 0.0);
    const ComplexMatrix s = s_matrix(g, h.ports);
    CAPTURE(gamma);
    CHECK(std::abs(s(0, 0) - Complex(-1.0, 0.0)) < 1e-6);
    CHECK(std::abs(s(1, 0)) < 1e-8);
    // the opposite port follows the closed form to near machine precision
    const double wf = w_f_approx(120e6, 150e6, 10);
    const EdgeReflectance closed = edge_reflectance_closed_form(v, gamma, wf);
    CHECK(std::abs(s(1, 1) - closed.opposite) < 1e-8);
    CHECK(std::abs(std::abs(closed.opposite) - 1.0) < 1e-12);
  }
}

TEST_CASE("edge reflectance closed form") {
  SUBCASE("limits") {
    const EdgeReflectance at_zero = edge_reflectance_closed_form(37.5e6, 0.0, 0.5);
    CHECK(at_zero.facing == Complex(-1.0, 0.0));
    CHECK(at_zero.opposite == Complex(1.0, 0.0));
    const EdgeReflectance huge = edge_reflectance_closed_form(37.5e6, 1e18, 0.5);
    CHECK(std::abs(huge.opposite - Complex(-1.0, 0.0)) < 1e-6);
  }
  SUBCASE("unit modulus on the 2V/(Gamma w_f) = 1 point") {
    // Gamma w_f = 2V puts the phase a quarter turn around the circle
    const double v = 1.0, wf = 0.5, gamma = 2.0 * v / wf;
    const EdgeReflectance r = edge_reflectance_closed_form(v, gamma, wf);
    CHECK(std::abs(r.opposite - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(std::abs(r.opposite) - 1.0) < 1e-12);
  }
}

TEST_CASE("w_f approximation") {
  CHECK(w_f_approx(120e6, 150e6, 0) == doctest::Approx(1.0));
  CHECK(w_f_approx(120e6, 150e6, 10) == doctest::Approx(4.1814e-3).epsilon(1e-4));
  CHECK(w_f_approx(120e6, 150e6, 60) < 1e-11);  // decays to zero with p
  CHECK_THROWS_AS(w_f_approx(150e6, 150e6, 3), std::invalid_argument);
}

TEST_CASE("ldos") {
  SUBCASE("single ported site peaks at 1/(pi Gamma)") {
    SiteGraph g;
    g.onsite = Vector::Constant(1, 2e6);
    const double gamma = 0.5e6;
    const EffectiveHamiltonian h = attach_ports(g, {{0, gamma}});
    const Vector rho = ldos(greens_function(h, 2e6, 0.0));
    CHECK(rho[0] == doctest::Approx(1.0 / (std::numbers::pi * gamma)).epsilon(1e-12));
  }

  SUBCASE("edge-state LDOS concentrates on the left") {
    const EffectiveHamiltonian h = pstd_with_ports(12.5e6);
    const Vector rho = ldos(greens_function(h, -37.5e6, 0.0));
    double left = 0.0, right = 0.0;
    for (int i = 0; i < h.central; ++i) left += rho[i];
    for (int i = h.central + 1; i < 43; ++i) right += rho[i];
    CHECK(left > 1e3 * right);
  }

  SUBCASE("consistency with S11 at every sweep point") {
    const EffectiveHamiltonian h = pstd_with_ports(250e6);
    const Vector grid = linspaced(-600e6, 600e6, 101);
    for (const ScatterResult& r : frequency_sweep(h, grid, 0.0)) {
      const double via_s =
          ((1.0 - r.s(0, 0)) / (2.0 * std::numbers::pi * 250e6)).real();
      CHECK(std::abs(r.ldos[0] - via_s) < 1e-10);
    }
  }

  SUBCASE("spectral weight integrates to one per site") {
    // small system, every mode broadened by the strong end ports
    LatticeSpec spec = fixtures::pstd();
    spec.p = 1;
    const SiteGraph graph = build_y_coupler(spec);
    const double gamma = 60e6;
    const EffectiveHamiltonian h =
        attach_ports(graph, {{0, gamma}, {spec.n_chain_sites() - 1, gamma}});
    const int n = graph.n_sites();
    const double span = 60e9;
    const int points = 240001;
    const Vector grid = linspaced(-span, span, points);
    Vector integral = Vector::Zero(n);
    Vector prev = ldos(greens_function(h, grid[0], 0.0));
    for (int k = 1; k < points; ++k) {
      const Vector cur = ldos(greens_function(h, grid[k], 0.0));
      integral += 0.5 * (grid[k] - grid[k - 1]) * (prev + cur);
      prev = cur;
    }
    for (int i = 0; i < n; ++i)
      CHECK(integral[i] == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("chirality from LDOS") {
  SUBCASE("symmetric profile gives one") {
    Vector rho = Vector::Constant(9, 0.3);
    CHECK(chirality_from_ldos(rho, 4) == doctest::Approx(1.0));
  }

  SUBCASE("gamma -> 0 limit diverges") {
    // without ports the resolvent in the gap is real, so the LDOS vanishes
    const LatticeSpec spec = fixtures::pstd();
    const EffectiveHamiltonian h = attach_ports(build_y_coupler(spec), {});
    const Vector rho = ldos(greens_function(h, -37.5e6 + 5e5, 0.0));
    CHECK(std::isinf(chirality_from_ldos(rho, h.central, h.qubit)));
  }

  SUBCASE("chi decreases with Gamma, then flattens") {
    const Vector gammas = logspaced(12.5e6, 125e9, 30);
    std::vector<double> chi;
    for (int k = 0; k < gammas.size(); ++k) {
      const EffectiveHamiltonian h = pstd_with_ports(gammas[k]);
      const Vector rho = ldos(greens_function(h, -37.5e6, 0.0));
      chi.push_back(chirality_from_ldos(rho, h.central, h.qubit));
    }
    for (size_t k = 1; k < chi.size(); ++k) CHECK(chi[k] <= chi[k - 1] * 1.001);
    // quadratic drop at small Gamma, settling at the strong-coupling end
    const double early_slope = std::log(chi[0] / chi[4]) /
                               std::log(gammas[4] / gammas[0]);
    const double late_slope = std::log(chi[chi.size() - 5] / chi.back()) /
                              std::log(gammas[29] / gammas[24]);
    CHECK(early_slope > 1.5);
    CHECK(late_slope < 1.0);
  }
}

TEST_CASE("frequency sweep") {
  const LatticeSpec spec = fixtures::pstd(-37.5e6);

  SUBCASE("singleton grid") {
    const EffectiveHamiltonian h = pstd_with_ports(12.5e6);
    const auto rows = frequency_sweep(h, Vector::Constant(1, 0.0), 0.0);
    CHECK(rows.size() == 1);
  }

  SUBCASE("two |1 - S11| peaks inside the gap") {
    const EffectiveHamiltonian h = pstd_with_ports(1e6);
    const double half = band_gap_half_width(spec);
    const Vector grid = linspaced(-0.95 * half, 0.95 * half, 4001);
    const auto rows = frequency_sweep(h, grid, 0.0);
    Vector contrast(grid.size());
    for (int k = 0; k < grid.size(); ++k)
      contrast[k] = std::abs(1.0 - rows[k].s(0, 0));
    const auto peaks = find_peaks(grid, contrast);
    // oracle: the portless spectrum carries exactly two gap states
    const GapReport rep =
        find_gap_states(eigendecompose(build_y_coupler(spec)), spec);
    CHECK(peaks.size() == rep.in_gap.size());
    CHECK(peaks.size() == 2);
  }

  SUBCASE("|S_N1| transmission peaks align with the portless eigenvalues") {
    const LatticeSpec cq = fixtures::cq1();
    const double gamma = 5e6;
    const SiteGraph g = build_y_coupler(cq);
    const EffectiveHamiltonian h =
        attach_ports(g, {{0, gamma}, {cq.n_chain_sites() - 1, gamma}});
    const Vector grid = linspaced(-700e6, 700e6, 14001);
    const auto rows = frequency_sweep(h, grid, 0.0);
    Vector trans(grid.size());
    for (int k = 0; k < grid.size(); ++k) trans[k] = std::abs(rows[k].s(1, 0));
    const auto peaks = find_peaks(grid, trans);
    const Vector eigs = eigendecompose(g).eigenvalues;
    for (double pk : peaks) {
      double best = 1e300;
      for (int k = 0; k < eigs.size(); ++k)
        best = std::min(best, std::abs(pk - eigs[k]));
      CHECK(best < gamma);
    }
  }
}

TEST_CASE("unitarity and reciprocity at real frequencies") {
  const EffectiveHamiltonian h = pstd_with_ports(250e6);
  const Vector grid = linspaced(-650e6, 650e6, 200);
  for (const ScatterResult& r : frequency_sweep(h, grid, 0.0)) {
    const double flux = std::norm(r.s(0, 0)) + std::norm(r.s(1, 0));
    CHECK(std::abs(flux - 1.0) < 1e-6);
    CHECK(std::abs(r.s(0, 1) - r.s(1, 0)) < 1e-12);
    // full port-restricted unitarity
    const ComplexMatrix probe = r.s.adjoint() * r.s;
    CHECK((probe - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(r.ldos.minCoeff() >= -1e-12);
  }
}

TEST_CASE("arg(S_NN) climbs toward pi as Gamma grows") {
  const Vector gammas = logspaced(12.5e6, 1.25e12, 24);
  double prev = -1.0;
  for (int k = 0; k < gammas.size(); ++k) {
    const EffectiveHamiltonian h = pstd_with_ports(gammas[k]);
    const ComplexMatrix g = greens_function(h, -37.5e6, 0.0);
    const Complex snn = s_matrix(g, h.ports)(1, 1);
    const double arg = std::arg(snn);
    CHECK(arg >= prev - 1e-9);
    CHECK(arg >= 0.0);
    CHECK(arg <= std::numbers::pi);
    prev = arg;
  }
}
