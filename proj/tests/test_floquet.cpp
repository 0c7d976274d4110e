#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chiral/floquet.hpp"
#include "chiral/ring.hpp"

using namespace chiral;

namespace {

// High-precision references (25-digit arbitrary-precision evaluation).
struct BesselRef {
  int order;
  double x;
  double value;
};

constexpr BesselRef kBesselRefs[] = {
    {0, 0.5, 0.9384698072408129042284},
    {1, 0.5, 0.242268457674873886384},
    {0, 2.37, 0.01820810796081048046787},
    {1, 2.37, 0.5264581585769610151084},
    {2, 2.37, 0.4260603802897895123026},
    {3, 2.37, 0.1926310908572828551738},
    {4, 2.37, 0.061613267450167061143},
    {5, 2.37, 0.01534618323610805916265},
    {6, 2.37, 0.00313856055028888177901},
    {0, 2.4048, 1.32682843011715677119e-5},
    {5, 10.0, -0.2340615281867936404437},
    {10, 1.0, 2.630615123687453206998e-10},
    {20, 50.0, -0.1167043527595797373415},
    {50, 50.0, 0.1214090218976150638201},
    {100, 30.0, 4.578801528175244529634e-42},
    {0, 50.0, 0.05581232766925181500475},
    {1, 50.0, -0.09751182812517513766146},
    {7, 13.7, -0.1926848038585554307674},
    {40, 2.37, 1.052467159623818178501e-45},
    {200, 50.0, 2.13836900423911736806e-97},
    {3, 0.001, 2.083333203125003385313e-11},
    {2, 25.0, -0.1062948032423813085456},
};

}  // namespace

TEST_CASE("bessel_first_kind matches arbitrary-precision references") {
  for (const auto& ref : kBesselRefs) {
    CHECK(std::abs(bessel_first_kind(ref.order, ref.x) - ref.value) < 1e-13);
  }
}

TEST_CASE("bessel_first_kind: origin, first zero, and symmetries") {
  CHECK(bessel_first_kind(0, 0.0) == 1.0);
  for (int m = 1; m <= 6; ++m) CHECK(bessel_first_kind(m, 0.0) == 0.0);
  CHECK(std::abs(bessel_first_kind(0, 2.4048)) < 5e-5);
  CHECK(std::abs(bessel_first_kind(0, 2.404825557695773)) < 1e-13);
  for (int m : {1, 2, 3, 7}) {
    const double x = 1.9;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(bessel_first_kind(-m, x) == sign * bessel_first_kind(m, x));
    CHECK(bessel_first_kind(m, -x) == sign * bessel_first_kind(m, x));
  }
  CHECK_THROWS_AS(bessel_first_kind(201, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_first_kind(0, 50.5), std::domain_error);
}

TEST_CASE("Jacobi-Anger closure at z = 2.37") {
  const double z = 2.37;
  for (int i = 0; i < 16; ++i) {
    const double alpha = -kPi + (2.0 * kPi * i) / 16.0 + 0.1;
    Complex sum = 0.0;
    for (int m = -40; m <= 40; ++m) {
      sum += bessel_first_kind(m, z) * std::polar(1.0, m * alpha);
    }
    const Complex expected = std::polar(1.0, z * std::sin(alpha));
    CHECK(std::abs(sum - expected) < 1e-10);
  }
}

TEST_CASE("driven_hamiltonian: shape, symmetry, and special cases") {
  const DriveParams p{1.0, 40.0 * 2.37, 40.0, kPi / 3.0};
  const DrivenHamiltonian driven = driven_hamiltonian(p);
  const Matrix h0 = driven.at(0.0);
  CHECK(h0(1, 0) == Complex(-1.0, 0.0));
  CHECK(h0(2, 1) == Complex(-1.0, 0.0));
  CHECK(h0(2, 0) == Complex(0.0, 0.0));
  CHECK(h0(0, 0).real() ==
        doctest::Approx(p.amplitude * std::cos(p.phase)).epsilon(1e-15));
  CHECK(h0(2, 2).real() ==
        doctest::Approx(-p.amplitude * std::cos(-p.phase)).epsilon(1e-15));
  CHECK(hermiticity_defect(h0) == 0.0);

  // A = 0: static open chain.
  const DrivenHamiltonian quiet = driven_hamiltonian({1.0, 0.0, 40.0, 0.3});
  CHECK((quiet.at(0.0) - quiet.at(1.7)).cwiseAbs().maxCoeff() == 0.0);

  // phi = 0: f3(t) = -f1(t) at all times.
  const DrivenHamiltonian anti = driven_hamiltonian({1.0, 5.0, 40.0, 0.0});
  for (double t : {0.0, 0.11, 0.73}) {
    const Matrix ht = anti.at(t);
    CHECK(ht(2, 2).real() == doctest::Approx(-ht(0, 0).real()).epsilon(1e-14));
  }
}

TEST_CASE("effective_couplings: vanishing cases") {
  // phi = 0 or pi/2 kills every sin(2 m phi) term.
  for (double phi : {0.0, kPi / 2.0}) {
    const EffectiveCouplings ec = effective_couplings({1.0, 80.0, 40.0, phi});
    CHECK(std::abs(ec.j_nnn) < 1e-15);
  }
  // A = 0: bare chain.
  const EffectiveCouplings bare = effective_couplings({1.0, 0.0, 40.0, 1.0});
  CHECK(bare.j_eff == 1.0);
  CHECK(std::abs(bare.j_nnn) == 0.0);
  CHECK(bare.j_nnn.real() == 0.0);
}

TEST_CASE("effective_couplings near the operating point") {
  const double omega = 40.0;
  const EffectiveCouplings ec =
      effective_couplings({1.0, 2.37 * omega, omega, kPi / 3.0});
  CHECK(ec.j_nnn.real() == 0.0);
  // Near-matching: |j_eff| ~ |j_nnn| to a few percent of J_eff.
  CHECK(std::abs(std::abs(ec.j_eff) - std::abs(ec.j_nnn)) < 0.2 * std::abs(ec.j_eff));
  CHECK(ec.j_nnn.imag() > 0.0);  // phi = +pi/3 drives clockwise
}

TEST_CASE("effective_couplings series is converged at the default truncation") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> xdist(0.0, 5.0);
  std::uniform_real_distribution<double> pdist(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const DriveParams p{1.0, xdist(gen) * 40.0, 40.0, pdist(gen)};
    const Complex j20 = effective_couplings(p, 20).j_nnn;
    const Complex j40 = effective_couplings(p, 40).j_nnn;
    const Complex j60 = effective_couplings(p, 60).j_nnn;
    CHECK(std::abs(j20 - j60) < 1e-13);
    CHECK(std::abs(std::abs(j40) - std::abs(j60)) < 1e-12);
  }
}

TEST_CASE("effective Hamiltonian spectrum is {-r, 0, r}") {
  std::mt19937 gen(29);
  std::uniform_real_distribution<double> jdist(0.5, 2.0);
  std::uniform_real_distribution<double> xdist(0.0, 5.0);
  std::uniform_real_distribution<double> odist(10.0, 100.0);
  std::uniform_real_distribution<double> pdist(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const double j = jdist(gen);
    const DriveParams p{j, xdist(gen) * odist(gen) * j, odist(gen) * j, pdist(gen)};
    const EffectiveCouplings ec = effective_couplings(p);
    const EigenSystem es = hermitian_eig(effective_hamiltonian(ec));
    const double r = effective_level_spacing(ec);
    CHECK(std::abs(es.eigenvalues[0] + r) < 1e-10);
    CHECK(std::abs(es.eigenvalues[1]) < 1e-10);
    CHECK(std::abs(es.eigenvalues[2] - r) < 1e-10);
  }
}

TEST_CASE("effective chain without NNN coupling is a bare trimer") {
  EffectiveCouplings ec{0.8, Complex(0.0, 0.0), 40};
  const EigenSystem es = hermitian_eig(effective_hamiltonian(ec));
  CHECK(es.eigenvalues[0] == doctest::Approx(-std::sqrt(2.0) * 0.8).epsilon(1e-12));
  CHECK(std::abs(es.eigenvalues[1]) < 1e-12);
  CHECK(es.eigenvalues[2] == doctest::Approx(std::sqrt(2.0) * 0.8).epsilon(1e-12));
}

TEST_CASE("matched couplings close the ring with flux +-pi/2") {
  const double omega = 40.0;
  const double x = solve_matching(omega, kPi / 3.0);
  const EffectiveCouplings ec = effective_couplings({1.0, x * omega, omega, kPi / 3.0});
  const Matrix h = effective_hamiltonian(ec);
  CHECK(std::abs(loop_flux(h, {1, 2, 3})) == doctest::Approx(kPi / 2.0).epsilon(1e-9));
  // Uniform bond magnitudes restore translational invariance.
  CHECK(std::abs(bond_magnitude(h, 2, 1) - bond_magnitude(h, 3, 1)) < 1e-12);
  // Matched ring circulates perfectly.
  const double step = effective_circulation_period(ec) / 3.0;
  for (int n = 1; n <= 3; ++n) {
    CHECK(step_fidelity(h, step, n) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("solve_matching: operating point and residual") {
  const double x = solve_matching(40.0, kPi / 3.0);
  CHECK(std::abs(x - 2.37) < 0.05);
  const EffectiveCouplings ec = effective_couplings({1.0, x * 40.0, 40.0, kPi / 3.0});
  CHECK(std::abs(std::abs(ec.j_eff) - std::abs(ec.j_nnn)) < 1e-12);
}

TEST_CASE("solve_matching: no root when the drive phase is neutral") {
  CHECK_THROWS_AS(solve_matching(40.0, 0.0), std::domain_error);
}

TEST_CASE("drive phase sign sets the circulation sense") {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> pdist(0.1, kPi / 2.0 - 0.1);
  for (int trial = 0; trial < 8; ++trial) {
    const double phi = pdist(gen);
    const Complex plus = effective_couplings({1.0, 2.3 * 40.0, 40.0, phi}).j_nnn;
    const Complex minus = effective_couplings({1.0, 2.3 * 40.0, 40.0, -phi}).j_nnn;
    CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-13));
  }
}

TEST_CASE("stroboscopic agreement between the driven chain and its effective model") {
  const double omega = 40.0;
  const double phi = kPi / 3.0;
  const double x = solve_matching(omega, phi);
  const DriveParams p{1.0, x * omega, omega, phi};
  CHECK(high_frequency(p));
  const EffectiveCouplings ec = effective_couplings(p);
  const double circulation = effective_circulation_period(ec);

  // Over the first transfer step the models agree to a few percent; over a
  // full circulation the dropped O(1/omega^2) quasi-energy correction
  // accumulates secularly to ~0.1 (reference value 0.0986 from a high-order
  // ODE integration at these parameters).
  const DrivenComparison one_step =
      compare_driven_vs_effective(p, circulation / 3.0, 256);
  CHECK(one_step.max_deviation < 0.05);

  const DrivenComparison cmp = compare_driven_vs_effective(p, circulation, 256);
  CHECK(cmp.max_deviation > 0.05);
  CHECK(cmp.max_deviation < 0.12);

  // Resolution doubling moves the deviation by a few 1e-3: the 0.1-scale
  // gap is the high-frequency truncation, not integrator error.
  const DrivenComparison fine = compare_driven_vs_effective(p, circulation, 512);
  CHECK(std::abs(fine.max_deviation - cmp.max_deviation) < 1e-2);
}

TEST_CASE("A = 0 comparison: models coincide") {
  const DriveParams p{1.0, 0.0, 40.0, 0.7};
  const DrivenComparison cmp = compare_driven_vs_effective(p, 3.0, 64);
  CHECK(cmp.max_deviation < 1e-8);
}

TEST_CASE("negative drive phase reverses the stroboscopic circulation order") {
  const double omega = 40.0;
  const double x = solve_matching(omega, kPi / 3.0);
  const DriveParams cw{1.0, x * omega, omega, kPi / 3.0};
  const DriveParams ccw{1.0, x * omega, omega, -kPi / 3.0};
  const double circulation =
      effective_circulation_period(effective_couplings(cw));

  auto first_peak_times = [&](const DriveParams& p) {
    const DrivenComparison cmp = compare_driven_vs_effective(p, circulation, 256);
    std::array<double, 3> peak_time{};
    for (int site = 1; site < 3; ++site) {
      double best = -1.0;
      for (std::size_t i = 0; i < cmp.exact.times.size(); ++i) {
        const double v = cmp.exact.records(static_cast<Eigen::Index>(i), site);
        if (v > best) {
          best = v;
          peak_time[site] = cmp.exact.times[i];
        }
      }
    }
    return peak_time;
  };

  const auto cw_peaks = first_peak_times(cw);
  CHECK(cw_peaks[1] < cw_peaks[2]);  // site 2 peaks before site 3
  const auto ccw_peaks = first_peak_times(ccw);
  CHECK(ccw_peaks[2] < ccw_peaks[1]);  // reversed order
}

TEST_CASE("driven site-2 population peaks near one at the effective step time") {
  const double omega = 40.0;
  const double x = solve_matching(omega, kPi / 3.0);
  const DriveParams p{1.0, x * omega, omega, kPi / 3.0};
  const double circulation =
      effective_circulation_period(effective_couplings(p));
  const DrivenComparison cmp = compare_driven_vs_effective(p, circulation, 256);
  Eigen::Index imax;
  const double peak = cmp.exact.records.col(1).maxCoeff(&imax);
  CHECK(peak > 0.98);
  const double t_peak = cmp.exact.times[static_cast<std::size_t>(imax)];
  CHECK(std::abs(t_peak - circulation / 3.0) < 0.05 * circulation);
}
