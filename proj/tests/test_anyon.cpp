#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "chiral/anyon.hpp"
#include "chiral/ring.hpp"

using namespace chiral;

namespace {

// Brute-force oracle: applies the Hamiltonian term by term as a sequence of
// elementary operators on occupation kets. Independent of the matrix-builder
// code path (which assembles the forward-hop matrix and adds its adjoint).
using Ket = std::map<std::array<int, 3>, Complex>;

void annihilate(int site, Ket& ket) {
  Ket out;
  for (const auto& [occ, amp] : ket) {
    if (occ[site] == 0) continue;
    std::array<int, 3> next = occ;
    next[site] -= 1;
    out[next] += amp * std::sqrt(double(occ[site]));
  }
  ket = std::move(out);
}

void create(int site, Ket& ket) {
  Ket out;
  for (const auto& [occ, amp] : ket) {
    std::array<int, 3> next = occ;
    next[site] += 1;
    out[next] += amp * std::sqrt(double(next[site]));
  }
  ket = std::move(out);
}

void density_phase(int site, double angle, Ket& ket) {
  for (auto& [occ, amp] : ket) {
    amp *= std::polar(1.0, angle * occ[site]);
  }
}

Matrix oracle_hamiltonian(const AnyonParams& p) {
  Matrix h = Matrix::Zero(6, 6);
  for (int s = 0; s < 6; ++s) {
    Ket accum;
    for (int j = 0; j < 3; ++j) {
      const int next = (j + 1) % 3;
      // -J e^{-i theta n_j} b_{j+1}^dag b_j
      Ket fwd{{kTwoParticleBasis[s], 1.0}};
      annihilate(j, fwd);
      create(next, fwd);
      density_phase(j, -p.theta, fwd);
      for (const auto& [occ, amp] : fwd) accum[occ] += -p.hopping * amp;
      // H.c.: -J b_j^dag b_{j+1} e^{+i theta n_j}
      Ket bwd{{kTwoParticleBasis[s], 1.0}};
      density_phase(j, +p.theta, bwd);
      annihilate(next, bwd);
      create(j, bwd);
      for (const auto& [occ, amp] : bwd) accum[occ] += -p.hopping * amp;
    }
    // (U/2) n_j (n_j - 1)
    for (int n : kTwoParticleBasis[s]) {
      accum[kTwoParticleBasis[s]] += 0.5 * p.interaction * n * (n - 1);
    }
    for (const auto& [occ, amp] : accum) {
      h(basis_index(occ), s) += amp;
    }
  }
  return h;
}

}  // namespace

TEST_CASE("basis: six states, doublons first, each carrying two particles") {
  for (int s = 0; s < 6; ++s) {
    int total = 0;
    for (int n : kTwoParticleBasis[s]) total += n;
    CHECK(total == 2);
  }
  CHECK(basis_index({2, 0, 0}) == 0);
  CHECK(basis_index({0, 1, 1}) == 5);
  CHECK_THROWS_AS(basis_index({3, 0, 0}), std::invalid_argument);
}

TEST_CASE("two-particle Hamiltonian matches the operator-application oracle entrywise") {
  for (double theta : {0.0, kPi / 6.0, -kPi / 6.0, 1.234, 2.9}) {
    const AnyonParams p{1.0, 30.0, theta};
    const Matrix h = build_two_particle_hamiltonian(p);
    const Matrix ref = oracle_hamiltonian(p);
    CHECK((h - ref).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(hermiticity_defect(h) == 0.0);
  }
}

TEST_CASE("pinned matrix elements of the hopping network") {
  const double theta = 0.77;
  const Matrix h = build_two_particle_hamiltonian({1.0, 30.0, theta});
  // Dissociation out of the site-1 doublon leaves n_1 = 1 behind the hop.
  const Complex expected = -std::sqrt(2.0) * std::polar(1.0, -theta);
  CHECK(std::abs(h(basis_index({1, 1, 0}), basis_index({2, 0, 0})) - expected) <
        1e-15);
  // Recombination onto site 2 leaves n_1 = 0: no phase.
  CHECK(std::abs(h(basis_index({0, 2, 0}), basis_index({1, 1, 0})) -
                 Complex(-std::sqrt(2.0), 0.0)) < 1e-15);
  // Interaction diagonal: U on doublons, 0 on separated pairs.
  for (int s = 0; s < 3; ++s) CHECK(h(s, s) == Complex(30.0, 0.0));
  for (int s = 3; s < 6; ++s) CHECK(h(s, s) == Complex(0.0, 0.0));
}

TEST_CASE("theta = 0 reduces to the real Bose-Hubbard matrix") {
  const Matrix h = build_two_particle_hamiltonian({1.0, 20.0, 0.0});
  CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("theta -> -theta conjugates the Hamiltonian and preserves the spectrum") {
  const AnyonParams plus{1.0, 30.0, 0.9};
  const AnyonParams minus{1.0, 30.0, -0.9};
  const Matrix hp = build_two_particle_hamiltonian(plus);
  const Matrix hm = build_two_particle_hamiltonian(minus);
  CHECK((hm - hp.conjugate()).cwiseAbs().maxCoeff() == 0.0);
  const EigenSystem ep = hermitian_eig(hp);
  const EigenSystem em = hermitian_eig(hm);
  CHECK((ep.eigenvalues - em.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("doublon_effective: amplitudes, phases, flux, spectrum") {
  const AnyonParams p{1.0, 30.0, kPi / 6.0};
  const auto [model, hd] = doublon_effective(p);
  CHECK(model.hop_amplitude == doctest::Approx(2.0 / 30.0).epsilon(1e-15));
  CHECK(model.bond_phase == doctest::Approx(-kPi / 6.0).epsilon(1e-15));
  CHECK(model.onsite_shift == doctest::Approx(30.0 + 4.0 / 30.0).epsilon(1e-15));
  CHECK(model.flux == doctest::Approx(-kPi / 2.0).epsilon(1e-13));
  CHECK(hd(1, 0) == std::polar(2.0 / 30.0, -kPi / 6.0));
  CHECK(hd.diagonal().cwiseAbs().maxCoeff() == 0.0);
  // Flux -pi/2 in the +J convention renders the three levels equidistant.
  CHECK(equidistance_report(hermitian_eig(hd)).max_deviation < 1e-12);

  const auto [model_m, hd_m] = doublon_effective({1.0, 30.0, -kPi / 6.0});
  CHECK(model_m.flux == doctest::Approx(+kPi / 2.0).epsilon(1e-13));

  // theta = 0: uniform real ring, spectrum {-J_d, -J_d, 2 J_d}.
  const auto [model0, hd0] = doublon_effective({1.0, 30.0, 0.0});
  const EigenSystem es0 = hermitian_eig(hd0);
  const double jd = model0.hop_amplitude;
  CHECK(es0.eigenvalues[0] == doctest::Approx(-jd).epsilon(1e-12));
  CHECK(es0.eigenvalues[1] == doctest::Approx(-jd).epsilon(1e-12));
  CHECK(es0.eigenvalues[2] == doctest::Approx(2.0 * jd).epsilon(1e-12));
}

TEST_CASE("doublon dynamics: start, conservation, clockwise sequence, peak") {
  const double u_over_j = 30.0;
  const AnyonParams p{1.0, u_over_j, kPi / 6.0};
  const double t_doublon = kPi * u_over_j / (3.0 * std::sqrt(3.0));
  const Trajectory traj = doublon_dynamics(p, 3.0 * t_doublon, 3001);

  CHECK(traj.records(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(traj.records(0, 1) < 1e-24);
  for (Eigen::Index i = 0; i < traj.records.rows(); ++i) {
    CHECK(traj.records.row(i).sum() == doctest::Approx(2.0).epsilon(1e-9));
  }

  auto argmax_time = [&](int site) {
    Eigen::Index imax;
    traj.records.col(site).maxCoeff(&imax);
    return traj.times[static_cast<std::size_t>(imax)];
  };
  const double t2 = argmax_time(1);
  const double t3 = argmax_time(2);
  CHECK(traj.records.col(1).maxCoeff() >= 1.9);
  CHECK(t2 < t3);                            // 1 -> 2 -> 3
  CHECK(std::abs(t2 - t_doublon) < 0.1 * t_doublon);

  // Leakage shrinks with interaction strength.
  const Trajectory strong = doublon_dynamics({1.0, 100.0, kPi / 6.0},
                                             kPi * 100.0 / std::sqrt(3.0), 3001);
  CHECK(strong.records.col(1).maxCoeff() >= 2.0 * 0.995);
}

TEST_CASE("negative statistical angle mirrors the circulation") {
  const AnyonParams p{1.0, 30.0, -kPi / 6.0};
  const Trajectory ccw = doublon_dynamics(p, 55.0, 1101);
  const Trajectory cw = doublon_dynamics({1.0, 30.0, kPi / 6.0}, 55.0, 1101);
  // Site 2 and site 3 curves exchange.
  CHECK((ccw.records.col(0) - cw.records.col(0)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((ccw.records.col(1) - cw.records.col(2)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((ccw.records.col(2) - cw.records.col(1)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spectrum versus theta: band structure and periodicity") {
  std::vector<double> grid;
  for (int i = 0; i <= 128; ++i) grid.push_back(2.0 * kPi * i / 128.0);
  const Eigen::MatrixXd bands = spectrum_vs_theta(1.0, 30.0, grid);

  // Three scattering levels near 0, three doublon levels within
  // 10 J^2/U of U.
  for (Eigen::Index i = 0; i < bands.rows(); ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(bands(i, k)) < 4.5);
      CHECK(std::abs(bands(i, 3 + k) - 30.0) < 10.0 / 30.0);
    }
  }
  // 2 pi periodicity: endpoints coincide.
  CHECK((bands.row(0) - bands.row(128)).cwiseAbs().maxCoeff() < 1e-10);
  // Continuity: adjacent-grid jumps bounded by a Lipschitz estimate
  // (||dH/dtheta||_F = sqrt(12) J for this network).
  const double lipschitz = 4.0;
  for (Eigen::Index i = 0; i + 1 < bands.rows(); ++i) {
    CHECK((bands.row(i + 1) - bands.row(i)).cwiseAbs().maxCoeff() <
          lipschitz * (grid[1] - grid[0]) + 1e-9);
  }
}

TEST_CASE("find_theta_eq: frozen branch roots at U/J = 30 and 1000") {
  // Reference roots from 40-digit arbitrary-precision diagonalization.
  const auto brackets = theta_eq_brackets();
  const double expected30[3] = {0.462905036982, 1.506859222648, 2.611336080100};
  const double expected1000[3] = {0.521733567281, 1.568798341416, 2.617858098237};
  const double asymptote[3] = {kPi / 6.0, kPi / 2.0, 5.0 * kPi / 6.0};
  for (int b = 0; b < 3; ++b) {
    const double root30 = find_theta_eq(1.0, 30.0, brackets[b].first, brackets[b].second);
    CHECK(root30 == doctest::Approx(expected30[b]).epsilon(1e-8));
    CHECK(std::abs(root30 - asymptote[b]) < 0.07);

    const double root1000 =
        find_theta_eq(1.0, 1000.0, brackets[b].first, brackets[b].second);
    CHECK(root1000 == doctest::Approx(expected1000[b]).epsilon(1e-7));
    CHECK(std::abs(root1000 - asymptote[b]) < 2.1e-3);
    // Convergence toward the asymptote as U grows.
    CHECK(std::abs(root1000 - asymptote[b]) < std::abs(root30 - asymptote[b]));

    // Each root carries effective flux +-pi/2 (mod 2 pi) up to the same
    // O(J/U) distortion.
    const double flux = std::abs(principal_angle(-3.0 * root1000));
    CHECK(std::abs(flux - kPi / 2.0) < 3.0 * 2.1e-3);
  }
}

TEST_CASE("find_theta_eq rejects brackets without a sign change") {
  CHECK_THROWS_AS(find_theta_eq(1.0, 30.0, 0.05, 0.1), std::domain_error);
}

TEST_CASE("perturbation_validation: frozen value and scaling") {
  // Exact mismatch at U/J = 30, theta = pi/6 (constant ~15.5 J^3/U^2).
  const double m30 = perturbation_validation(1.0, 30.0, kPi / 6.0);
  CHECK(m30 == doctest::Approx(0.01722608811810744).epsilon(1e-9));
  CHECK(m30 < 20.0 / (30.0 * 30.0));

  CHECK(perturbation_validation(1.0, 1000.0, kPi / 6.0) < 1e-4);

  // O(J^3/U^2): doubling U shrinks the mismatch by >= 3x.
  double prev = perturbation_validation(1.0, 25.0, kPi / 6.0);
  for (double u : {50.0, 100.0, 200.0}) {
    const double next = perturbation_validation(1.0, u, kPi / 6.0);
    CHECK(prev / next >= 3.0);
    prev = next;
  }

  // J = 0: both spectra collapse to {U, U, U}.
  CHECK(perturbation_validation(0.0, 30.0, 0.4) == 0.0);

  CHECK_THROWS_AS(perturbation_validation(1.0, 10.0, 0.4), std::invalid_argument);
}
