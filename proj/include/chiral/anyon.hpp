#pragma once

// Two particles on a three-site anyon-Hubbard ring: bosons with a
// density-dependent Peierls phase,
//
//   H = -J sum_j (e^{-i theta n_j} b_{j+1}^dag b_j + H.c.)
//       + (U/2) sum_j n_j (n_j - 1),       b_4 = b_1.
//
// The density phase acts after the hop, on the post-hop occupation of the
// source site; this ordering is what produces the doublon hopping element
// (2 J^2 / U) e^{-i theta} at second order in J/U. In the strongly
// interacting regime the three doublon levels separate from the scattering
// band and behave as a single particle on a ring threaded by the
// statistics-induced flux -3 theta.

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chiral/dynamics.hpp"
#include "chiral/ring.hpp"
#include "chiral/roots.hpp"
#include "chiral/spectral.hpp"

namespace chiral {

struct AnyonParams {
  double hopping;      // J
  double interaction;  // U
  double theta;        // statistical angle, radians
};

// Ordered two-particle occupation basis, doublons first. At large U the
// "three highest levels" of the sorted spectrum are then the doublon band.
inline constexpr std::array<std::array<int, 3>, 6> kTwoParticleBasis = {{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
}};

inline int basis_index(const std::array<int, 3>& occ) {
  for (int i = 0; i < 6; ++i) {
    if (kTwoParticleBasis[i] == occ) return i;
  }
  throw std::invalid_argument("basis_index: not a two-particle occupation state");
}

// Full 6x6 two-particle Hamiltonian. Each forward hop j -> j+1 picks up the
// bosonic matrix elements sqrt(n_j) sqrt(n_{j+1}+1) and the density phase
// e^{-i theta (n_j - 1)}; the reverse hops enter through the explicit +H.c.
inline Matrix build_two_particle_hamiltonian(const AnyonParams& p) {
  if (p.hopping < 0.0 || !(p.interaction > 0.0)) {
    throw std::invalid_argument("build_two_particle_hamiltonian: need J >= 0 and U > 0");
  }
  Matrix hop = Matrix::Zero(6, 6);
  for (int s = 0; s < 6; ++s) {
    const auto& occ = kTwoParticleBasis[s];
    for (int j = 0; j < 3; ++j) {
      if (occ[j] == 0) continue;
      const int tgt = (j + 1) % 3;
      std::array<int, 3> next = occ;
      next[j] -= 1;
      next[tgt] += 1;
      const double amp = std::sqrt(double(occ[j])) * std::sqrt(double(next[tgt]));
      const Complex phase = std::polar(1.0, -p.theta * next[j]);
      hop(basis_index(next), s) += amp * phase;
    }
  }
  Matrix h = -p.hopping * (hop + hop.adjoint());
  for (int s = 0; s < 6; ++s) {
    for (int n : kTwoParticleBasis[s]) {
      h(s, s) += 0.5 * p.interaction * n * (n - 1);
    }
  }
  return h;
}

struct DoublonModel {
  double hop_amplitude;  // 2 J^2 / U
  double bond_phase;     // -theta per c_{j+1}^dag c_j bond
  double onsite_shift;   // U + 4 J^2 / U; uniform, dropped from the dynamics
  double flux;           // -3 theta reduced to (-pi, pi]
};

// Effective doublon ring H_d = (2 J^2 / U) sum_j e^{-i theta}
// c_{j+1}^dag c_j + H.c. Note the + prefactor: the Peierls sum around
// 1 -> 2 -> 3 -> 1 in this convention is -3 theta.
inline std::pair<DoublonModel, Matrix> doublon_effective(const AnyonParams& p) {
  if (!(p.interaction > 0.0)) {
    throw std::invalid_argument("doublon_effective: interaction must be positive");
  }
  const double jd = 2.0 * p.hopping * p.hopping / p.interaction;
  const Complex fwd = std::polar(jd, -p.theta);
  Matrix h = Matrix::Zero(3, 3);
  h(1, 0) = fwd;
  h(2, 1) = fwd;
  h(0, 2) = fwd;
  h(0, 1) = std::conj(fwd);
  h(1, 2) = std::conj(fwd);
  h(2, 0) = std::conj(fwd);
  DoublonModel model{jd, -p.theta,
                     p.interaction + 4.0 * p.hopping * p.hopping / p.interaction,
                     principal_angle(-3.0 * p.theta)};
  return {model, std::move(h)};
}

// Occupation expectations <n_i>(t) under the full 6x6 Hamiltonian, starting
// from two particles on site 1. Rows sum to 2 up to round-off.
inline Trajectory doublon_dynamics(const AnyonParams& p, double t_end,
                                   int samples) {
  const EigenSystem es = hermitian_eig(build_two_particle_hamiltonian(p));
  StateVector psi0 = StateVector::Zero(6);
  psi0[basis_index({2, 0, 0})] = 1.0;
  Trajectory traj;
  traj.times = linspace(0.0, t_end, samples);
  traj.records.resize(samples, 3);
  for (int i = 0; i < samples; ++i) {
    const StateVector psi = evolve_state(es, traj.times[i], psi0);
    for (int site = 0; site < 3; ++site) {
      double expect = 0.0;
      for (int s = 0; s < 6; ++s) {
        expect += kTwoParticleBasis[s][site] * std::norm(psi[s]);
      }
      traj.records(i, site) = expect;
    }
  }
  return traj;
}

// Sorted six-level spectrum at each statistical angle; row per grid point.
inline Eigen::MatrixXd spectrum_vs_theta(double hopping, double interaction,
                                         const std::vector<double>& theta_grid) {
  if (theta_grid.empty()) {
    throw std::invalid_argument("spectrum_vs_theta: empty grid");
  }
  Eigen::MatrixXd bands(static_cast<Eigen::Index>(theta_grid.size()), 6);
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const EigenSystem es = hermitian_eig(
        build_two_particle_hamiltonian({hopping, interaction, theta_grid[i]}));
    bands.row(static_cast<Eigen::Index>(i)) = es.eigenvalues.transpose();
  }
  return bands;
}

// Equidistance defect of the three highest levels of the sorted spectrum.
inline double doublon_band_asymmetry(double hopping, double interaction,
                                     double theta) {
  const EigenSystem es = hermitian_eig(
      build_two_particle_hamiltonian({hopping, interaction, theta}));
  const RealVector& e = es.eigenvalues;
  return (e[5] - e[4]) - (e[4] - e[3]);
}

// Statistical angle at which the three highest two-particle levels become
// equidistant, found by bisection on the given bracket.
inline double find_theta_eq(double hopping, double interaction, double lo,
                            double hi) {
  auto gap = [&](double theta) {
    return doublon_band_asymmetry(hopping, interaction, theta);
  };
  const double root = bisect(gap, lo, hi, 1e-12);
  const double residual = std::abs(gap(root));
  if (!(residual < 1e-10 * hopping)) {
    throw std::runtime_error("find_theta_eq: residual " + detail::scientific(residual) +
                             " exceeds 1e-10 J");
  }
  return root;
}

// Default brackets isolating the three theta_eq branches for U/J >= 20.
inline std::array<std::pair<double, double>, 3> theta_eq_brackets() {
  return {{{0.1, 0.9}, {1.2, 1.9}, {2.2, 2.9}}};
}

// Largest deviation between the three doublon-band eigenvalues of the full
// Hamiltonian and the effective model shifted by U + 4 J^2 / U. Decays as
// O(J^3 / U^2) deep in the strong-interaction regime.
inline double perturbation_validation(double hopping, double interaction,
                                      double theta) {
  if (!(interaction >= 20.0 * hopping)) {
    throw std::invalid_argument("perturbation_validation: requires U/J >= 20");
  }
  const AnyonParams p{hopping, interaction, theta};
  const EigenSystem full = hermitian_eig(build_two_particle_hamiltonian(p));
  auto [model, hd] = doublon_effective(p);
  const EigenSystem eff = hermitian_eig(hd);
  double mismatch = 0.0;
  for (int i = 0; i < 3; ++i) {
    mismatch = std::max(mismatch, std::abs(full.eigenvalues[3 + i] -
                                           (eff.eigenvalues[i] + model.onsite_shift)));
  }
  return mismatch;
}

}  // namespace chiral
