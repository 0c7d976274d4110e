#pragma once

// Closed-form chiral-circulation ring Hamiltonians. An N-site ring with the
// hopping network
//
//   H[m][n] = -|J_mn| e^{i Phi_mn},   m > n,
//   |J_mn|  = J sin(pi/N) / |sin(pi (m-n)/N)|,
//   Phi_mn  = -(pi/N)(m-n) + pi/2,
//
// has the equidistant spectrum E_k = b k + const with b = 2 J sin(pi/N) and
// Bloch-mode eigenstates, which makes the step propagator U(T) a one-site
// cyclic shift for T = 2 pi / (N b). Site labels are 1-based in every public
// signature; storage is 0-based.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chiral/spectral.hpp"

namespace chiral {

inline constexpr double kPi = std::numbers::pi;

// Reduce an angle to the principal branch (-pi, pi].
inline double principal_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// Ring geometry with its derived energy/time scales.
struct RingSpec {
  int sites;         // N >= 2
  double hopping;    // J = |J_NN|, energy units
  double spacing;    // level spacing b = 2 J sin(pi/N)
  double step_time;  // T = 2 pi / (N b); one cyclic shift per step

  RingSpec(int n, double j) : sites(n), hopping(j) {
    if (n < 2) {
      throw std::invalid_argument("RingSpec: ring needs at least 2 sites");
    }
    if (!(j > 0.0)) {
      throw std::invalid_argument("RingSpec: hopping amplitude must be positive");
    }
    spacing = 2.0 * j * std::sin(kPi / n);
    step_time = 2.0 * kPi / (n * spacing);
  }
};

// AsDerived keeps the distance-dependent bond phases of the closed form;
// UniformHalfPi is the gauge alpha_n = pi n / N in which every bond phase
// equals pi/2.
enum class PhaseConvention { AsDerived, UniformHalfPi };

struct ChiralRingHamiltonian {
  RingSpec spec;
  Matrix matrix;  // Hermitian, zero diagonal
  PhaseConvention convention;
};

// Per-site gauge phases alpha_n (radians).
using GaugePhases = Eigen::VectorXd;

inline ChiralRingHamiltonian build_ideal(
    int sites, double hopping,
    PhaseConvention convention = PhaseConvention::AsDerived) {
  RingSpec spec(sites, hopping);
  Matrix h = Matrix::Zero(sites, sites);
  const double sin_nn = std::sin(kPi / sites);
  for (int m = 2; m <= sites; ++m) {
    for (int n = 1; n < m; ++n) {
      const int dist = m - n;
      const double mag = hopping * sin_nn / std::abs(std::sin(kPi * dist / sites));
      const double phi = convention == PhaseConvention::UniformHalfPi
                             ? kPi / 2.0
                             : -kPi * dist / sites + kPi / 2.0;
      h(m - 1, n - 1) = -std::polar(mag, phi);
      h(n - 1, m - 1) = std::conj(h(m - 1, n - 1));
    }
  }
  return {spec, std::move(h), convention};
}

// Three-site ring with uniform bond magnitude J and a total flux spread
// evenly over the bonds; used for spectrum-versus-flux scans.
inline Matrix triangle_ring_with_flux(double hopping, double total_flux) {
  if (!(hopping > 0.0)) {
    throw std::invalid_argument("triangle_ring_with_flux: hopping must be positive");
  }
  Matrix h = Matrix::Zero(3, 3);
  const Complex bond = -std::polar(hopping, total_flux / 3.0);
  h(1, 0) = bond;
  h(2, 1) = bond;
  h(0, 2) = bond;
  h(0, 1) = std::conj(bond);
  h(1, 2) = std::conj(bond);
  h(2, 0) = std::conj(bond);
  return h;
}

// D H D^dag with D = diag(e^{i alpha_n}): shifts each bond phase by
// alpha_m - alpha_n, leaves the spectrum and all loop fluxes unchanged.
// The convention tag is kept as provenance of the original construction.
inline ChiralRingHamiltonian apply_gauge(const ChiralRingHamiltonian& ring,
                                         const GaugePhases& alphas) {
  if (alphas.size() != ring.spec.sites) {
    throw std::invalid_argument("apply_gauge: gauge vector length must equal the site count");
  }
  Matrix h = ring.matrix;
  for (int m = 0; m < h.rows(); ++m) {
    for (int n = 0; n < h.cols(); ++n) {
      h(m, n) *= std::polar(1.0, alphas[m] - alphas[n]);
    }
  }
  return {ring.spec, std::move(h), ring.convention};
}

// Entrywise complex conjugate: identical spectrum, reversed circulation.
inline ChiralRingHamiltonian reverse(const ChiralRingHamiltonian& ring) {
  return {ring.spec, ring.matrix.conjugate(), ring.convention};
}

// Discrete Bloch mode |k> with amplitude e^{i 2 pi k n / N} / sqrt(N) at
// site n = 1..N.
inline StateVector bloch_mode(int sites, int k) {
  if (sites < 1) {
    throw std::invalid_argument("bloch_mode: need at least one site");
  }
  if (k < 0 || k >= sites) {
    throw std::invalid_argument("bloch_mode: quasi-momentum index out of [0, N)");
  }
  StateVector psi(sites);
  const double norm = 1.0 / std::sqrt(double(sites));
  for (int n = 1; n <= sites; ++n) {
    psi[n - 1] = std::polar(norm, 2.0 * kPi * k * n / sites);
  }
  return psi;
}

// Peierls phase of the (m, n) bond in the -|J| e^{i Phi} convention.
inline double bond_phase(const Matrix& h, int m, int n) {
  if (m == n || m < 1 || n < 1 || m > h.rows() || n > h.cols()) {
    throw std::invalid_argument("bond_phase: invalid bond indices");
  }
  return std::arg(-h(m - 1, n - 1));
}

inline double bond_magnitude(const Matrix& h, int m, int n) {
  return std::abs(h(m - 1, n - 1));
}

// Gauge-invariant flux through a directed cycle of 1-based sites: the
// argument of the product of -H[next][cur] along the cycle (the sign
// convention of the -|J| e^{i Phi} form), reduced to (-pi, pi].
inline double loop_flux(const Matrix& h, const std::vector<int>& cycle) {
  const int len = static_cast<int>(cycle.size());
  if (len < 3) {
    throw std::invalid_argument("loop_flux: cycle must visit at least 3 sites");
  }
  for (int i = 0; i < len; ++i) {
    if (cycle[i] < 1 || cycle[i] > h.rows()) {
      throw std::invalid_argument("loop_flux: site index out of range");
    }
    for (int j = i + 1; j < len; ++j) {
      if (cycle[i] == cycle[j]) {
        throw std::invalid_argument("loop_flux: cycle sites must be distinct");
      }
    }
  }
  Complex prod = 1.0;
  for (int i = 0; i < len; ++i) {
    const int cur = cycle[i];
    const int next = cycle[(i + 1) % len];
    const Complex amp = -h(next - 1, cur - 1);
    if (std::abs(amp) == 0.0) {
      throw std::invalid_argument("loop_flux: cycle traverses the uncoupled pair (" +
                                  std::to_string(cur) + ", " + std::to_string(next) + ")");
    }
    prod *= amp;
  }
  return std::arg(prod);
}

inline double loop_flux(const ChiralRingHamiltonian& ring,
                        const std::vector<int>& cycle) {
  return loop_flux(ring.matrix, cycle);
}

struct EquidistanceReport {
  RealVector spacings;   // consecutive differences of the ascending spectrum
  double max_deviation;  // max |spacing_i - mean spacing|
};

inline EquidistanceReport equidistance_report(const RealVector& eigenvalues) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 2) {
    throw std::invalid_argument("equidistance_report: need at least 2 levels");
  }
  RealVector spacings(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    spacings[i] = eigenvalues[i + 1] - eigenvalues[i];
  }
  const double mean = spacings.mean();
  const double max_dev = (spacings.array() - mean).abs().maxCoeff();
  return {std::move(spacings), max_dev};
}

inline EquidistanceReport equidistance_report(const EigenSystem& es) {
  return equidistance_report(es.eigenvalues);
}

}  // namespace chiral
