#pragma once

// Floquet synthesis of chiral transport on an open three-site chain.
// Antisymmetric phase-shifted on-site driving
//
//   f_1(t) = A cos(w t + phi),  f_3(t) = -A cos(w t - phi)
//
// renormalizes the nearest-neighbor hopping to J_eff = J B_0(A/w) and
// induces a purely imaginary next-nearest-neighbor coupling
//
//   Jt = -i (2 J^2 / w) sum_{m>=1} (1/m) B_m(A/w) B_{-m}(A/w) sin(2 m phi),
//
// B_m being the Bessel function of the first kind. Equal bond strengths
// |Jt| = |J_eff| close the chain into an effective ring with flux +-pi/2,
// the exact chiral-circulation geometry. Bessel functions are implemented
// in-module (power series + Miller's normalized downward recurrence) so the
// library carries no special-function dependency.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "chiral/dynamics.hpp"
#include "chiral/roots.hpp"
#include "chiral/spectral.hpp"

namespace chiral {

namespace detail {

// Ascending power series around the origin; fast and cancellation-free for
// small arguments.
inline double bessel_series(int m, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= m; ++i) term *= half / i;
  double sum = term;
  const double q = half * half;
  for (int j = 1; j < 64; ++j) {
    term *= -q / (double(j) * (m + j));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// Miller's algorithm: downward recurrence from a start order well above
// max(m, x), normalized with J_0(x) + 2 sum_k J_2k(x) = 1.
inline double bessel_miller(int m, double x, int start) {
  if (start % 2 == 1) ++start;
  double fp = 0.0;          // f_{k+1}
  double fc = 1e-30;        // f_k, arbitrary seed absorbed by normalization
  double norm = 2.0 * fc;   // start is even and > 0
  double target = (start == m) ? fc : 0.0;
  for (int k = start; k >= 1; --k) {
    const double fm = (2.0 * k / x) * fc - fp;
    fp = fc;
    fc = fm;
    const int idx = k - 1;
    if (idx == m) target = fc;
    if (idx % 2 == 0) norm += (idx == 0) ? fc : 2.0 * fc;
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      norm *= 1e-250;
      target *= 1e-250;
    }
  }
  return target / norm;
}

inline double bessel_core(int m, double x) {
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x < 1.0) return bessel_series(m, x);
  // Raise the start order until two evaluations agree.
  const int base = std::max(m, static_cast<int>(std::ceil(x)));
  double prev = bessel_miller(m, x, base + 40);
  for (int offset = 80; offset <= 640; offset *= 2) {
    const double next = bessel_miller(m, x, base + offset);
    if (std::abs(next - prev) <= 1e-15 * std::max(1.0, std::abs(next))) {
      return next;
    }
    prev = next;
  }
  return prev;
}

}  // namespace detail

// J_m(x), first kind, integer order. Supported range |m| <= 200, |x| <= 50;
// absolute accuracy ~1e-13 or better across it.
inline double bessel_first_kind(int order, double x) {
  if (std::abs(order) > 200) {
    throw std::domain_error("bessel_first_kind: order out of supported range |m| <= 200");
  }
  if (!(std::abs(x) <= 50.0)) {
    throw std::domain_error("bessel_first_kind: argument out of supported range |x| <= 50");
  }
  const int m = std::abs(order);
  const double val = detail::bessel_core(m, std::abs(x));
  // J_{-m}(x) = (-1)^m J_m(x) and J_m(-x) = (-1)^m J_m(x).
  const bool flip = (m % 2 == 1) && ((order < 0) != (x < 0.0));
  return flip ? -val : val;
}

struct DriveParams {
  double hopping;    // J: bare nearest-neighbor hopping
  double amplitude;  // A: drive amplitude, energy units
  double omega;      // drive angular frequency
  double phase;      // phi: drive phase, radians
};

// The effective-model claims assume the high-frequency regime.
inline bool high_frequency(const DriveParams& p) {
  return p.omega >= 10.0 * p.hopping;
}

// Open three-site chain with the antisymmetric two-tone on-site drive.
inline DrivenHamiltonian driven_hamiltonian(const DriveParams& p) {
  if (!(p.hopping > 0.0) || !(p.omega > 0.0) || p.amplitude < 0.0) {
    throw std::invalid_argument("driven_hamiltonian: need J > 0, omega > 0, A >= 0");
  }
  return {3, [p](double t) {
            Matrix h = Matrix::Zero(3, 3);
            h(1, 0) = h(0, 1) = -p.hopping;
            h(2, 1) = h(1, 2) = -p.hopping;
            h(0, 0) = p.amplitude * std::cos(p.omega * t + p.phase);
            h(2, 2) = -p.amplitude * std::cos(p.omega * t - p.phase);
            return h;
          }};
}

struct EffectiveCouplings {
  double j_eff;        // J * J0(A/omega), signed
  Complex j_nnn;       // induced 1<->3 coupling, purely imaginary
  int m_max;           // series truncation order
};

// Terms decay super-exponentially once m >> A/omega, so the default
// truncation is already far past convergence for A/omega <= 5.
inline EffectiveCouplings effective_couplings(const DriveParams& p,
                                              int m_max = 40) {
  if (m_max < 1) {
    throw std::invalid_argument("effective_couplings: truncation order must be >= 1");
  }
  const double x = p.amplitude / p.omega;
  double series = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    series += bessel_first_kind(m, x) * bessel_first_kind(-m, x) *
              std::sin(2.0 * m * p.phase) / m;
  }
  const double im = -2.0 * p.hopping * p.hopping / p.omega * series;
  return {p.hopping * bessel_first_kind(0, x), Complex(0.0, im), m_max};
}

// H_eff = -J_eff (a2^dag a1 + a3^dag a2) + Jt a3^dag a1 + H.c., zero
// diagonal. Its spectrum is {-r, 0, +r} with r^2 = 2 J_eff^2 + |Jt|^2.
inline Matrix effective_hamiltonian(const EffectiveCouplings& ec) {
  Matrix h = Matrix::Zero(3, 3);
  h(1, 0) = h(0, 1) = -ec.j_eff;
  h(2, 1) = h(1, 2) = -ec.j_eff;
  h(2, 0) = ec.j_nnn;
  h(0, 2) = std::conj(ec.j_nnn);
  return h;
}

inline double effective_level_spacing(const EffectiveCouplings& ec) {
  return std::sqrt(2.0 * ec.j_eff * ec.j_eff + std::norm(ec.j_nnn));
}

// Time for one full circulation 1 -> 2 -> 3 -> 1 of the matched effective
// ring: three steps of 2 pi / (3 r).
inline double effective_circulation_period(const EffectiveCouplings& ec) {
  const double r = effective_level_spacing(ec);
  if (!(r > 0.0)) {
    throw std::invalid_argument("effective_circulation_period: couplings vanish");
  }
  return 2.0 * kPi / r;
}

// Solve |J_eff(x)| = |Jt(x)| for x = A/omega by bisection on the given
// bracket (default: below the first zero of J0). Works in units J = 1.
inline double solve_matching(double omega_over_j, double phi, double lo = 2.0,
                             double hi = 2.4048, int m_max = 40) {
  if (!(omega_over_j > 0.0)) {
    throw std::invalid_argument("solve_matching: omega/J must be positive");
  }
  auto gap = [&](double x) {
    const EffectiveCouplings ec =
        effective_couplings({1.0, x * omega_over_j, omega_over_j, phi}, m_max);
    return std::abs(ec.j_eff) - std::abs(ec.j_nnn);
  };
  const double root = bisect(gap, lo, hi, 1e-15);
  const double residual = std::abs(gap(root));
  if (!(residual < 1e-12)) {
    throw std::runtime_error("solve_matching: residual " + detail::scientific(residual) +
                             " exceeds 1e-12");
  }
  return root;
}

struct DrivenComparison {
  Trajectory exact;      // driven chain, sampled at drive-period multiples
  Trajectory effective;  // effective model on the same stroboscopic grid
  double max_deviation;  // max over samples and sites of |P_exact - P_eff|
};

// Stroboscopic comparison of the exact driven evolution against the
// effective model, both starting from |1>. Micromotion between period
// boundaries is outside the effective description and is not sampled.
inline DrivenComparison compare_driven_vs_effective(const DriveParams& p,
                                                    double t_end,
                                                    int steps_per_period = 256,
                                                    int m_max = 40) {
  const double period = 2.0 * kPi / p.omega;
  const long long n_periods = static_cast<long long>(std::floor(t_end / period + 1e-9));
  if (n_periods < 1) {
    throw std::invalid_argument("compare_driven_vs_effective: t_end shorter than one drive period");
  }
  const StateVector psi0 = basis_state(3, 1);
  DrivenComparison cmp;
  cmp.exact = evolve_driven(driven_hamiltonian(p), psi0, n_periods * period,
                            steps_per_period, period);
  cmp.effective = evolve_static(effective_hamiltonian(effective_couplings(p, m_max)),
                                psi0, cmp.exact.times);
  cmp.max_deviation = (cmp.exact.records - cmp.effective.records).cwiseAbs().maxCoeff();
  return cmp;
}

}  // namespace chiral
