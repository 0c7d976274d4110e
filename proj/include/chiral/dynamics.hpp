#pragma once

// Time evolution and transfer-fidelity metrics. Static Hamiltonians are
// propagated spectrally (no integrator error); time-dependent ones with a
// midpoint piecewise-exponential rule whose substeps are each exactly
// unitary, so norm drift stays at round-off level instead of masquerading
// as physics.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chiral/ring.hpp"
#include "chiral/spectral.hpp"

namespace chiral {

// Time grid plus one real record per site and sample: populations
// |<n|psi>|^2 for single-particle states, occupation expectations <n_i>
// for many-body states.
struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd records;  // row per time sample, column per site
};

// Caller-supplied map t -> Hermitian matrix of fixed dimension.
struct DrivenHamiltonian {
  int dim;
  std::function<Matrix(double)> at;
};

inline std::vector<double> linspace(double t0, double t1, int samples) {
  if (samples < 2 || !(t1 > t0)) {
    throw std::invalid_argument("linspace: need samples >= 2 and t1 > t0");
  }
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) {
    ts[i] = t0 + (t1 - t0) * i / (samples - 1);
  }
  return ts;
}

namespace detail {

inline void require_times_increasing(const std::vector<double>& times) {
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1])) {
      throw std::invalid_argument("trajectory times must be strictly increasing");
    }
  }
}

inline void require_normalized(const StateVector& psi, double tol = 1e-12) {
  if (std::abs(psi.norm() - 1.0) > tol) {
    throw std::invalid_argument("initial state must have unit norm");
  }
}

}  // namespace detail

// psi(t) = e^{-i H t} psi0 at each requested time; populations recorded.
inline Trajectory evolve_static(const Matrix& h, const StateVector& psi0,
                                const std::vector<double>& times) {
  if (h.rows() != psi0.size()) {
    throw std::invalid_argument("evolve_static: operator/state dimension mismatch");
  }
  detail::require_normalized(psi0);
  detail::require_times_increasing(times);
  const EigenSystem es = hermitian_eig(h);
  Trajectory traj;
  traj.times = times;
  traj.records.resize(static_cast<Eigen::Index>(times.size()), h.rows());
  for (std::size_t i = 0; i < times.size(); ++i) {
    traj.records.row(static_cast<Eigen::Index>(i)) =
        evolve_state(es, times[i], psi0).cwiseAbs2().transpose();
  }
  return traj;
}

// Midpoint piecewise-exponential propagation of a driven Hamiltonian:
// on each substep [t, t + dt] the state is advanced by the exact
// exponential of H(t + dt/2). Populations are recorded at t = 0, every
// `record_stride` substeps (default: once per drive period) and at the
// final time. Norm drift beyond 1e-6 raises an integrator-failure error.
inline Trajectory evolve_driven(const DrivenHamiltonian& driven,
                                const StateVector& psi0, double t_end,
                                int steps_per_period, double period,
                                int record_stride = 0) {
  if (driven.dim < 1 || !driven.at) {
    throw std::invalid_argument("evolve_driven: invalid driven Hamiltonian");
  }
  if (psi0.size() != driven.dim) {
    throw std::invalid_argument("evolve_driven: operator/state dimension mismatch");
  }
  if (steps_per_period < 64) {
    throw std::invalid_argument("evolve_driven: need at least 64 steps per period");
  }
  if (!(t_end > 0.0) || !(period > 0.0)) {
    throw std::invalid_argument("evolve_driven: t_end and period must be positive");
  }
  detail::require_normalized(psi0);
  if (record_stride <= 0) record_stride = steps_per_period;

  const double dt = period / steps_per_period;
  const long long full_steps = static_cast<long long>(std::floor(t_end / dt + 1e-9));
  const double remainder = t_end - full_steps * dt;

  Trajectory traj;
  StateVector psi = psi0;
  std::vector<Eigen::RowVectorXd> rows;
  auto record = [&](double t) {
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-6) {
      throw std::runtime_error("evolve_driven: integrator failure, norm drift " +
                               detail::scientific(drift));
    }
    traj.times.push_back(t);
    rows.emplace_back(psi.cwiseAbs2().transpose());
  };

  record(0.0);
  for (long long k = 0; k < full_steps; ++k) {
    const double t = k * dt;
    psi = evolve_state(hermitian_eig(driven.at(t + dt / 2.0)), dt, psi);
    if ((k + 1) % record_stride == 0 && !(k + 1 == full_steps && remainder <= 1e-12)) {
      record((k + 1) * dt);
    }
  }
  if (remainder > 1e-12) {
    psi = evolve_state(hermitian_eig(driven.at(full_steps * dt + remainder / 2.0)),
                       remainder, psi);
  }
  record(t_end);

  traj.records.resize(static_cast<Eigen::Index>(rows.size()), driven.dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    traj.records.row(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return traj;
}

// |<target| e^{-i H t} |source>|^2 with 1-based site labels.
inline double transfer_probability(const EigenSystem& es, double t, int source,
                                   int target) {
  const StateVector evolved = evolve_state(es, t, basis_state(es.dim(), source));
  return std::norm(evolved[target - 1]);
}

// Probability of sitting on the cyclically shifted target site after n
// steps of duration `step_time`: |<source + n | U(n T) | source>|^2 with
// periodic site labels (|N+1> = |1>).
inline double step_fidelity(const Matrix& h, double step_time, int n,
                            int source = 1) {
  const int sites = static_cast<int>(h.rows());
  if (n < 1 || n > sites) {
    throw std::invalid_argument("step_fidelity: step count must lie in [1, N]");
  }
  if (source < 1 || source > sites) {
    throw std::invalid_argument("step_fidelity: source site out of range");
  }
  const int target = (source - 1 + n) % sites + 1;
  return transfer_probability(hermitian_eig(h), n * step_time, source, target);
}

// Mean of the n-step transfer probabilities from site 1 over n = 1..N,
// evaluated at the clean step time of `spec`. The n = N term uses the
// periodic target |N+1> = |1>.
inline double average_fidelity(const Matrix& h, const RingSpec& spec) {
  if (h.rows() != spec.sites) {
    throw std::invalid_argument("average_fidelity: operator dimension does not match the ring spec");
  }
  const EigenSystem es = hermitian_eig(h);
  double sum = 0.0;
  for (int n = 1; n <= spec.sites; ++n) {
    const int target = n % spec.sites + 1;
    sum += transfer_probability(es, n * spec.step_time, 1, target);
  }
  return sum / spec.sites;
}

}  // namespace chiral
