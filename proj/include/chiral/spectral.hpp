#pragma once

// Dense complex linear-algebra substrate: Hermitian eigendecomposition,
// spectral propagators and state algebra. Every operator in this project is
// a small dense Hermitian matrix, so matrix exponentials are always taken
// through the spectral decomposition V diag(e^{-i E t}) V^dag, which stays
// unitary to round-off.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace chiral {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;      // dense complex square operator
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerance ladder used throughout: Hermiticity entrywise at 1e-12,
// orthonormality/unitarity at 1e-10. Dense double-precision solvers at
// dim <= ~64 sit comfortably inside both.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

inline const Complex kImag{0.0, 1.0};

// Largest entrywise deviation from H = H^dag.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& h,
                  double tol = kHermitianTol) {
  return h.rows() == h.cols() && hermiticity_defect(h) <= tol;
}

// Largest entrywise deviation of U^dag U from the identity.
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  Matrix gram = u.adjoint() * u;
  return (gram - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

// Real eigenvalues in ascending order; column k of `eigenvectors` pairs with
// eigenvalues[k]. Columns are orthonormal.
struct EigenSystem {
  RealVector eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

namespace detail {

inline std::string scientific(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// The overall phase of each eigenvector is free; pin it so that the
// largest-magnitude component (lowest index on ties) is real and positive.
// Repeated runs and regression baselines then agree exactly.
inline void fix_eigenvector_phases(Matrix& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, k));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    if (best > 0.0) {
      vectors.col(k) *= std::conj(vectors(imax, k)) / best;
    }
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix. Rejects inputs whose asymmetry
// exceeds `tol`; round-off inside the tolerance is symmetrized away before
// the solve so the decomposition is exactly self-adjoint.
inline EigenSystem hermitian_eig(const Matrix& h, double tol = kHermitianTol) {
  if (h.rows() != h.cols() || h.rows() < 1) {
    throw std::invalid_argument("hermitian_eig: operator must be a nonempty square matrix");
  }
  const double defect = hermiticity_defect(h);
  if (!(defect <= tol)) {
    throw std::invalid_argument("hermitian_eig: non-Hermitian input, max asymmetry " +
                                detail::scientific(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(((h + h.adjoint()) / 2.0).eval());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  detail::fix_eigenvector_phases(es.eigenvectors);
  return es;
}

// U(t) = V diag(e^{-i E t}) V^dag. Unitary to round-off for any real t.
inline Matrix propagator(const EigenSystem& es, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("propagator: time must be finite");
  }
  StateVector phases(es.dim());
  for (int k = 0; k < es.dim(); ++k) {
    phases[k] = std::exp(-kImag * es.eigenvalues[k] * t);
  }
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

// e^{-i H t} psi without forming the full propagator.
inline StateVector evolve_state(const EigenSystem& es, double t,
                                const StateVector& psi) {
  if (psi.size() != es.dim()) {
    throw std::invalid_argument("evolve_state: state dimension mismatch");
  }
  StateVector coeff = es.eigenvectors.adjoint() * psi;
  for (int k = 0; k < es.dim(); ++k) {
    coeff[k] *= std::exp(-kImag * es.eigenvalues[k] * t);
  }
  return es.eigenvectors * coeff;
}

inline StateVector apply(const Matrix& u, const StateVector& psi) {
  if (u.cols() != psi.size()) {
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  }
  return u * psi;
}

// V diag(E) V^dag; with a modified eigenvalue list this builds the
// spectrum-perturbed operators used in the necessity checks.
inline Matrix reconstruct(const EigenSystem& es) {
  return es.eigenvectors * es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors.adjoint();
}

inline StateVector basis_state(int dim, int site /*1-based*/) {
  if (site < 1 || site > dim) {
    throw std::invalid_argument("basis_state: site index out of range");
  }
  StateVector psi = StateVector::Zero(dim);
  psi[site - 1] = 1.0;
  return psi;
}

}  // namespace chiral
