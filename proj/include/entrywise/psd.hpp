#pragma once

// Spectral utilities on Hermitian positive semidefinite matrices over the
// floating backend. Eigen provides the Hermitian eigensolver and SVD.

#include "entrywise/errors.hpp"
#include "entrywise/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace entrywise {

/// Default PSD tolerance: eigenvalues >= -kPsdTol * max(1, |lambda|_max).
inline constexpr double kPsdTol = 1e-9;
/// Pseudo-inverse rank cut relative to the largest eigenvalue.
inline constexpr double kRankCut = 1e-12;

struct HermitianEigen {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // unitary, columns match eigenvalues

  double max_abs() const {
    if (eigenvalues.size() == 0) return 0.0;
    return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
  }
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// max |a_ij - conj(a_ji)|.
inline double hermitian_defect(const MatrixC& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

inline void require_hermitian(const MatrixC& a, double tol, const char* who) {
  if (!a.is_square()) throw parameter_error(std::string(who) + ": matrix must be square");
  const double defect = hermitian_defect(a);
  if (defect > tol * std::max(1.0, a.max_abs())) {
    std::ostringstream os;
    os << who << ": matrix is not Hermitian (defect " << defect << ")";
    throw parameter_error(os.str());
  }
}

/// Eigendecomposition of the Hermitian part (A + A^*)/2.
inline HermitianEigen hermitian_eigen(const MatrixC& a) {
  detail::require(a.is_square(), "hermitian_eigen: matrix must be square");
  const Eigen::MatrixXcd m = to_eigen(a);
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw domain_error("hermitian_eigen: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

struct PsdVerdict {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double scale = 1.0;  // max(1, |lambda|_max)
};

/// Spectral verdict without the Hermitian precondition check.
inline PsdVerdict psd_verdict(const MatrixC& a, double tol = kPsdTol) {
  const HermitianEigen e = hermitian_eigen(a);
  PsdVerdict v;
  v.min_eigenvalue = e.min();
  v.scale = std::max(1.0, e.max_abs());
  v.psd = v.min_eigenvalue >= -tol * v.scale;
  return v;
}

/// True iff the minimum eigenvalue is >= -tol * max(1, ||A||). Non-Hermitian
/// input is a parameter error.
inline bool psd_check(const MatrixC& a, double tol = kPsdTol) {
  require_hermitian(a, tol, "psd_check");
  return psd_verdict(a, tol).psd;
}

/// Throws parameter_error naming the offending eigenvalue unless A is PSD.
inline void require_psd(const MatrixC& a, double tol, const char* who) {
  require_hermitian(a, tol, who);
  const PsdVerdict v = psd_verdict(a, tol);
  if (!v.psd) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": matrix is not positive semidefinite (eigenvalue " << v.min_eigenvalue << ")";
    throw parameter_error(os.str());
  }
}

/// A^{†/2}: inverse square roots of eigenvalues above rank_cut * lambda_max,
/// zero on the rest.
inline MatrixC moore_penrose_sqrt(const MatrixC& a, double rank_cut = kRankCut, double tol = kPsdTol) {
  require_psd(a, tol, "moore_penrose_sqrt");
  const HermitianEigen e = hermitian_eigen(a);
  const double lmax = e.max();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(e.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    if (lmax > 0.0 && e.eigenvalues(k) > rank_cut * lmax) d(k) = 1.0 / std::sqrt(e.eigenvalues(k));
  return from_eigen(e.eigenvectors * d.asDiagonal() * e.eigenvectors.adjoint());
}

/// Moore-Penrose inverse of a PSD matrix with the same rank cut.
inline MatrixC moore_penrose_inverse(const MatrixC& a, double rank_cut = kRankCut) {
  const HermitianEigen e = hermitian_eigen(a);
  const double lmax = e.max();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(e.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    if (lmax > 0.0 && e.eigenvalues(k) > rank_cut * lmax) d(k) = 1.0 / e.eigenvalues(k);
  return from_eigen(e.eigenvectors * d.asDiagonal() * e.eigenvectors.adjoint());
}

/// Number of eigenvalues above rel * max(|lambda|).
inline std::size_t numerical_rank(const MatrixC& a, double rel = kPsdTol) {
  const HermitianEigen e = hermitian_eigen(a);
  const double s = e.max_abs();
  if (s == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
    if (std::abs(e.eigenvalues(k)) > rel * s) ++r;
  return r;
}

/// Subspace of C^N given by orthonormal columns.
struct SubspaceBasis {
  std::size_t ambient = 0;
  Eigen::MatrixXcd basis;  // ambient x dim

  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Orthonormal basis of the orthogonal complement.
inline SubspaceBasis orthogonal_complement(const SubspaceBasis& s) {
  const auto n = static_cast<Eigen::Index>(s.ambient);
  if (s.dim() == 0) return {s.ambient, Eigen::MatrixXcd::Identity(n, n)};
  const Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n) - s.basis * s.basis.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  const Eigen::Index k = n - static_cast<Eigen::Index>(s.dim());
  // complement = eigenvalue-1 eigenspace, the top k eigenvectors
  return {s.ambient, es.eigenvectors().rightCols(k)};
}

/// Largest principal angle between two subspaces; pi/2 when the dimensions differ.
inline double max_principal_angle(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dim() != b.dim() || a.ambient != b.ambient) return std::numbers::pi / 2;
  if (a.dim() == 0) return 0.0;
  // sin(theta_max) = ||(I - P_a) B||_2; acos of the cosines loses accuracy near 0
  const Eigen::MatrixXcd resid = b.basis - a.basis * (a.basis.adjoint() * b.basis);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(resid);
  return std::asin(std::clamp(svd.singularValues().maxCoeff(), 0.0, 1.0));
}

}  // namespace entrywise
