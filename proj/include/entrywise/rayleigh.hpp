#pragma once

// Generalized Rayleigh quotients of Hadamard powers.
//
// For A PSD and h_c(z) = sum_{j<N} c_j z^j with c_j > 0, the extreme critical
// value C(h_c; z^M; A) is the smallest alpha with A∘M <= alpha h_c[A]. Three
// independent routes are provided:
//
//   rayleigh_constant     spectral radius of h_c[A]^{†/2} A∘M h_c[A]^{†/2}
//   rayleigh_variational  sup of u^* A∘M u / u^* h_c[A] u over K(A)^⊥, with
//                         K(A) taken from the trivial-group stratification
//   rayleigh_rank_one     sum_j |s_{mu(M,N,j)}(u)|^2 / c_j for A = u u^*

#include "entrywise/errors.hpp"
#include "entrywise/hadamard.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/psd.hpp"
#include "entrywise/schur.hpp"
#include "entrywise/strata.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace entrywise {

enum class RayleighMethod { spectral_radius, rank_one_closed_form, variational };

inline std::string_view to_string(RayleighMethod m) {
  switch (m) {
    case RayleighMethod::spectral_radius: return "spectral-radius";
    case RayleighMethod::rank_one_closed_form: return "rank-one-closed-form";
    case RayleighMethod::variational: return "variational";
  }
  return "?";
}

struct RayleighResult {
  double value = 0.0;
  std::optional<std::vector<Complex>> maximizer;  // in K(A)^⊥
  RayleighMethod method = RayleighMethod::spectral_radius;
};

namespace detail {

inline std::vector<Complex> to_complex_coeffs(std::span<const double> c) {
  std::vector<Complex> out;
  out.reserve(c.size());
  for (double x : c) out.emplace_back(x, 0.0);
  return out;
}

inline void require_positive_coeffs(std::span<const double> c, const char* who) {
  if (c.empty()) throw parameter_error(std::string(who) + ": empty coefficient list");
  for (double x : c)
    if (!(x > 0.0)) throw parameter_error(std::string(who) + ": coefficients must be positive");
}

inline void require_rayleigh_input(std::span<const double> c, int M, const MatrixC& a, double tol, const char* who) {
  require_positive_coeffs(c, who);
  detail::require(M >= 0, std::string(who) + ": M must be non-negative");
  detail::require(a.rows() == c.size(), std::string(who) + ": matrix dimension must equal the number of coefficients");
  require_psd(a, tol, who);
  if (a.max_abs() == 0.0) throw parameter_error(std::string(who) + ": zero matrix");
}

}  // namespace detail

/// h_c[A] for real coefficients.
inline MatrixC hc_matrix(std::span<const double> c, const MatrixC& a) {
  const auto cc = detail::to_complex_coeffs(c);
  return entrywise_dense_poly<Complex>(cc, a);
}

/// rho(h_c[A]^{†/2} A∘M h_c[A]^{†/2}).
inline RayleighResult rayleigh_constant(std::span<const double> c, int M, const MatrixC& a, double tol = kPsdTol) {
  detail::require_rayleigh_input(c, M, a, tol, "rayleigh_constant");
  const MatrixC h = hc_matrix(c, a);
  const MatrixC s = moore_penrose_sqrt(h, kRankCut, tol);
  const MatrixC conj = s * hadamard_power(a, static_cast<unsigned>(M)) * s;
  const HermitianEigen e = hermitian_eigen(conj);
  RayleighResult r;
  r.method = RayleighMethod::spectral_radius;
  r.value = std::max(0.0, e.max());
  const Eigen::VectorXcd w = e.eigenvectors.col(e.eigenvalues.size() - 1);
  Eigen::VectorXcd u = to_eigen(s) * w;
  if (u.norm() > 0.0) {
    u.normalize();
    r.maximizer = std::vector<Complex>(u.data(), u.data() + u.size());
  }
  return r;
}

/// sup over u in K(A)^⊥ of the quotient, as a generalized Hermitian
/// eigenproblem on the complement of the block-structural kernel.
inline RayleighResult rayleigh_variational(std::span<const double> c, int M, const MatrixC& a, double tol = kPsdTol) {
  detail::require_rayleigh_input(c, M, a, tol, "rayleigh_variational");
  const SubspaceBasis kernel = kernel_for_partition(stratify(a, GroupTag::trivial, tol));
  const Eigen::MatrixXcd q = orthogonal_complement(kernel).basis;
  const Eigen::MatrixXcd h = to_eigen(hc_matrix(c, a));
  const Eigen::MatrixXcd g = to_eigen(hadamard_power(a, static_cast<unsigned>(M)));
  Eigen::MatrixXcd hr = q.adjoint() * h * q;
  Eigen::MatrixXcd gr = q.adjoint() * g * q;
  hr = 0.5 * (hr + hr.adjoint()).eval();
  gr = 0.5 * (gr + gr.adjoint()).eval();
  Eigen::LLT<Eigen::MatrixXcd> llt(hr);
  if (llt.info() != Eigen::Success)
    throw domain_error("rayleigh_variational: h_c[A] is not definite on the complement of K(A)");
  // L^{-1} G L^{-*}
  const Eigen::MatrixXcd linv_g = llt.matrixL().solve(gr);
  const Eigen::MatrixXcd sym = llt.matrixL().solve(linv_g.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (sym + sym.adjoint()));
  const Eigen::Index top = es.eigenvalues().size() - 1;
  RayleighResult r;
  r.method = RayleighMethod::variational;
  r.value = std::max(0.0, es.eigenvalues()(top));
  const Eigen::VectorXcd y = llt.matrixU().solve(es.eigenvectors().col(top));
  Eigen::VectorXcd u = q * y;
  u.normalize();
  r.maximizer = std::vector<Complex>(u.data(), u.data() + u.size());
  return r;
}

/// u^* G u / u^* H u.
inline double rayleigh_quotient(std::span<const double> c, int M, const MatrixC& a, std::span<const Complex> u) {
  const Eigen::Map<const Eigen::VectorXcd> v(u.data(), static_cast<Eigen::Index>(u.size()));
  const Complex num = v.dot(to_eigen(hadamard_power(a, static_cast<unsigned>(M))) * v);
  const Complex den = v.dot(to_eigen(hc_matrix(c, a)) * v);
  return num.real() / den.real();
}

/// Smallest |u_i - u_j| relative to max |u_i|.
inline double coordinate_separation(std::span<const Complex> u) {
  double scale = 0.0;
  for (const auto& x : u) scale = std::max(scale, std::abs(x));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) gap = std::min(gap, std::abs(u[i] - u[j]));
  return scale > 0.0 ? gap / scale : 0.0;
}

/// sum_j |s_{mu(M,N,j)}(u)|^2 / c_j. Requires M >= N = u.size(); evaluates at
/// coincident coordinates too (the Schur values are polynomial), where it is
/// the formal limit rather than the Rayleigh constant of u u^*.
inline double rayleigh_rank_one(std::span<const double> c, int M, std::span<const Complex> u) {
  detail::require_positive_coeffs(c, "rayleigh_rank_one");
  const int N = static_cast<int>(u.size());
  detail::require(static_cast<std::size_t>(N) == c.size(), "rayleigh_rank_one: u length must equal number of coefficients");
  detail::require(M >= N, "rayleigh_rank_one: requires M >= N");
  double sum = 0.0;
  for (int j = 0; j < N; ++j) sum += std::norm(schur_eval<Complex>(hook_partition(M, N, j), u)) / c[static_cast<std::size_t>(j)];
  return sum;
}

struct DiscontinuityRow {
  double epsilon = 0.0;
  double closed_form = 0.0;  // rank-one Schur formula along the path
  double spectral = 0.0;     // rayleigh_constant along the path
};

struct DiscontinuityProbe {
  std::vector<DiscontinuityRow> rows;
  double on_point = 0.0;        // Psi(rho 1_N)
  double limit_estimate = 0.0;  // closed form at the smallest epsilon
  double formal_limit = 0.0;    // closed form at u = sqrt(rho) (1,...,1)
  double relative_jump = 0.0;   // |limit_estimate - on_point| / max(|.|)
};

/// Psi_{c,M} along A_eps = u_eps u_eps^*, u_{eps,k} = sqrt(rho)(1 - eps k / N),
/// and at rho 1_N itself.
inline DiscontinuityProbe discontinuity_probe(std::span<const double> c, int M, int N, double rho,
                                              std::span<const double> epsilons, double tol = kPsdTol) {
  detail::require_positive_coeffs(c, "discontinuity_probe");
  detail::require(static_cast<std::size_t>(N) == c.size(), "discontinuity_probe: N must equal number of coefficients");
  detail::require(M >= N, "discontinuity_probe: requires M >= N");
  detail::require(rho > 0.0, "discontinuity_probe: rho must be positive");
  detail::require(!epsilons.empty(), "discontinuity_probe: no epsilons");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    detail::require(epsilons[k] > 0.0, "discontinuity_probe: epsilons must be positive");
    detail::require(k == 0 || epsilons[k] < epsilons[k - 1], "discontinuity_probe: epsilons must be descending");
  }
  DiscontinuityProbe out;
  const double sr = std::sqrt(rho);
  for (double eps : epsilons) {
    std::vector<Complex> u(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) u[static_cast<std::size_t>(k - 1)] = sr * (1.0 - eps * k / N);
    DiscontinuityRow row;
    row.epsilon = eps;
    row.closed_form = rayleigh_rank_one(c, M, u);
    row.spectral = rayleigh_constant(c, M, outer_adjoint<Complex>(u), tol).value;
    out.rows.push_back(row);
  }
  out.on_point = rayleigh_constant(c, M, MatrixC::constant(static_cast<std::size_t>(N), Complex(rho)), tol).value;
  out.limit_estimate = out.rows.back().closed_form;
  const std::vector<Complex> top(static_cast<std::size_t>(N), Complex(sr));
  out.formal_limit = rayleigh_rank_one(c, M, top);
  out.relative_jump =
      std::abs(out.limit_estimate - out.on_point) / std::max(std::abs(out.limit_estimate), std::abs(out.on_point));
  return out;
}

}  // namespace entrywise
