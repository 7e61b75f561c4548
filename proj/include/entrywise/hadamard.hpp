#pragma once

// Hadamard powers, entrywise polynomial maps, and the determinantal identities
// relating Hadamard powers of rank-one matrices to Schur polynomials.

#include "entrywise/errors.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/scalar.hpp"
#include "entrywise/schur.hpp"

#include <map>
#include <span>
#include <vector>

namespace entrywise {

/// Entrywise n-th power. A∘0 is the all-ones matrix, including at zero entries.
template <Scalar T>
Matrix<T> hadamard_power(const Matrix<T>& a, unsigned n) {
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = ipow(a(i, j), n);
  return m;
}

/// Sparse polynomial: exponent -> coefficient.
template <Scalar T>
using CoefficientMap = std::map<unsigned, T>;

template <Scalar T>
T eval_poly(const CoefficientMap<T>& f, const T& z) {
  T acc = scalar_traits<T>::from_int(0);
  for (const auto& [k, c] : f) acc += c * ipow(z, k);
  return acc;
}

/// f[A] = (f(a_ij)).
template <Scalar T>
Matrix<T> entrywise_poly(const CoefficientMap<T>& f, const Matrix<T>& a) {
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = eval_poly(f, a(i, j));
  return m;
}

/// h_c[A] = sum_j c_j A∘j for a dense coefficient list (c_0 first).
template <Scalar T>
Matrix<T> entrywise_dense_poly(std::span<const T> c, const Matrix<T>& a) {
  CoefficientMap<T> f;
  for (std::size_t j = 0; j < c.size(); ++j) f[static_cast<unsigned>(j)] = c[j];
  return entrywise_poly(f, a);
}

/// p_t(z) = t (c_0 + ... + c_{N-1} z^{N-1}) - z^M.
template <Scalar T>
struct PencilSpec {
  T t;
  std::vector<T> coeffs;
  int M = 0;

  std::size_t N() const { return coeffs.size(); }
};

/// det p_t[u v^T] by direct elimination.
template <Scalar T>
T pencil_det_direct(const PencilSpec<T>& spec, std::span<const T> u, std::span<const T> v) {
  detail::require(spec.N() >= 1 && spec.M >= 0, "pencil_det_direct: need N >= 1, M >= 0");
  detail::require(u.size() == spec.N() && v.size() == spec.N(), "pencil_det_direct: vector length must equal N");
  const Matrix<T> a = outer<T>(u, v);
  Matrix<T> p = spec.t * entrywise_dense_poly<T>(spec.coeffs, a);
  p -= hadamard_power(a, static_cast<unsigned>(spec.M));
  return determinant(std::move(p));
}

/// t^{N-1} Delta(u) Delta(v) prod c_j (t - sum_j s_mu(u) s_mu(v) / c_j),
/// mu = mu(M, N, j).
template <Scalar T>
T pencil_det_closed_form(const PencilSpec<T>& spec, std::span<const T> u, std::span<const T> v) {
  const int N = static_cast<int>(spec.N());
  detail::require(N >= 1 && spec.M >= N, "pencil_det_closed_form: requires M >= N >= 1");
  detail::require(u.size() == spec.N() && v.size() == spec.N(), "pencil_det_closed_form: vector length must equal N");
  T prod_c = scalar_traits<T>::from_int(1);
  for (const T& c : spec.coeffs) {
    if (scalar_traits<T>::is_zero(c)) throw parameter_error("pencil_det_closed_form: zero coefficient");
    prod_c *= c;
  }
  T sum = scalar_traits<T>::from_int(0);
  for (int j = 0; j < N; ++j) {
    const Partition mu = hook_partition(spec.M, N, j);
    sum += schur_eval<T>(mu, u) * schur_eval<T>(mu, v) / spec.coeffs[static_cast<std::size_t>(j)];
  }
  return ipow(spec.t, static_cast<unsigned>(N - 1)) * vandermonde_det<T>(u) * vandermonde_det<T>(v) * prod_c *
         (spec.t - sum);
}

/// Coefficients attached to the exponents of a strict tuple, n_j -> c_{n_j}.
template <Scalar T>
using ExponentCoefficients = std::map<int, T>;

namespace detail {
template <Scalar T>
StrictTuple exponents_of(const ExponentCoefficients<T>& cs) {
  std::vector<int> e;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) e.push_back(it->first);
  return StrictTuple(std::move(e));
}
}  // namespace detail

/// det sum_j c_{n_j} (u v^T)∘n_j, by direct elimination.
template <Scalar T>
T cauchy_binet_lhs(const ExponentCoefficients<T>& cs, std::span<const T> u, std::span<const T> v) {
  detail::require(u.size() == v.size(), "cauchy_binet_lhs: u and v differ in length");
  const Matrix<T> a = outer<T>(u, v);
  Matrix<T> sum(u.size(), u.size());
  for (const auto& [n, c] : cs) sum += c * hadamard_power(a, static_cast<unsigned>(n));
  return determinant(std::move(sum));
}

/// Delta(u) Delta(v) sum over N-subsets n' of n of s_{lambda(n')}(u) s_{lambda(n')}(v) prod c_{n'_k}.
template <Scalar T>
T cauchy_binet_rhs(const ExponentCoefficients<T>& cs, std::span<const T> u, std::span<const T> v) {
  detail::require(u.size() == v.size(), "cauchy_binet_rhs: u and v differ in length");
  const std::size_t N = u.size();
  const StrictTuple n = detail::exponents_of(cs);
  const std::size_t m = n.size();
  T sum = scalar_traits<T>::from_int(0);
  if (m < N) return sum;

  // Subsets of size N as increasing index lists into n (largest exponent first).
  std::vector<std::size_t> idx(N);
  for (std::size_t k = 0; k < N; ++k) idx[k] = k;
  while (true) {
    std::vector<int> chosen(N);
    T prod_c = scalar_traits<T>::from_int(1);
    for (std::size_t k = 0; k < N; ++k) {
      chosen[k] = n[idx[k]];
      prod_c *= cs.at(chosen[k]);
    }
    const Partition lambda = staircase_complement(StrictTuple(std::move(chosen)));
    sum += schur_eval<T>(lambda, u) * schur_eval<T>(lambda, v) * prod_c;

    std::size_t k = N;
    while (k > 0 && idx[k - 1] == m - N + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t r = k; r < N; ++r) idx[r] = idx[r - 1] + 1;
  }
  return vandermonde_det<T>(u) * vandermonde_det<T>(v) * sum;
}

/// Diagonal factors D_{M,j}(A) with A∘M = sum_j D_{M,j}(A) A∘j, stored as their
/// diagonals: D[j][i] = (-1)^{N-j-1} s_{mu(M,N,j)}(row i of A). For M < N the
/// decomposition is the single term D_{M,M} = I.
template <Scalar T>
std::vector<std::vector<T>> hadamard_decomposition(const Matrix<T>& a, int M) {
  detail::require(a.is_square() && a.rows() >= 1, "hadamard_decomposition: square nonempty matrix required");
  detail::require(M >= 0, "hadamard_decomposition: M must be non-negative");
  const int N = static_cast<int>(a.rows());
  const T zero = scalar_traits<T>::from_int(0);
  std::vector<std::vector<T>> d(static_cast<std::size_t>(N), std::vector<T>(a.rows(), zero));
  if (M < N) {
    for (auto& x : d[static_cast<std::size_t>(M)]) x = scalar_traits<T>::from_int(1);
    return d;
  }
  for (int j = 0; j < N; ++j) {
    const Partition mu = hook_partition(M, N, j);
    const bool negate = ((N - j - 1) % 2) != 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      T s = schur_eval<T>(mu, a.row(i));
      d[static_cast<std::size_t>(j)][i] = negate ? T(-s) : s;
    }
  }
  return d;
}

/// A∘M - sum_j D_{M,j}(A) A∘j.
template <Scalar T>
Matrix<T> hadamard_decomposition_residual(const Matrix<T>& a, int M) {
  const auto d = hadamard_decomposition(a, M);
  Matrix<T> r = hadamard_power(a, static_cast<unsigned>(M));
  for (std::size_t j = 0; j < d.size(); ++j)
    r -= Matrix<T>::diagonal(d[j]) * hadamard_power(a, static_cast<unsigned>(j));
  return r;
}

/// Solution s of V(u) s = u∘M with V(u) = (u_i^{j-1}):
/// s_i = (-1)^{N-i} s_{mu(M,N,i-1)}(u).
template <Scalar T>
std::vector<T> vandermonde_solve_moments(std::span<const T> u, int M) {
  const int N = static_cast<int>(u.size());
  detail::require(N >= 1 && M >= N, "vandermonde_solve_moments: requires M >= N >= 1");
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      bool same = false;
      if constexpr (is_exact_v<T>) {
        same = (u[i] == u[j]);
      } else {
        same = approx_equal(u[i], u[j], 1e-14);
      }
      if (same) throw domain_error("vandermonde_solve_moments: repeated node at positions " +
                                   std::to_string(i) + " and " + std::to_string(j));
    }
  std::vector<T> s(u.size());
  for (int i = 1; i <= N; ++i) {
    T v = schur_eval<T>(hook_partition(M, N, i - 1), u);
    s[static_cast<std::size_t>(i - 1)] = ((N - i) % 2 != 0) ? T(-v) : v;
  }
  return s;
}

}  // namespace entrywise
