#pragma once

// Point evaluation of Schur polynomials.
//
// schur_eval uses the Jacobi-Trudi determinant det(h_{lambda_i - i + j}) in
// the complete homogeneous symmetric polynomials, which stays well defined at
// repeated coordinates. The SSYT enumeration and the bialternant ratio are
// independent routes kept for verification.

#include "entrywise/errors.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/scalar.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace entrywise {

/// Delta_N(x) = prod_{i<j} (x_i - x_j).
template <Scalar T>
T vandermonde_det(std::span<const T> x) {
  T d = scalar_traits<T>::from_int(1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) d *= (x[i] - x[j]);
  return d;
}

/// (h_0(x), ..., h_K(x)) by adding one variable at a time:
/// h_k(x_1..x_i) = h_k(x_1..x_{i-1}) + x_i * h_{k-1}(x_1..x_i).
template <Scalar T>
std::vector<T> complete_homogeneous(std::span<const T> x, int max_degree) {
  const T zero = scalar_traits<T>::from_int(0);
  std::vector<T> h(static_cast<std::size_t>(max_degree) + 1, zero);
  h[0] = scalar_traits<T>::from_int(1);
  for (const T& xi : x) {
    for (int k = 1; k <= max_degree; ++k) h[static_cast<std::size_t>(k)] += xi * h[static_cast<std::size_t>(k - 1)];
  }
  return h;
}

/// s_lambda(x) for partitions of length N = x.size().
template <Scalar T>
T schur_eval(const Partition& lambda, std::span<const T> x) {
  if (lambda.length() != x.size())
    throw parameter_error("schur_eval: partition length " + std::to_string(lambda.length()) +
                          " does not match " + std::to_string(x.size()) + " variables");
  const std::size_t l = lambda.nonzero_length();
  if (l == 0) return scalar_traits<T>::from_int(1);
  const int top = lambda[0] + static_cast<int>(l) - 1;
  const std::vector<T> h = complete_homogeneous<T>(x, top);
  const T zero = scalar_traits<T>::from_int(0);
  Matrix<T> jt(l, l, zero);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const int k = lambda[i] - static_cast<int>(i) + static_cast<int>(j);
      if (k >= 0) jt(i, j) = h[static_cast<std::size_t>(k)];
    }
  return determinant(std::move(jt));
}

template <Scalar T>
T schur_eval(const Partition& lambda, const std::vector<T>& x) {
  return schur_eval<T>(lambda, std::span<const T>(x));
}

/// Upper bound on the number of tableaux schur_eval_ssyt_oracle will visit.
inline constexpr std::int64_t kSsytBudget = 10'000'000;

/// Sum over semistandard Young tableaux T of shape lambda with entries in
/// {1..N} of x^{weight(T)}. Throws resource_error past `budget` tableaux.
template <Scalar T>
T schur_eval_ssyt_oracle(const Partition& lambda, std::span<const T> x, std::int64_t budget = kSsytBudget) {
  detail::require(lambda.length() == x.size(), "schur_eval_ssyt_oracle: dimension mismatch");
  const int n = static_cast<int>(x.size());
  const std::size_t rows = lambda.nonzero_length();
  std::vector<std::vector<int>> tab(rows);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < rows; ++r) {
    tab[r].assign(static_cast<std::size_t>(lambda[r]), 0);
    for (std::size_t c = 0; c < tab[r].size(); ++c) cells.emplace_back(r, c);
  }
  // A column of height > N admits no strictly increasing filling.
  if (static_cast<int>(rows) > n) return scalar_traits<T>::from_int(0);

  T total = scalar_traits<T>::from_int(0);
  std::int64_t count = 0;
  auto fill = [&](auto&& self, std::size_t k, const T& monomial) -> void {
    if (k == cells.size()) {
      if (++count > budget) throw resource_error("schur_eval_ssyt_oracle: tableau budget exceeded");
      total += monomial;
      return;
    }
    const auto [r, c] = cells[k];
    int lo = 1;
    if (c > 0) lo = std::max(lo, tab[r][c - 1]);
    if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
    // cells below in this column still need room for strictly larger entries
    std::size_t below = 0;
    for (std::size_t rr = r + 1; rr < rows && c < tab[rr].size(); ++rr) ++below;
    const int hi = n - static_cast<int>(below);
    for (int v = lo; v <= hi; ++v) {
      tab[r][c] = v;
      self(self, k + 1, monomial * x[static_cast<std::size_t>(v - 1)]);
    }
    tab[r][c] = 0;
  };
  fill(fill, 0, scalar_traits<T>::from_int(1));
  return total;
}

template <Scalar T>
T schur_eval_ssyt_oracle(const Partition& lambda, const std::vector<T>& x, std::int64_t budget = kSsytBudget) {
  return schur_eval_ssyt_oracle<T>(lambda, std::span<const T>(x), budget);
}

/// Number of SSYT of shape lambda with entries in {1..N}, by enumeration.
inline std::int64_t count_ssyt(const Partition& lambda, std::int64_t budget = kSsytBudget) {
  const std::vector<GaussianRational> ones(lambda.length(), GaussianRational(1));
  const GaussianRational c = schur_eval_ssyt_oracle<GaussianRational>(lambda, ones, budget);
  return static_cast<std::int64_t>(boost::multiprecision::numerator(c.real()));
}

/// s_lambda(1, z, ..., z^{N-1}) by the product formula
///   prod_{i<j} (z^{n_j + j} - z^{n_i + i}) / (z^j - z^i),
/// where n_1 <= ... <= n_N are the parts of lambda listed smallest first. At
/// z = 1 the integer form prod_{i<j} (n_j - n_i + j - i)/(j - i) is used.
template <Scalar T>
T principal_specialization(const Partition& lambda, const T& z, int N) {
  detail::require(N >= 1 && static_cast<int>(lambda.length()) == N, "principal_specialization: length mismatch");
  const T one = scalar_traits<T>::from_int(1);
  if (lambda.is_zero()) return one;
  auto n = [&](int i) { return lambda[static_cast<std::size_t>(N - i)]; };  // 1-indexed, smallest first

  bool z_is_one = false;
  if constexpr (is_exact_v<T>) {
    z_is_one = (z == one);
  } else {
    z_is_one = approx_equal(z, one, 0.0);
  }
  if (z_is_one) {
    Rational acc = 1;
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) acc *= Rational(n(j) - n(i) + j - i, j - i);
    if constexpr (is_exact_v<T>) {
      return T(acc);
    } else {
      return T(static_cast<double>(acc), 0.0);
    }
  }

  T num = one;
  T den = one;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) {
      const T d = ipow(z, static_cast<unsigned>(j)) - ipow(z, static_cast<unsigned>(i));
      if (scalar_traits<T>::is_zero(d))
        throw domain_error("principal_specialization: z^" + std::to_string(j) + " = z^" + std::to_string(i));
      num *= ipow(z, static_cast<unsigned>(n(j) + j)) - ipow(z, static_cast<unsigned>(n(i) + i));
      den *= d;
    }
  return num / den;
}

}  // namespace entrywise
