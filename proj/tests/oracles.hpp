#pragma once

// Independent reference computations for the unit and acceptance tests. None
// of these call into the library's evaluation routes they are compared with.

#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using entrywise::Complex;
using entrywise::GaussianRational;
using entrywise::Matrix;
using entrywise::Partition;

/// Leibniz expansion over all permutations. Small n only.
template <class T>
T leibniz_det(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total = entrywise::scalar_traits<T>::from_int(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term = entrywise::scalar_traits<T>::from_int(1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += (inversions % 2) ? T(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Bialternant det(x_i^{lambda_j + N - j}) / det(x_i^{N - j}) at distinct x.
template <class T>
T bialternant(const Partition& lambda, const std::vector<T>& x) {
  const std::size_t n = x.size();
  Matrix<T> num(n, n);
  Matrix<T> den(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num(i, j) = entrywise::ipow(x[i], static_cast<unsigned>(lambda[j] + static_cast<int>(n - 1 - j)));
      den(i, j) = entrywise::ipow(x[i], static_cast<unsigned>(n - 1 - j));
    }
  return leibniz_det(num) / leibniz_det(den);
}

/// s_lambda(1^N) by the hook-content formula prod (N + c(b)) / h(b).
inline long double hook_content(const Partition& lambda) {
  const int n = static_cast<int>(lambda.length());
  long double value = 1.0L;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < lambda[static_cast<std::size_t>(r)]; ++c) {
      int leg = 0;
      for (int rr = r + 1; rr < n && lambda[static_cast<std::size_t>(rr)] > c; ++rr) ++leg;
      const int arm = lambda[static_cast<std::size_t>(r)] - c - 1;
      value *= static_cast<long double>(n + c - r) / static_cast<long double>(arm + leg + 1);
    }
  return value;
}

/// Threshold constant from the hook-content dimensions, in long double.
inline long double threshold_by_hooks(const std::vector<double>& c, int M, int N, double rho) {
  long double sum = 0.0L;
  for (int j = 0; j < N; ++j) {
    const long double d = hook_content(entrywise::hook_partition(M, N, j));
    sum += d * d * std::pow(static_cast<long double>(rho), M - j) / c[static_cast<std::size_t>(j)];
  }
  return sum;
}

/// Relative gap |a-b| / max(|a|, |b|, tiny).
inline double rel_gap(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

/// Bell numbers: number of set partitions of an n-set.
inline std::size_t bell(std::size_t n) {
  std::vector<std::vector<std::size_t>> tri(n + 1);
  tri[0] = {1};
  for (std::size_t i = 1; i <= n; ++i) {
    tri[i].push_back(tri[i - 1].back());
    for (std::size_t k = 0; k < tri[i - 1].size(); ++k) tri[i].push_back(tri[i].back() + tri[i - 1][k]);
  }
  return tri[n].front();
}

}  // namespace oracle
