#pragma once

// Integer partitions indexed by the ambient variable count N: hook partitions,
// staircase complements of strict tuples, and the closed-form dimension counts.

#include "entrywise/errors.hpp"

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace entrywise {

/// Weakly decreasing tuple of non-negative integers of fixed length N. Trailing
/// zeros are stored explicitly.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }
  Partition(std::initializer_list<int> parts) : parts_(parts) { validate(); }

  static Partition zero(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

  std::size_t length() const { return parts_.size(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }

  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  /// Number of nonzero parts.
  std::size_t nonzero_length() const {
    std::size_t l = 0;
    while (l < parts_.size() && parts_[l] > 0) ++l;
    return l;
  }
  bool is_zero() const { return nonzero_length() == 0; }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
    os << '(';
    for (std::size_t i = 0; i < p.parts_.size(); ++i) os << (i ? "," : "") << p.parts_[i];
    return os << ')';
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      detail::require(parts_[i] >= 0, "Partition: negative part");
      detail::require(i == 0 || parts_[i - 1] >= parts_[i], "Partition: parts must be weakly decreasing");
    }
  }

  std::vector<int> parts_;
};

/// Strictly decreasing tuple of non-negative integers (n_m > ... > n_1).
class StrictTuple {
 public:
  StrictTuple() = default;
  explicit StrictTuple(std::vector<int> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      detail::require(entries_[i] >= 0, "StrictTuple: negative entry");
      detail::require(i == 0 || entries_[i - 1] > entries_[i], "StrictTuple: entries must be strictly decreasing");
    }
  }
  StrictTuple(std::initializer_list<int> entries) : StrictTuple(std::vector<int>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

 private:
  std::vector<int> entries_;
};

/// mu(M, N, j) = (M-N+1, 1^{N-j-1}, 0^j).
inline Partition hook_partition(int M, int N, int j) {
  detail::require(N >= 1 && M >= N, "hook_partition: requires 1 <= N <= M");
  detail::require(j >= 0 && j < N, "hook_partition: requires 0 <= j < N");
  std::vector<int> parts(static_cast<std::size_t>(N), 0);
  parts[0] = M - N + 1;
  for (int k = 1; k <= N - j - 1; ++k) parts[static_cast<std::size_t>(k)] = 1;
  return Partition(std::move(parts));
}

/// lambda(n') = (n'_N - N + 1, n'_{N-1} - N + 2, ..., n'_1) for a strict tuple
/// n' listed largest first.
inline Partition staircase_complement(const StrictTuple& nprime) {
  const std::size_t n = nprime.size();
  std::vector<int> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    parts[i] = nprime[i] - static_cast<int>(n - 1 - i);
    detail::require(parts[i] >= 0, "staircase_complement: result is not a partition");
  }
  return Partition(std::move(parts));
}

/// n(n-1)...(n-k+1)/k! for any integer n and k >= 0; binom(-1, k) = (-1)^k.
inline std::int64_t generalized_binomial(std::int64_t n, std::int64_t k) {
  detail::require(k >= 0, "generalized_binomial: k must be non-negative");
  __int128 result = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    result *= (n - i);
    // running value is binom(n, i+1), so the division is exact
    result /= (i + 1);
    if (result == 0) return 0;
    if (result > std::numeric_limits<std::int64_t>::max() || result < std::numeric_limits<std::int64_t>::min())
      throw parameter_error("generalized_binomial: overflow");
  }
  return static_cast<std::int64_t>(result);
}

/// s_{mu(M,N,j)}(1,...,1) = binom(M, j) * binom(M-j-1, N-j-1).
inline std::int64_t hook_dimension(int M, int N, int j) {
  detail::require(N >= 1 && M >= N, "hook_dimension: requires 1 <= N <= M");
  detail::require(j >= 0 && j < N, "hook_dimension: requires 0 <= j < N");
  return generalized_binomial(M, j) * generalized_binomial(M - j - 1, N - j - 1);
}

inline std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.length(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace entrywise
