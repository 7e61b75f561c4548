#pragma once

// G-orbit block decomposition of PSD matrices and the simultaneous kernels of
// Hadamard powers.
//
// For a subgroup G of C^x (three are supported) the partition pi^G(A) is the
// maximal partition of the indices into blocks whose diagonal submatrices have
// rank <= 1 with all entries in one G-orbit. The simultaneous kernel
// K(A) = ∩_n ker A∘n depends only on pi^{1}(A): it is the direct sum of the
// zero-sum subspaces supported on the blocks.

#include "entrywise/errors.hpp"
#include "entrywise/hadamard.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/psd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace entrywise {

enum class GroupTag { trivial, unit_circle, nonzero_complex };

inline std::string_view to_string(GroupTag g) {
  switch (g) {
    case GroupTag::trivial: return "trivial";
    case GroupTag::unit_circle: return "unit_circle";
    case GroupTag::nonzero_complex: return "nonzero_complex";
  }
  return "?";
}

/// Whether x and y lie in one G-orbit, up to the absolute tolerance eps.
inline bool same_orbit(Complex x, Complex y, GroupTag g, double eps) {
  switch (g) {
    case GroupTag::trivial: return std::abs(x - y) <= eps;
    case GroupTag::unit_circle: return std::abs(std::abs(x) - std::abs(y)) <= eps;
    case GroupTag::nonzero_complex: return (std::abs(x) <= eps) == (std::abs(y) <= eps);
  }
  return false;
}

/// Partition of {0..n-1} into nonempty disjoint blocks. Canonical form: each
/// block ascending, blocks ordered by their smallest element.
class IndexPartition {
 public:
  IndexPartition() = default;
  IndexPartition(std::size_t n, std::vector<std::vector<std::size_t>> blocks) : n_(n), blocks_(std::move(blocks)) {
    std::vector<int> seen(n_, 0);
    for (auto& b : blocks_) {
      detail::require(!b.empty(), "IndexPartition: empty block");
      std::sort(b.begin(), b.end());
      for (std::size_t i : b) {
        detail::require(i < n_, "IndexPartition: index out of range");
        detail::require(seen[i]++ == 0, "IndexPartition: blocks overlap");
      }
    }
    detail::require(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }),
                    "IndexPartition: blocks do not cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  static IndexPartition singletons(std::size_t n) {
    std::vector<std::vector<std::size_t>> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = {i};
    return {n, std::move(b)};
  }
  static IndexPartition whole(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {n, {std::move(all)}};
  }

  std::size_t ground_size() const { return n_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

  /// Block id of every index.
  std::vector<std::size_t> labels() const {
    std::vector<std::size_t> l(n_);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (std::size_t i : blocks_[b]) l[i] = b;
    return l;
  }

  friend bool operator==(const IndexPartition&, const IndexPartition&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
};

/// "{{1,2},{3}}" with 1-based indices.
inline std::string to_string(const IndexPartition& p) {
  std::string s = "{";
  for (std::size_t b = 0; b < p.size(); ++b) {
    s += b ? ",{" : "{";
    for (std::size_t k = 0; k < p.blocks()[b].size(); ++k)
      s += (k ? "," : "") + std::to_string(p.blocks()[b][k] + 1);
    s += "}";
  }
  return s + "}";
}

/// Parses "1,2|3" (1-based, blocks separated by '|') over the ground set {1..n}.
inline IndexPartition parse_index_partition(std::string_view text, std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(1);
  std::size_t value = 0;
  bool have = false;
  auto flush = [&] {
    if (!have) throw parameter_error("parse_index_partition: empty entry in '" + std::string(text) + "'");
    if (value == 0) throw parameter_error("parse_index_partition: indices are 1-based");
    blocks.back().push_back(value - 1);
    value = 0;
    have = false;
  };
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      have = true;
    } else if (ch == ',') {
      flush();
    } else if (ch == '|') {
      flush();
      blocks.emplace_back();
    } else if (ch != ' ') {
      throw parameter_error("parse_index_partition: unexpected character in '" + std::string(text) + "'");
    }
  }
  flush();
  return {n, std::move(blocks)};
}

/// pi1 ≺ pi2: every block of pi1 lies inside a block of pi2 (pi1 refines pi2).
inline bool refinement_leq(const IndexPartition& pi1, const IndexPartition& pi2) {
  if (pi1.ground_size() != pi2.ground_size())
    throw parameter_error("refinement_leq: partitions of different ground sets");
  const auto l2 = pi2.labels();
  for (const auto& b : pi1.blocks())
    for (std::size_t i : b)
      if (l2[i] != l2[b.front()]) return false;
  return true;
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

inline bool entries_single_orbit(const MatrixC& sub, GroupTag g, double eps) {
  const Complex ref = sub(0, 0);
  for (std::size_t i = 0; i < sub.rows(); ++i)
    for (std::size_t j = 0; j < sub.cols(); ++j)
      if (!same_orbit(ref, sub(i, j), g, eps)) return false;
  return true;
}

/// Second singular value <= eps (rank at most one numerically).
inline bool rank_at_most_one(const MatrixC& sub, double eps) {
  if (std::min(sub.rows(), sub.cols()) < 2) return true;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(sub));
  return svd.singularValues()(1) <= eps;
}

}  // namespace detail

/// Conditions (1) and (2) on a single diagonal block.
inline bool block_conforms(const MatrixC& a, std::span<const std::size_t> block, GroupTag g, double tol) {
  const double eps = tol * std::max(1.0, a.max_abs());
  const MatrixC sub = a.principal_submatrix(block);
  return detail::rank_at_most_one(sub, eps) && detail::entries_single_orbit(sub, g, eps);
}

/// pi^G(A). The zero matrix maps to the single block {1..N}.
inline IndexPartition stratify(const MatrixC& a, GroupTag g, double tol = kPsdTol) {
  require_psd(a, tol, "stratify");
  const std::size_t n = a.rows();
  if (a.max_abs() == 0.0) return IndexPartition::whole(n);

  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t pair[2] = {i, j};
      if (block_conforms(a, pair, g, tol)) uf.unite(i, j);
    }
  std::vector<std::vector<std::size_t>> comps(n);
  for (std::size_t i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);

  // The pairwise relation may fail to be transitive at the tolerance boundary;
  // split any component that does not satisfy the block conditions as a whole.
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& c : comps) {
    if (c.empty()) continue;
    if (block_conforms(a, c, g, tol)) {
      blocks.push_back(std::move(c));
      continue;
    }
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i : c) {
      bool placed = false;
      for (auto& grp : groups) {
        grp.push_back(i);
        if (block_conforms(a, grp, g, tol)) {
          placed = true;
          break;
        }
        grp.pop_back();
      }
      if (!placed) groups.push_back({i});
    }
    for (auto& grp : groups) blocks.push_back(std::move(grp));
  }
  return {n, std::move(blocks)};
}

/// Every off-diagonal block A_{I_i x I_j} has rank <= 1 with entries in one G-orbit.
inline bool verify_offdiagonal_structure(const MatrixC& a, const IndexPartition& pi, GroupTag g, double tol = kPsdTol) {
  detail::require(pi.ground_size() == a.rows(), "verify_offdiagonal_structure: size mismatch");
  const double eps = tol * std::max(1.0, a.max_abs());
  for (std::size_t p = 0; p < pi.size(); ++p)
    for (std::size_t q = 0; q < pi.size(); ++q) {
      if (p == q) continue;
      const MatrixC sub = a.submatrix(pi.blocks()[p], pi.blocks()[q]);
      if (!detail::rank_at_most_one(sub, eps) || !detail::entries_single_orbit(sub, g, eps)) return false;
    }
  return true;
}

/// No union of two blocks satisfies the block conditions.
inline bool blocks_are_maximal(const MatrixC& a, const IndexPartition& pi, GroupTag g, double tol = kPsdTol) {
  for (std::size_t p = 0; p < pi.size(); ++p)
    for (std::size_t q = p + 1; q < pi.size(); ++q) {
      std::vector<std::size_t> merged = pi.blocks()[p];
      merged.insert(merged.end(), pi.blocks()[q].begin(), pi.blocks()[q].end());
      if (block_conforms(a, merged, g, tol)) return false;
    }
  return true;
}

/// K_pi = ⊕_j ker 1_{I_j x I_j}, with an orthonormal (Helmert) basis per block.
inline SubspaceBasis kernel_for_partition(const IndexPartition& pi) {
  const std::size_t n = pi.ground_size();
  const std::size_t dim = n - pi.size();
  SubspaceBasis k{n, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim))};
  Eigen::Index col = 0;
  for (const auto& b : pi.blocks()) {
    for (std::size_t r = 1; r < b.size(); ++r, ++col) {
      const double norm = std::sqrt(static_cast<double>(r * (r + 1)));
      for (std::size_t s = 0; s < r; ++s) k.basis(static_cast<Eigen::Index>(b[s]), col) = 1.0 / norm;
      k.basis(static_cast<Eigen::Index>(b[r]), col) = -static_cast<double>(r) / norm;
    }
  }
  return k;
}

/// K(A) = ker h_1[A] with h_1[A] = sum_{j<N} A∘j, via eigenvalues below
/// rank_cut * lambda_max. A is rescaled to unit max entry first; K(A) is
/// invariant under positive scaling.
inline SubspaceBasis simultaneous_kernel(const MatrixC& a, double rank_cut = kRankCut, double tol = kPsdTol) {
  require_psd(a, tol, "simultaneous_kernel");
  const std::size_t n = a.rows();
  const double s = a.max_abs();
  const MatrixC scaled = s > 0.0 ? a * Complex(1.0 / s) : a;
  const std::vector<Complex> ones(n, Complex(1.0));
  const MatrixC h = entrywise_dense_poly<Complex>(ones, scaled);
  const HermitianEigen e = hermitian_eigen(h);
  const double lmax = e.max();
  Eigen::Index k = 0;
  while (k < e.eigenvalues.size() && e.eigenvalues(k) <= rank_cut * lmax) ++k;
  return {n, e.eigenvectors.leftCols(k)};
}

/// rank(A) <= |pi^{C^x}(A)|.
inline bool rank_bound_check(const MatrixC& a, double tol = kPsdTol) {
  const IndexPartition pi = stratify(a, GroupTag::nonzero_complex, tol);
  return numerical_rank(a, tol) <= pi.size();
}

/// A PSD matrix with stratify(A, G) == pi: A_{I_i x I_j} = c_ij u_i u_j^* for a
/// random positive definite core C = (c_ij) and per-block vectors u_i with
/// entries in one G-orbit. Retries a few seeds before giving up.
inline MatrixC generate_in_stratum(const IndexPartition& pi, GroupTag g, std::uint64_t seed, double tol = kPsdTol) {
  const std::size_t n = pi.ground_size();
  const std::size_t k = pi.size();
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Eigen::MatrixXcd b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd core =
        b * b.adjoint() / static_cast<double>(k) + 0.5 * Eigen::MatrixXcd::Identity(b.rows(), b.cols());

    std::vector<Complex> u(n);
    for (const auto& blk : pi.blocks()) {
      const double r = 0.5 + unit(rng);
      for (std::size_t i : blk) {
        switch (g) {
          case GroupTag::trivial: u[i] = Complex(1.0); break;
          case GroupTag::unit_circle: u[i] = std::polar(r, 2 * std::numbers::pi * unit(rng)); break;
          case GroupTag::nonzero_complex:
            u[i] = std::polar(0.5 + unit(rng), 2 * std::numbers::pi * unit(rng));
            break;
        }
      }
    }
    const auto label = pi.labels();
    MatrixC a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = core(static_cast<Eigen::Index>(label[i]), static_cast<Eigen::Index>(label[j])) * u[i] * std::conj(u[j]);
    // exact Hermitian symmetry
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = Complex(a(i, i).real(), 0.0);
      for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
    }
    if (stratify(a, g, tol) == pi) return a;
  }
  throw domain_error("generate_in_stratum: could not realize " + to_string(pi) + " for group " +
                     std::string(to_string(g)));
}

struct ClosureStep {
  double t = 0.0;         // path parameter; 0 is the limit point
  double distance = 0.0;  // Frobenius distance to the limit point
  IndexPartition label;
};

/// Path A_t = L + t P with L generated in the coarser stratum pi_limit and P in
/// the finer stratum pi_path (G trivial), t = 2^0, 2^-1, ..., then t = 0.
/// Every A_t with t > 0 lies in the stratum of pi_path; the limit lies in the
/// stratum of pi_limit. Requires pi_path ≺ pi_limit.
inline std::vector<ClosureStep> closure_probe(const IndexPartition& pi_limit, const IndexPartition& pi_path, int steps,
                                              std::uint64_t seed = 0, double tol = kPsdTol) {
  if (!refinement_leq(pi_path, pi_limit))
    throw parameter_error("closure_probe: path partition " + to_string(pi_path) + " must refine the limit partition " +
                          to_string(pi_limit));
  detail::require(steps >= 1, "closure_probe: steps must be positive");
  const MatrixC limit = generate_in_stratum(pi_limit, GroupTag::trivial, seed, tol);
  const MatrixC direction = generate_in_stratum(pi_path, GroupTag::trivial, seed + 1, tol);
  std::vector<ClosureStep> out;
  auto frob = [](const MatrixC& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
  };
  for (int k = 0; k <= steps; ++k) {
    const double t = (k == steps) ? 0.0 : std::ldexp(1.0, -k);
    const MatrixC at = limit + direction * Complex(t);
    out.push_back({t, frob(at - limit), stratify(at, GroupTag::trivial, tol)});
  }
  return out;
}

}  // namespace entrywise
