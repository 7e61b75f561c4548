#pragma once

// Sharp negative threshold for f(z) = c_0 + c_1 z + ... + c_{N-1} z^{N-1} + c' z^M
// to preserve positivity on P_N(closed disc of radius rho):
//
//   C(c; z^M; N, rho) = sum_{j<N} binom(M,j)^2 binom(M-j-1, N-j-1)^2 rho^{M-j} / c_j
//
// and c' >= -1/C is necessary and sufficient when all c_j > 0. The binomials
// are generalized (falling factorial), so M < N gives C = 1/c_M.

#include "entrywise/errors.hpp"
#include "entrywise/hadamard.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/psd.hpp"
#include "entrywise/rayleigh.hpp"
#include "entrywise/sampling.hpp"
#include "entrywise/schur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entrywise {

/// (c_0, ..., c_{N-1}) with an optional coefficient c' at degree M.
struct CoefficientTuple {
  std::vector<double> c;
  std::optional<double> cprime;

  std::size_t N() const { return c.size(); }

  /// c_m = (c_{N-m}, ..., c_{N-1}).
  CoefficientTuple tail(std::size_t m) const {
    detail::require(m >= 1 && m <= c.size(), "CoefficientTuple::tail: m out of range");
    return {std::vector<double>(c.end() - static_cast<std::ptrdiff_t>(m), c.end()), std::nullopt};
  }
  /// c' = (c_1, 2 c_2, ..., (N-1) c_{N-1}): coefficients of the derivative.
  CoefficientTuple derivative() const {
    detail::require(c.size() >= 2, "CoefficientTuple::derivative: need N >= 2");
    std::vector<double> d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
    return {std::move(d), std::nullopt};
  }
};

namespace detail {
inline void require_threshold_args(const CoefficientTuple& c, int M, int N, double rho, const char* who) {
  require(N >= 1 && static_cast<std::size_t>(N) == c.N(),
          std::string(who) + ": N must equal the number of coefficients");
  require(M >= 0, std::string(who) + ": M must be non-negative");
  require(rho > 0.0 && std::isfinite(rho), std::string(who) + ": rho must be positive");
  for (double x : c.c)
    if (!(x > 0.0)) throw parameter_error(std::string(who) + ": coefficients c_j must be positive");
}
}  // namespace detail

/// C(c; z^M; N, rho).
inline double threshold_constant(const CoefficientTuple& c, int M, int N, double rho) {
  detail::require_threshold_args(c, M, N, rho, "threshold_constant");
  double sum = 0.0;
  for (int j = 0; j < N; ++j) {
    const auto b1 = static_cast<double>(generalized_binomial(M, j));
    const auto b2 = static_cast<double>(generalized_binomial(M - j - 1, N - j - 1));
    if (b1 == 0.0 || b2 == 0.0) continue;
    sum += b1 * b1 * b2 * b2 * std::pow(rho, M - j) / c.c[static_cast<std::size_t>(j)];
  }
  return sum;
}

/// (C_1, ..., C_N) with C_m = C(c_m; z^{M-N+m}; m, rho). Requires M >= N.
inline std::vector<double> partial_constants(const CoefficientTuple& c, int M, int N, double rho) {
  detail::require_threshold_args(c, M, N, rho, "partial_constants");
  detail::require(M >= N, "partial_constants: requires M >= N");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int m = 1; m <= N; ++m) out.push_back(threshold_constant(c.tail(static_cast<std::size_t>(m)), M - N + m, m, rho));
  return out;
}

enum class Admissibility { admissible, boundary, inadmissible };

inline std::string_view to_string(Admissibility a) {
  switch (a) {
    case Admissibility::admissible: return "admissible";
    case Admissibility::boundary: return "boundary";
    case Admissibility::inadmissible: return "inadmissible";
  }
  return "?";
}

/// |c' + 1/C| below this is reported as a boundary verdict.
inline constexpr double kBoundaryBand = 1e-12;

inline Admissibility admissibility(double cprime, double constant) {
  if (cprime >= 0.0) return Admissibility::admissible;
  const double bound = -1.0 / constant;
  if (std::abs(cprime - bound) <= kBoundaryBand) return Admissibility::boundary;
  return cprime >= bound ? Admissibility::admissible : Admissibility::inadmissible;
}

/// c' >= 0 or c' >= -1/C (boundary counts as admissible).
inline bool admissible(const CoefficientTuple& c, int M, int N, double rho) {
  detail::require(c.cprime.has_value(), "admissible: c' is required");
  return admissibility(*c.cprime, threshold_constant(c, M, N, rho)) != Admissibility::inadmissible;
}

struct ThresholdReport {
  double constant = 0.0;
  std::vector<double> partials;  // empty when M < N
  std::optional<Admissibility> verdict;
  std::optional<MatrixC> witness;
};

inline ThresholdReport threshold_report(const CoefficientTuple& c, int M, int N, double rho) {
  ThresholdReport r;
  r.constant = threshold_constant(c, M, N, rho);
  if (M >= N) r.partials = partial_constants(c, M, N, rho);
  if (c.cprime) r.verdict = admissibility(*c.cprime, r.constant);
  return r;
}

/// Real polynomial as exponent -> coefficient.
using RealPoly = std::map<unsigned, double>;

inline RealPoly make_poly(const CoefficientTuple& c, int M) {
  RealPoly f;
  for (std::size_t j = 0; j < c.c.size(); ++j) f[static_cast<unsigned>(j)] += c.c[j];
  if (c.cprime) f[static_cast<unsigned>(M)] += *c.cprime;
  return f;
}

inline MatrixC apply_poly(const RealPoly& f, const MatrixC& a) {
  CoefficientMap<Complex> fc;
  for (const auto& [k, v] : f) fc[k] = Complex(v, 0.0);
  return entrywise_poly(fc, a);
}

struct PositivityVerdict {
  bool preserved = true;  // no witness among the samples
  std::size_t samples_checked = 0;
  std::optional<MatrixC> witness;
  std::optional<SampleKind> witness_kind;
  double witness_min_eigenvalue = 0.0;
};

/// Samples A in P_N(closed disc rho) from the mixture sampler and tests f[A]
/// for PSD; stops at the first violation.
inline PositivityVerdict preserves_positivity_check(const RealPoly& f, int N, double rho, std::size_t samples,
                                                    double tol = kPsdTol, std::uint64_t seed = 0) {
  detail::require(N >= 1 && rho > 0.0 && samples >= 1, "preserves_positivity_check: need N >= 1, rho > 0, samples >= 1");
  PsdSampler sampler(seed);
  PositivityVerdict v;
  for (std::size_t s = 0; s < samples; ++s) {
    const MatrixC a = sampler.sample(static_cast<std::size_t>(N), rho);
    const PsdVerdict pv = psd_verdict(apply_poly(f, a), tol);
    ++v.samples_checked;
    if (!pv.psd) {
      v.preserved = false;
      v.witness = a;
      v.witness_kind = sampler.last_kind();
      v.witness_min_eigenvalue = pv.min_eigenvalue;
      break;
    }
  }
  return v;
}

struct SharpnessEstimate {
  double value = 0.0;
  std::vector<double> maximizer;
};

/// Grid points sqrt(rho)(1 - (k/grid)^2), k = 0..grid-1, clustered at sqrt(rho).
inline std::vector<double> sharpness_grid(double rho, int grid) {
  std::vector<double> g(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double s = static_cast<double>(k) / grid;
    g[static_cast<std::size_t>(k)] = std::sqrt(rho) * (1.0 - s * s);
  }
  return g;
}

/// sup of sum_j s_{mu(M,N,j)}(u)^2 / c_j over u with distinct coordinates from
/// the sharpness grid. The objective has non-negative coefficients, so it is
/// nondecreasing in every coordinate on the positive orthant and the maximum
/// over distinct grid tuples sits at the N largest grid points. Refining the
/// grid moves those points up, so the estimate is nondecreasing in `grid`.
inline SharpnessEstimate empirical_sharpness(const CoefficientTuple& c, int M, int N, double rho, int grid) {
  detail::require_threshold_args(c, M, N, rho, "empirical_sharpness");
  detail::require(grid >= 2 && grid >= N, "empirical_sharpness: grid must be >= max(2, N)");
  detail::require(M >= N, "empirical_sharpness: requires M >= N");
  const auto g = sharpness_grid(rho, grid);
  std::vector<Complex> u(g.begin(), g.begin() + N);
  SharpnessEstimate e;
  e.value = rayleigh_rank_one(c.c, M, u);
  e.maximizer.assign(g.begin(), g.begin() + N);
  return e;
}

struct WitnessSearch {
  bool found = false;
  std::size_t evaluated = 0;
  std::optional<MatrixC> witness;
  std::vector<double> u;
  double min_eigenvalue = 0.0;
};

/// Searches rank-one u u^T, u in (0, sqrt(rho))^N, for f[u u^T] not PSD. First a
/// grid over geometric directions u_k = x q^k, then uniform random u, up to
/// `budget` candidates in total. Not finding one is an inconclusive verdict.
inline WitnessSearch horn_necessity_witness(const RealPoly& f, int N, double rho, std::size_t budget,
                                            std::uint64_t seed = 0, double tol = kPsdTol) {
  detail::require(N >= 1 && rho > 0.0, "horn_necessity_witness: need N >= 1 and rho > 0");
  WitnessSearch out;
  const double sr = std::sqrt(rho);
  auto test = [&](const std::vector<double>& u) {
    ++out.evaluated;
    std::vector<Complex> uc(u.begin(), u.end());
    const MatrixC a = outer_adjoint<Complex>(uc);
    const PsdVerdict v = psd_verdict(apply_poly(f, a), tol);
    if (!v.psd) {
      out.found = true;
      out.witness = a;
      out.u = u;
      out.min_eigenvalue = v.min_eigenvalue;
    }
    return out.found;
  };

  const auto side = static_cast<std::size_t>(std::max(1.0, std::floor(std::sqrt(static_cast<double>(budget) / 2.0))));
  for (std::size_t ix = 1; ix <= side && out.evaluated < budget; ++ix) {
    const double x = sr * static_cast<double>(ix) / static_cast<double>(side + 1);
    for (std::size_t iq = 1; iq <= side && out.evaluated < budget; ++iq) {
      const double q = static_cast<double>(iq) / static_cast<double>(side + 1);
      std::vector<double> u(static_cast<std::size_t>(N));
      for (int k = 0; k < N; ++k) u[static_cast<std::size_t>(k)] = x * std::pow(q, k);
      if (test(u)) return out;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (out.evaluated < budget) {
    std::vector<double> u(static_cast<std::size_t>(N));
    for (auto& x : u) x = sr * unit(rng);
    if (test(u)) return out;
  }
  return out;
}

struct CrossDimCheck {
  double lhs = 0.0;  // C(c; z^M; N, rho)
  double rhs = 0.0;  // M C(c'; z^{M-1}; N-1, rho)
  bool holds = false;
  double ratio = 0.0;  // lhs / rhs
};

/// C(c; z^M; N, rho) >= M C(c'; z^{M-1}; N-1, rho) with c' the derivative tuple.
inline CrossDimCheck cross_dim_inequality_check(const CoefficientTuple& c, int M, int N, double rho) {
  detail::require_threshold_args(c, M, N, rho, "cross_dim_inequality_check");
  detail::require(N >= 2 && M >= N, "cross_dim_inequality_check: requires M >= N >= 2");
  CrossDimCheck r;
  r.lhs = threshold_constant(c, M, N, rho);
  r.rhs = M * threshold_constant(c.derivative(), M - 1, N - 1, rho);
  r.holds = r.lhs >= r.rhs;
  r.ratio = r.lhs / r.rhs;
  return r;
}

namespace detail {
inline void require_in_disc(const MatrixC& a, double rho, double tol, const char* who) {
  if (a.max_abs() > rho * (1.0 + tol))
    throw parameter_error(std::string(who) + ": matrix entries exceed the disc radius");
}
}  // namespace detail

struct LmiVerdict {
  bool holds = false;
  double min_eigenvalue = 0.0;
  double scale = 1.0;
};

/// C h_c[A] - A∘M >= 0 in the Loewner order, up to tol * max(1, |lambda|_max(C h_c[A])).
inline LmiVerdict lmi_verdict(const CoefficientTuple& c, int M, double rho, const MatrixC& a, double tol = kPsdTol) {
  const int N = static_cast<int>(a.rows());
  detail::require_threshold_args(c, M, N, rho, "lmi_check");
  require_psd(a, tol, "lmi_check");
  detail::require_in_disc(a, rho, tol, "lmi_check");
  const double constant = threshold_constant(c, M, N, rho);
  const MatrixC bound = hc_matrix(c.c, a) * Complex(constant);
  const MatrixC diff = bound - hadamard_power(a, static_cast<unsigned>(M));
  LmiVerdict v;
  v.min_eigenvalue = hermitian_eigen(diff).min();
  v.scale = std::max(1.0, hermitian_eigen(bound).max_abs());
  v.holds = v.min_eigenvalue >= -tol * v.scale;
  return v;
}

inline bool lmi_check(const CoefficientTuple& c, int M, double rho, const MatrixC& a, double tol = kPsdTol) {
  return lmi_verdict(c, M, rho, a, tol).holds;
}

/// Some row of A has pairwise distinct entries (separation above rel * max |a_ij|).
inline bool has_distinct_row(const MatrixC& a, double rel = 1e-12) {
  const double eps = rel * a.max_abs();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool distinct = true;
    for (std::size_t j = 0; j < a.cols() && distinct; ++j)
      for (std::size_t k = j + 1; k < a.cols(); ++k)
        if (std::abs(a(i, j) - a(i, k)) <= eps) {
          distinct = false;
          break;
        }
    if (distinct) return true;
  }
  return false;
}

struct PdVerdict {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double scale = 1.0;
};

/// f[A] for f = h_c - C^{-1} z^M is positive definite: min eigenvalue > tol * scale.
inline PdVerdict pd_refinement_verdict(const CoefficientTuple& c, int M, double rho, const MatrixC& a, double tol) {
  const int N = static_cast<int>(a.rows());
  detail::require_threshold_args(c, M, N, rho, "pd_refinement_check");
  detail::require(N > 1, "pd_refinement_check: requires N > 1");
  require_psd(a, kPsdTol, "pd_refinement_check");
  detail::require_in_disc(a, rho, kPsdTol, "pd_refinement_check");
  if (!has_distinct_row(a)) throw parameter_error("pd_refinement_check: no row with pairwise distinct entries");
  CoefficientTuple f = c;
  f.cprime = -1.0 / threshold_constant(c, M, N, rho);
  const HermitianEigen e = hermitian_eigen(apply_poly(make_poly(f, M), a));
  PdVerdict v;
  v.min_eigenvalue = e.min();
  v.scale = std::max(1.0, e.max_abs());
  v.positive_definite = v.min_eigenvalue > tol * v.scale;
  return v;
}

inline bool pd_refinement_check(const CoefficientTuple& c, int M, double rho, const MatrixC& a, double tol) {
  return pd_refinement_verdict(c, M, rho, a, tol).positive_definite;
}

/// Entrywise real power of a matrix with positive real entries.
inline MatrixC entrywise_real_power(const MatrixC& a, double alpha) {
  MatrixC m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Complex(std::pow(a(i, j).real(), alpha), 0.0);
  return m;
}

/// Searches P_{N+1}((0, rho)) for A with A∘alpha not PSD, over matrices
/// A = a 1 + u u^T with a in (0, rho) and u in [0, sqrt(rho - a))^{N+1}.
inline WitnessSearch power_nonpreservation_search(int N, double alpha, double rho, std::size_t budget,
                                                  std::uint64_t seed = 0, double tol = kPsdTol) {
  detail::require(N >= 1 && rho > 0.0, "power_nonpreservation_search: need N >= 1 and rho > 0");
  WitnessSearch out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<std::size_t>(N + 1);
  while (out.evaluated < budget) {
    ++out.evaluated;
    const double a = rho * std::max(unit(rng), 1e-12);
    std::vector<double> u(n);
    for (auto& x : u) x = std::sqrt(rho - a) * unit(rng);
    MatrixC m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(a + u[i] * u[j], 0.0);
    const PsdVerdict v = psd_verdict(entrywise_real_power(m, alpha), tol);
    if (!v.psd) {
      out.found = true;
      out.witness = m;
      out.u = u;
      out.min_eigenvalue = v.min_eigenvalue;
      break;
    }
  }
  return out;
}

}  // namespace entrywise
