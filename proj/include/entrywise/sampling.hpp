#pragma once

// Random PSD matrices with entries in the closed disc of radius rho.

#include "entrywise/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace entrywise {

enum class SampleKind { wishart, correlation, rank_one_real, rank_one_near_extremal, rank_one_complex };

inline std::string_view to_string(SampleKind k) {
  switch (k) {
    case SampleKind::wishart: return "wishart";
    case SampleKind::correlation: return "correlation";
    case SampleKind::rank_one_real: return "rank-one-real";
    case SampleKind::rank_one_near_extremal: return "rank-one-near-extremal";
    case SampleKind::rank_one_complex: return "rank-one-complex";
  }
  return "?";
}

/// Mixture sampler for P_N(closed disc of radius rho):
///   wishart                 B B^* with complex Gaussian B of random rank, scaled to max |a_ij| = rho
///   correlation             unit-diagonal Gram matrix times min(rho, 1)
///   rank_one_real           u u^T with u uniform in (0, sqrt(rho))^N
///   rank_one_near_extremal  u_k = sqrt(rho)(1 - delta r_k), delta log-uniform in [1e-4, 1e-1]
///   rank_one_complex        u u^* with |u_k| < sqrt(rho)
class PsdSampler {
 public:
  explicit PsdSampler(std::uint64_t seed) : rng_(seed) {}

  MatrixC sample(std::size_t n, double rho) {
    std::discrete_distribution<int> pick({30, 20, 20, 20, 10});
    return sample(static_cast<SampleKind>(pick(rng_)), n, rho);
  }

  MatrixC sample(SampleKind kind, std::size_t n, double rho) {
    last_kind_ = kind;
    switch (kind) {
      case SampleKind::wishart: return wishart(n, rho);
      case SampleKind::correlation: return correlation(n, rho);
      case SampleKind::rank_one_real: return outer_adjoint<Complex>(real_vector(n, rho));
      case SampleKind::rank_one_near_extremal: return outer_adjoint<Complex>(near_extremal_vector(n, rho));
      case SampleKind::rank_one_complex: return outer_adjoint<Complex>(complex_vector(n, rho));
    }
    return {};
  }

  SampleKind last_kind() const { return last_kind_; }
  std::mt19937_64& rng() { return rng_; }

  /// u in (0, sqrt(rho))^N.
  std::vector<Complex> real_vector(std::size_t n, double rho) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> u(n);
    for (auto& x : u) x = std::sqrt(rho) * open_unit(unit);
    return u;
  }

  std::vector<Complex> near_extremal_vector(std::size_t n, double rho) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> expo(-4.0, -1.0);
    const double delta = std::pow(10.0, expo(rng_));
    std::vector<Complex> u(n);
    for (auto& x : u) x = std::sqrt(rho) * (1.0 - delta * open_unit(unit));
    return u;
  }

  std::vector<Complex> complex_vector(std::size_t n, double rho) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> u(n);
    for (auto& x : u) x = std::polar(std::sqrt(rho) * open_unit(unit), 2 * 3.141592653589793 * unit(rng_));
    return u;
  }

 private:
  double open_unit(std::uniform_real_distribution<double>& unit) {
    double x = 0.0;
    while (x == 0.0) x = unit(rng_);
    return x;
  }

  Eigen::MatrixXcd gaussian(std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = Complex(g(rng_), g(rng_));
    return b;
  }

  static MatrixC hermitian_from(const Eigen::MatrixXcd& m) {
    MatrixC a = from_eigen(m);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      a(i, i) = Complex(a(i, i).real(), 0.0);
      for (std::size_t j = i + 1; j < a.cols(); ++j) a(j, i) = std::conj(a(i, j));
    }
    return a;
  }

  MatrixC wishart(std::size_t n, double rho) {
    std::uniform_int_distribution<std::size_t> rank(1, n);
    const Eigen::MatrixXcd b = gaussian(n, rank(rng_));
    MatrixC a = hermitian_from(b * b.adjoint());
    return a * Complex(rho / a.max_abs());
  }

  MatrixC correlation(std::size_t n, double rho) {
    std::uniform_int_distribution<std::size_t> rank(1, n);
    const Eigen::MatrixXcd b = gaussian(n, rank(rng_));
    Eigen::MatrixXcd g = b * b.adjoint();
    const Eigen::VectorXd d = g.diagonal().real().cwiseSqrt().cwiseInverse();
    g = d.asDiagonal() * g * d.asDiagonal();
    MatrixC a = hermitian_from(g);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = Complex(1.0);
    return a * Complex(std::min(rho, 1.0));
  }

  std::mt19937_64 rng_;
  SampleKind last_kind_ = SampleKind::wishart;
};

}  // namespace entrywise
