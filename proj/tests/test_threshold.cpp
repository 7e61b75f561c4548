#include "entrywise/threshold.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace entrywise;

namespace {

CoefficientTuple random_tuple(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(0.1, 4.0);
  CoefficientTuple c;
  c.c.resize(n);
  for (auto& x : c.c) x = d(rng);
  return c;
}

const CoefficientTuple kOnes2{{1.0, 1.0}, {}};

}  // namespace

TEST_CASE("threshold constant examples", "[threshold]") {
  CHECK(threshold_constant(kOnes2, 2, 2, 1.0) == 5.0);
  CHECK(threshold_constant({{1.0}, {}}, 4, 1, 2.0) == 16.0);
  CHECK(threshold_constant(kOnes2, 1, 2, 1.0) == 1.0);
  CHECK(threshold_constant({{3.0}, {}}, 5, 1, 0.5) == Catch::Approx(std::pow(0.5, 5) / 3.0).epsilon(1e-15));
}

TEST_CASE("threshold constant matches the hook-content oracle", "[threshold]") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 1 + trial % 5;
    const int M = N + trial % 7;
    const auto c = random_tuple(rng, static_cast<std::size_t>(N));
    const double rho = r(rng);
    CHECK(oracle::rel_gap(threshold_constant(c, M, N, rho),
                          static_cast<double>(oracle::threshold_by_hooks(c.c, M, N, rho))) < 1e-13);
  }
}

TEST_CASE("degenerate case M < N", "[threshold]") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + trial % 5;
    const int M = trial % N;
    const auto c = random_tuple(rng, static_cast<std::size_t>(N));
    CHECK(threshold_constant(c, M, N, r(rng)) == 1.0 / c.c[static_cast<std::size_t>(M)]);
  }
}

TEST_CASE("scaling law", "[threshold]") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 1 + trial % 5;
    const int M = trial % 10;
    const auto c = random_tuple(rng, static_cast<std::size_t>(N));
    const double rho = r(rng);
    CoefficientTuple scaled = c;
    for (std::size_t j = 0; j < scaled.c.size(); ++j) scaled.c[j] *= std::pow(rho, static_cast<double>(j));
    CHECK(oracle::rel_gap(threshold_constant(c, M, N, rho), std::pow(rho, M) * threshold_constant(scaled, M, N, 1.0)) <
          1e-13);
  }
}

TEST_CASE("threshold argument validation", "[threshold]") {
  CHECK_THROWS_AS(threshold_constant({{1.0, -1.0}, {}}, 2, 2, 1.0), parameter_error);
  CHECK_THROWS_AS(threshold_constant({{1.0, 0.0}, {}}, 2, 2, 1.0), parameter_error);
  CHECK_THROWS_AS(threshold_constant(kOnes2, 2, 3, 1.0), parameter_error);
  CHECK_THROWS_AS(threshold_constant(kOnes2, 2, 2, 0.0), parameter_error);
  CHECK_THROWS_AS(threshold_constant(kOnes2, -1, 2, 1.0), parameter_error);
  CHECK_THROWS_AS(partial_constants(kOnes2, 1, 2, 1.0), parameter_error);
}

TEST_CASE("partial constants form a strictly increasing chain", "[threshold]") {
  const auto ex = partial_constants(kOnes2, 2, 2, 1.0);
  REQUIRE(ex.size() == 2);
  CHECK(ex[0] == 1.0);
  CHECK(ex[1] == 5.0);
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 1 + trial % 5;
    const int M = N + trial % (11 - N);
    const auto c = random_tuple(rng, static_cast<std::size_t>(N));
    const double rho = r(rng);
    const auto p = partial_constants(c, M, N, rho);
    CHECK(oracle::rel_gap(p.front(), std::pow(rho, M - N + 1) / c.c.back()) < 1e-14);
    CHECK(p.back() == threshold_constant(c, M, N, rho));
    for (std::size_t k = 1; k < p.size(); ++k) CHECK(p[k - 1] < p[k]);
  }
}

TEST_CASE("admissibility", "[threshold]") {
  CoefficientTuple c = kOnes2;
  c.cprime = 0.0;
  CHECK(admissible(c, 2, 2, 1.0));
  c.cprime = -0.19;
  CHECK(admissible(c, 2, 2, 1.0));
  c.cprime = -0.21;
  CHECK_FALSE(admissible(c, 2, 2, 1.0));
  c.cprime = -0.2;
  CHECK(admissible(c, 2, 2, 1.0));
  CHECK(admissibility(-0.2, 5.0) == Admissibility::boundary);
  CHECK(admissibility(-0.2 + 1e-13, 5.0) == Admissibility::boundary);
  CHECK(admissibility(-0.2 + 1e-9, 5.0) == Admissibility::admissible);
  CHECK(admissibility(-0.2 - 1e-9, 5.0) == Admissibility::inadmissible);
  c.cprime.reset();
  CHECK_THROWS_AS(admissible(c, 2, 2, 1.0), parameter_error);
}

TEST_CASE("positivity checks at and below the threshold", "[threshold]") {
  CoefficientTuple c = kOnes2;
  c.cprime = -0.2;
  const auto at = preserves_positivity_check(make_poly(c, 2), 2, 1.0, 3000);
  CHECK(at.preserved);
  CHECK(at.samples_checked == 3000);
  // positive coefficients never fail
  const auto pos = preserves_positivity_check(RealPoly{{0, 1.0}, {3, 2.0}, {5, 0.1}}, 4, 2.0, 1000);
  CHECK(pos.preserved);
  c.cprime = -0.25;
  const auto below = preserves_positivity_check(make_poly(c, 2), 2, 1.0, 3000);
  CHECK_FALSE(below.preserved);
  REQUIRE(below.witness);
  CHECK(psd_check(*below.witness));
  CHECK_FALSE(psd_check(apply_poly(make_poly(c, 2), *below.witness)));
}

TEST_CASE("empirical sharpness", "[threshold]") {
  const auto e = empirical_sharpness(kOnes2, 2, 2, 1.0, 200);
  CHECK(std::abs(e.value - 5.0) < 1e-2);
  CHECK(e.value <= 5.0);
  // exhaustive maximization over distinct grid pairs gives the same value
  const auto g = sharpness_grid(1.0, 200);
  double best = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const std::vector<Complex> u{Complex(g[i]), Complex(g[j])};
      best = std::max(best, rayleigh_rank_one(kOnes2.c, 2, u));
    }
  CHECK(e.value == Catch::Approx(best).epsilon(1e-14));
  // refinement is monotone and stays below the constant
  double prev = 0.0;
  for (int grid : {4, 10, 50, 200, 1000}) {
    const double v = empirical_sharpness(kOnes2, 2, 2, 1.0, grid).value;
    CHECK(v >= prev);
    CHECK(v <= 5.0);
    prev = v;
  }
  // N = 1: u = sqrt(rho) is on the grid
  CHECK(empirical_sharpness({{2.0}, {}}, 3, 1, 2.0, 10).value == Catch::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("Horn necessity witnesses", "[threshold]") {
  const auto neg = horn_necessity_witness(RealPoly{{1, -1.0}}, 1, 1.0, 100);
  CHECK(neg.found);
  const auto wiggle = horn_necessity_witness(RealPoly{{0, 1.0}, {1, -1.0}, {2, 1.0}}, 2, 1.0, 10000);
  CHECK(wiggle.found);
  REQUIRE(wiggle.witness);
  CHECK(psd_verdict(apply_poly(RealPoly{{0, 1.0}, {1, -1.0}, {2, 1.0}}, *wiggle.witness)).min_eigenvalue < 0);
  const auto fine = horn_necessity_witness(RealPoly{{0, 1.0}, {1, 1.0}}, 2, 1.0, 2000);
  CHECK_FALSE(fine.found);
  CHECK(fine.evaluated == 2000);
}

TEST_CASE("cross-dimension inequality", "[threshold]") {
  const auto ex = cross_dim_inequality_check(kOnes2, 2, 2, 1.0);
  CHECK(ex.lhs == 5.0);
  CHECK(ex.rhs == 2.0);
  CHECK(ex.holds);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> r(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + trial % 4;
    const int M = N + trial % (11 - N);
    const auto c = random_tuple(rng, static_cast<std::size_t>(N));
    const auto chk = cross_dim_inequality_check(c, M, N, r(rng));
    CHECK(chk.holds);
    CHECK(chk.ratio >= 1.0);
  }
}

TEST_CASE("LMI on sampled matrices", "[threshold]") {
  const CoefficientTuple c{{1.0, 1.0, 1.0}, {}};
  CHECK(lmi_check(c, 4, 1.0, MatrixC(3, 3)));
  const auto top = lmi_verdict(c, 4, 1.0, MatrixC::constant(3, Complex(1.0)));
  CHECK(top.holds);
  PsdSampler sampler(56);
  for (int trial = 0; trial < 300; ++trial) CHECK(lmi_check(c, 4, 1.0, sampler.sample(3, 1.0), 1e-8));
  CHECK_THROWS_AS(lmi_check(c, 4, 1.0, MatrixC::constant(3, Complex(2.0))), parameter_error);
}

TEST_CASE("PD refinement", "[threshold]") {
  const CoefficientTuple c{{1.0, 1.0, 1.0}, {}};
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> u(3);
    do
      for (auto& x : u) x = unit(rng);
    while (coordinate_separation(u) < 0.05);
    CHECK(pd_refinement_check(c, 5, 1.0, outer_adjoint<Complex>(u), 0.0));
  }
  CHECK_THROWS_AS(pd_refinement_check(c, 5, 1.0, MatrixC::constant(3, Complex(1.0)), 0.0), parameter_error);
  CHECK_THROWS_AS(pd_refinement_check({{1.0}, {}}, 2, 1.0, MatrixC::identity(1), 0.0), parameter_error);
}

TEST_CASE("entrywise square root fails positivity one dimension up", "[threshold]") {
  const auto s = power_nonpreservation_search(2, 0.5, 1.0, 100000);
  CHECK(s.found);
  REQUIRE(s.witness);
  CHECK(psd_check(*s.witness));
  CHECK(s.witness->max_abs() < 1.0);
  // in dimension N the same power is preserved on the same family
  std::mt19937_64 rng(58);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = unit(rng) * 0.9 + 0.05;
    const double u0 = std::sqrt(1 - a) * unit(rng);
    const double u1 = std::sqrt(1 - a) * unit(rng);
    const MatrixC m{{Complex(a + u0 * u0), Complex(a + u0 * u1)}, {Complex(a + u0 * u1), Complex(a + u1 * u1)}};
    CHECK(psd_check(entrywise_real_power(m, 0.5)));
  }
}
