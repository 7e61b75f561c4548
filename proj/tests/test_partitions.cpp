#include "entrywise/partitions.hpp"
#include "entrywise/schur.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace entrywise;

TEST_CASE("hook partition shape", "[partitions]") {
  CHECK(hook_partition(5, 3, 0) == Partition{3, 1, 1});
  CHECK(hook_partition(5, 3, 1) == Partition{3, 1, 0});
  CHECK(hook_partition(5, 3, 2) == Partition{3, 0, 0});
  CHECK(hook_partition(4, 1, 0) == Partition{4});
  for (int M = 1; M <= 9; ++M)
    for (int N = 1; N <= M; ++N)
      for (int j = 0; j < N; ++j) CHECK(hook_partition(M, N, j).size() == M - j);
}

TEST_CASE("hook partition rejects bad indices", "[partitions]") {
  CHECK_THROWS_AS(hook_partition(2, 3, 0), parameter_error);
  CHECK_THROWS_AS(hook_partition(3, 3, 3), parameter_error);
  CHECK_THROWS_AS(hook_partition(3, 3, -1), parameter_error);
  CHECK_THROWS_AS(hook_partition(3, 0, 0), parameter_error);
}

TEST_CASE("staircase complement", "[partitions]") {
  CHECK(staircase_complement(StrictTuple{2, 1, 0}) == Partition::zero(3));
  CHECK(staircase_complement(StrictTuple{5, 2, 0}) == Partition{3, 1, 0});
  CHECK(staircase_complement(StrictTuple{4}) == Partition{4});
  CHECK_THROWS_AS(StrictTuple({2, 2}), parameter_error);
}

TEST_CASE("partition validation", "[partitions]") {
  CHECK_THROWS_AS(Partition({1, 2}), parameter_error);
  CHECK_THROWS_AS(Partition({2, -1}), parameter_error);
  CHECK(Partition{3, 1, 0}.nonzero_length() == 2);
  CHECK(to_string(Partition{3, 1, 0}) == "(3,1,0)");
}

TEST_CASE("generalized binomial", "[partitions]") {
  CHECK(generalized_binomial(5, 2) == 10);
  CHECK(generalized_binomial(2, 5) == 0);
  CHECK(generalized_binomial(0, 0) == 1);
  CHECK(generalized_binomial(-1, 0) == 1);
  for (int k = 0; k <= 9; ++k) CHECK(generalized_binomial(-1, k) == (k % 2 ? -1 : 1));
  CHECK(generalized_binomial(-2, 3) == -4);
  CHECK(generalized_binomial(60, 30) == 118264581564861424LL);
  CHECK_THROWS_AS(generalized_binomial(3, -1), parameter_error);
  CHECK_THROWS_AS(generalized_binomial(200, 100), parameter_error);
  // Pascal's rule holds for the generalized coefficient as well
  for (int n = -6; n <= 8; ++n)
    for (int k = 1; k <= 8; ++k)
      CHECK(generalized_binomial(n, k) == generalized_binomial(n - 1, k) + generalized_binomial(n - 1, k - 1));
}

TEST_CASE("hook dimension against tableau count and hook-content", "[partitions]") {
  CHECK(hook_dimension(2, 2, 0) == 1);
  CHECK(hook_dimension(2, 2, 1) == 2);
  CHECK(hook_dimension(5, 3, 1) == 15);
  for (int M = 1; M <= 8; ++M)
    for (int N = 1; N <= std::min(M, 4); ++N)
      for (int j = 0; j < N; ++j) {
        const Partition mu = hook_partition(M, N, j);
        INFO("M=" << M << " N=" << N << " j=" << j);
        CHECK(hook_dimension(M, N, j) == count_ssyt(mu));
        CHECK(static_cast<double>(hook_dimension(M, N, j)) == Catch::Approx(static_cast<double>(oracle::hook_content(mu))));
      }
}
