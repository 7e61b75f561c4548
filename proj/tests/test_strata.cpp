#include "entrywise/sampling.hpp"
#include "entrywise/strata.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace entrywise;

namespace {

IndexPartition random_partition(std::mt19937_64& rng, std::size_t n) {
  // restricted growth string
  std::vector<std::size_t> label(n, 0);
  std::size_t used = 1;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, used);
    label[i] = pick(rng);
    if (label[i] == used) ++used;
  }
  std::vector<std::vector<std::size_t>> blocks(used);
  for (std::size_t i = 0; i < n; ++i) blocks[label[i]].push_back(i);
  return {n, std::move(blocks)};
}

MatrixC a2_example() {
  return MatrixC{{Complex(5), Complex(-5), Complex(1, 1)},
                 {Complex(-5), Complex(5), Complex(-1, -1)},
                 {Complex(1, -1), Complex(-1, 1), Complex(2)}};
}

}  // namespace

TEST_CASE("index partitions", "[strata]") {
  const IndexPartition p(4, {{3, 1}, {0}, {2}});
  CHECK(to_string(p) == "{{1},{2,4},{3}}");
  CHECK(parse_index_partition("2,4|1|3", 4) == p);
  CHECK_THROWS_AS(IndexPartition(3, {{0, 1}}), parameter_error);
  CHECK_THROWS_AS(IndexPartition(3, {{0, 1}, {1, 2}}), parameter_error);
  CHECK_THROWS_AS(parse_index_partition("1,x", 2), parameter_error);
  CHECK_THROWS_AS(parse_index_partition("0,1", 2), parameter_error);
  CHECK(refinement_leq(IndexPartition::singletons(4), p));
  CHECK(refinement_leq(p, IndexPartition::whole(4)));
  CHECK_FALSE(refinement_leq(IndexPartition::whole(4), p));
  CHECK(refinement_leq(p, p));
  CHECK_THROWS_AS(refinement_leq(p, IndexPartition::whole(3)), parameter_error);
}

TEST_CASE("stratify worked examples", "[strata]") {
  const MatrixC a2 = a2_example();
  REQUIRE(psd_check(a2));
  CHECK(to_string(stratify(a2, GroupTag::unit_circle)) == "{{1,2},{3}}");
  CHECK(to_string(stratify(a2, GroupTag::nonzero_complex)) == "{{1,2},{3}}");
  CHECK(to_string(stratify(a2, GroupTag::trivial)) == "{{1},{2},{3}}");
  CHECK(verify_offdiagonal_structure(a2, stratify(a2, GroupTag::unit_circle), GroupTag::unit_circle));

  CHECK(stratify(MatrixC::constant(4, Complex(2.5)), GroupTag::trivial) == IndexPartition::whole(4));
  CHECK(kernel_for_partition(IndexPartition::whole(4)).dim() == 3);
  CHECK(simultaneous_kernel(MatrixC::constant(4, Complex(2.5))).dim() == 3);

  std::vector<Complex> d{Complex(1), Complex(2), Complex(3)};
  const MatrixC pd = MatrixC::diagonal(d);
  CHECK(stratify(pd, GroupTag::trivial) == IndexPartition::singletons(3));
  CHECK(simultaneous_kernel(pd).dim() == 0);
  CHECK(stratify(MatrixC(3, 3), GroupTag::unit_circle) == IndexPartition::whole(3));
  CHECK_THROWS_AS(stratify(MatrixC{{Complex(1), Complex(2)}, {Complex(2), Complex(1)}}, GroupTag::trivial),
                  parameter_error);
}

TEST_CASE("A_1 block structure forces equal off-diagonal entries", "[strata]") {
  // 5 * 1_{2x2} and 2 * 1_{2x2} on the diagonal, constant B off it
  MatrixC a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = Complex((i < 2) == (j < 2) ? (i < 2 ? 5.0 : 2.0) : 1.5);
  const IndexPartition pi = stratify(a, GroupTag::trivial);
  CHECK(to_string(pi) == "{{1,2},{3,4}}");
  CHECK(verify_offdiagonal_structure(a, pi, GroupTag::trivial));
  CHECK(blocks_are_maximal(a, pi, GroupTag::trivial));
}

TEST_CASE("roundtrip through generate_in_stratum", "[strata]") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
    const IndexPartition pi = random_partition(rng, n);
    for (GroupTag g : {GroupTag::trivial, GroupTag::unit_circle, GroupTag::nonzero_complex}) {
      const MatrixC a = generate_in_stratum(pi, g, static_cast<std::uint64_t>(trial));
      INFO(to_string(pi) << " " << to_string(g));
      CHECK(psd_check(a));
      CHECK(stratify(a, g) == pi);
      CHECK(verify_offdiagonal_structure(a, pi, g));
      CHECK(blocks_are_maximal(a, pi, g));
    }
  }
}

TEST_CASE("stratification properties on sampled matrices", "[strata]") {
  PsdSampler sampler(62);
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    MatrixC a = trial % 2 ? sampler.sample(n, 1.0)
                          : generate_in_stratum(random_partition(rng, n), GroupTag::unit_circle,
                                                static_cast<std::uint64_t>(trial));
    const IndexPartition p1 = stratify(a, GroupTag::trivial);
    const IndexPartition ps = stratify(a, GroupTag::unit_circle);
    const IndexPartition pc = stratify(a, GroupTag::nonzero_complex);
    CHECK(refinement_leq(p1, ps));
    CHECK(refinement_leq(ps, pc));
    for (auto [pi, g] : {std::pair{p1, GroupTag::trivial}, std::pair{ps, GroupTag::unit_circle},
                         std::pair{pc, GroupTag::nonzero_complex}}) {
      for (const auto& b : pi.blocks()) CHECK(block_conforms(a, b, g, kPsdTol));
      CHECK(blocks_are_maximal(a, pi, g));
    }
    CHECK(rank_bound_check(a));
    // relabeling indices permutes the partition
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    MatrixC b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(perm[i], perm[j]) = a(i, j);
    std::vector<std::vector<std::size_t>> moved;
    for (const auto& blk : ps.blocks()) {
      moved.emplace_back();
      for (std::size_t i : blk) moved.back().push_back(perm[i]);
    }
    CHECK(stratify(b, GroupTag::unit_circle) == IndexPartition(n, moved));
  }
}

TEST_CASE("simultaneous kernel is constant on strata", "[strata]") {
  std::mt19937_64 rng(64);
  for (int s = 0; s < 10; ++s) {
    const std::size_t n = 2 + static_cast<std::size_t>(s % 5);
    const IndexPartition pi = random_partition(rng, n);
    const SubspaceBasis expected = kernel_for_partition(pi);
    CHECK(expected.dim() == n - pi.size());
    for (int k = 0; k < 20; ++k) {
      const MatrixC a = generate_in_stratum(pi, GroupTag::trivial, static_cast<std::uint64_t>(1000 * s + k));
      const SubspaceBasis got = simultaneous_kernel(a);
      REQUIRE(got.dim() == expected.dim());
      CHECK(max_principal_angle(got, expected) <= 1e-8);
    }
  }
}

TEST_CASE("observed kernels at N = 3 form a finite family", "[strata]") {
  PsdSampler sampler(65);
  std::mt19937_64 rng(66);
  std::vector<SubspaceBasis> seen;
  auto record = [&](const SubspaceBasis& k) {
    for (const auto& s : seen)
      if (max_principal_angle(s, k) <= 1e-8) return;
    seen.push_back(k);
  };
  for (int trial = 0; trial < 300; ++trial) {
    const MatrixC a = trial % 3 ? generate_in_stratum(random_partition(rng, 3), GroupTag::trivial,
                                                      static_cast<std::uint64_t>(trial))
                                : sampler.sample(3, 1.0);
    // near-extremal draws are numerically on a coarser stratum
    if (trial % 3 == 0 && sampler.last_kind() == SampleKind::rank_one_near_extremal) continue;
    record(simultaneous_kernel(a));
  }
  CHECK(seen.size() <= oracle::bell(3));
  CHECK(seen.size() == 5);
}

TEST_CASE("closure probe", "[strata]") {
  const IndexPartition coarse = IndexPartition::whole(2);
  const IndexPartition fine = IndexPartition::singletons(2);
  const auto steps = closure_probe(coarse, fine, 12, 3);
  REQUIRE(steps.size() == 13);
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    CHECK(steps[k].label == fine);
    CHECK(steps[k].t > 0.0);
    if (k > 0) CHECK(steps[k].distance < steps[k - 1].distance);
  }
  CHECK(steps.back().t == 0.0);
  CHECK(steps.back().distance == 0.0);
  CHECK(steps.back().label == coarse);
  CHECK_THROWS_AS(closure_probe(fine, coarse, 5), parameter_error);

  const IndexPartition p4 = parse_index_partition("1,2,3|4", 4);
  const IndexPartition q4 = parse_index_partition("1|2,3|4", 4);
  const auto s4 = closure_probe(p4, q4, 10, 9);
  for (std::size_t k = 0; k + 1 < s4.size(); ++k) CHECK(s4[k].label == q4);
  CHECK(s4.back().label == p4);
}
