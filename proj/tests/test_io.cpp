#include "entrywise/io.hpp"
#include "entrywise/sampling.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace entrywise;

TEST_CASE("complex literals", "[io]") {
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("1-2i") == Complex(1, -2));
  CHECK(parse_complex("-1.5") == Complex(-1.5, 0));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("2+i") == Complex(2, 1));
  CHECK(parse_complex(" 1e-3 - 2.5e+2i ") == Complex(1e-3, -250));
  CHECK(parse_complex("1e+5i") == Complex(0, 1e5));
  CHECK(parse_complex("+4") == Complex(4, 0));
  CHECK_THROWS_AS(parse_complex(""), parameter_error);
  CHECK_THROWS_AS(parse_complex("abc"), parameter_error);
  CHECK_THROWS_AS(parse_complex("1+2j"), parameter_error);
  CHECK_THROWS_AS(parse_complex("1++2i"), parameter_error);
  CHECK_THROWS_AS(parse_complex("nan"), parameter_error);
}

TEST_CASE("lists", "[io]") {
  CHECK(parse_real_list("1,0.5,2") == std::vector<double>{1, 0.5, 2});
  CHECK(parse_complex_list("1+2i,3,-i") == std::vector<Complex>{{1, 2}, {3, 0}, {0, -1}});
  CHECK_THROWS_AS(parse_real_list("1,,2"), parameter_error);
  CHECK_THROWS_AS(parse_real_list(""), parameter_error);
}

TEST_CASE("format_complex inverts parse_complex", "[io]") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g(0.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const Complex z(k % 3 ? g(rng) : 0.0, k % 5 ? g(rng) : 0.0);
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

TEST_CASE("matrix file round trip is exact", "[io]") {
  PsdSampler sampler(72);
  for (int k = 0; k < 100; ++k) {
    MatrixFile f{sampler.sample(1 + static_cast<std::size_t>(k % 6), 0.3 + k * 0.1), std::nullopt, std::nullopt};
    if (k % 2) f.rho = 0.3 + k * 0.1;
    if (k % 3 == 0) f.description = "sample " + std::to_string(k);
    const MatrixFile back = parse_matrix_file(emit_matrix_file(f));
    CHECK(back.matrix == f.matrix);
    CHECK(back.rho == f.rho);
    CHECK(back.description == f.description);
  }
}

TEST_CASE("matrix file parsing", "[io]") {
  const auto f = parse_matrix_file(R"({"n": 2, "entries": [[{"re": 1}, {"re": 0, "im": -1}], [{"re": 0, "im": 1}, 2]], "rho": 2})");
  CHECK(f.matrix(0, 0) == Complex(1, 0));
  CHECK(f.matrix(0, 1) == Complex(0, -1));
  CHECK(f.matrix(1, 1) == Complex(2, 0));
  CHECK(f.rho == 2.0);
  CHECK_THROWS_AS(parse_matrix_file("{"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 2, "entries": [[1, 2]]})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 1, "entries": [[1, 2]]})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 1, "entries": [[{"im": 2}]]})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 1, "entries": [["x"]]})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 0, "entries": []})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file(R"({"n": 1, "entries": [[1]], "rho": -1})"), parameter_error);
  CHECK_THROWS_AS(parse_matrix_file("[1]"), parameter_error);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.json"), parameter_error);
}
