#pragma once

// Command-line front end. run() is the whole program minus process setup so the
// tests can drive it in-process.

#include "entrywise/entrywise.hpp"
#include "entrywise/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace entrywise::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 2, kPrecondition = 3 };

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  double tol = kPsdTol;
  bool json = false;
  std::string backend = "exact";

  Json echo() const { return {{"seed", seed}, {"tol", tol}, {"backend", backend}}; }
};

// ---- small helpers ---------------------------------------------------------

inline Json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Json vector_json(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

inline Json real_vector_json(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json matrix_json(const MatrixC& m) { return entries_to_json(m); }

inline Json basis_json(const SubspaceBasis& s) {
  Json cols = Json::array();
  for (Eigen::Index k = 0; k < s.basis.cols(); ++k) {
    std::vector<Complex> col(s.basis.col(k).data(), s.basis.col(k).data() + s.basis.rows());
    cols.push_back(vector_json(col));
  }
  return cols;
}

inline std::vector<double> parse_coeffs(const std::string& text) {
  try {
    return parse_real_list(text);
  } catch (const parameter_error& e) {
    throw usage_error(std::string("--c: ") + e.what());
  }
}

inline std::vector<double> require_positive(std::vector<double> c, const char* flag) {
  if (c.empty()) throw usage_error(std::string(flag) + ": empty list");
  for (double x : c)
    if (!(x > 0.0)) throw usage_error(std::string(flag) + ": coefficients must be positive");
  return c;
}

inline MatrixC load_matrix(const std::string& path, std::optional<double>* rho = nullptr) {
  MatrixFile f;
  try {
    f = read_matrix_file(path);
  } catch (const parameter_error& e) {
    throw usage_error(e.what());
  }
  if (rho) *rho = f.rho;
  return f.matrix;
}

inline GroupTag parse_group(const std::string& g) {
  if (g == "trivial") return GroupTag::trivial;
  if (g == "s1" || g == "unit_circle") return GroupTag::unit_circle;
  if (g == "cx" || g == "nonzero_complex") return GroupTag::nonzero_complex;
  throw usage_error("--group must be trivial, s1 or cx");
}

inline IndexPartition parse_partition_arg(const std::string& text, std::size_t n, const char* flag) {
  try {
    return parse_index_partition(text, n);
  } catch (const parameter_error& e) {
    throw usage_error(std::string(flag) + ": " + e.what());
  }
}

/// Largest 1-based index mentioned in "1,2|3".
inline std::size_t partition_extent(const std::string& text) {
  std::size_t best = 0;
  std::size_t v = 0;
  for (char ch : text + ",") {
    if (ch >= '0' && ch <= '9') {
      v = v * 10 + static_cast<std::size_t>(ch - '0');
    } else {
      best = std::max(best, v);
      v = 0;
    }
  }
  return best;
}

// ---- text rendering --------------------------------------------------------

inline bool is_complex(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im") && j["re"].is_number();
}

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (is_complex(j)) return format_complex({j["re"].get<double>(), j["im"].get<double>()});
  return j.dump();
}

inline bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured() && !is_complex(e)) return false;
  return true;
}

inline void render_text(std::ostream& out, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inline_array = [](const Json& a) {
    std::string s = "[";
    for (std::size_t k = 0; k < a.size(); ++k) s += (k ? ", " : "") + scalar_text(a[k]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !is_complex(value) && !is_flat_array(value)) {
        out << pad << key << ":\n";
        render_text(out, value, indent + 2);
      } else if (is_flat_array(value)) {
        out << pad << key << ": " << inline_array(value) << "\n";
      } else {
        out << pad << key << ": " << scalar_text(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_flat_array(e)) {
        out << pad << "- " << inline_array(e) << "\n";
      } else if (e.is_object() && !is_complex(e)) {
        out << pad << "-\n";
        render_text(out, e, indent + 2);
      } else if (e.is_array()) {
        out << pad << "-\n";
        render_text(out, e, indent + 2);
      } else {
        out << pad << "- " << scalar_text(e) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

inline void emit(std::ostream& out, const Json& report, const Globals& g) {
  if (g.json) {
    out << report.dump(2) << "\n";
  } else {
    render_text(out, report);
  }
}

// ---- threshold -------------------------------------------------------------

struct ThresholdArgs {
  std::string c;
  int M = 0;
  int N = 0;
  double rho = 1.0;
  std::optional<double> cprime;
  bool empirical = false;
  int grid = 200;
};

inline Json cmd_threshold(const ThresholdArgs& a, const Globals& g) {
  CoefficientTuple c{require_positive(parse_coeffs(a.c), "--c"), a.cprime};
  if (a.N != static_cast<int>(c.N())) throw usage_error("--N must equal the number of coefficients in --c");
  if (a.M < 0) throw usage_error("--M must be non-negative");
  if (!(a.rho > 0.0)) throw usage_error("--rho must be positive");
  if (a.empirical && (a.grid < 2 || a.grid < a.N)) throw usage_error("--grid must be at least max(2, N)");

  const ThresholdReport r = threshold_report(c, a.M, a.N, a.rho);
  Json inputs{{"c", real_vector_json(c.c)}, {"M", a.M}, {"N", a.N}, {"rho", a.rho}};
  if (a.cprime) inputs["cprime"] = *a.cprime;
  if (a.empirical) inputs["grid"] = a.grid;
  Json results{{"constant", r.constant}, {"negative_bound", -1.0 / r.constant}};
  if (!r.partials.empty()) {
    results["partials"] = real_vector_json(r.partials);
  } else {
    results["partials"] = "undefined for M < N";
  }
  if (r.verdict) results["admissibility"] = std::string(to_string(*r.verdict));
  if (a.empirical) {
    if (a.M < a.N) throw usage_error("--empirical requires M >= N");
    const SharpnessEstimate e = empirical_sharpness(c, a.M, a.N, a.rho, a.grid);
    results["empirical"] = e.value;
    results["empirical_gap"] = r.constant - e.value;
    results["empirical_point"] = real_vector_json(e.maximizer);
  }
  return {{"command", "threshold"},
          {"inputs", inputs},
          {"globals", g.echo()},
          {"results", results},
          {"tolerances", {{"boundary_band", kBoundaryBand}}}};
}

// ---- verify-identity -------------------------------------------------------

struct IdentityArgs {
  std::string which = "pencil";
  int trials = 50;
  int max_N = 0;  // 0: the identity's default
  int max_M = 0;
  int max_m = 0;
  int max_exponent = 9;
};

struct IdentityRun {
  std::size_t checks = 0;
  std::size_t failures = 0;
  Json counterexamples = Json::array();

  void record(bool ok, const std::function<Json()>& describe) {
    ++checks;
    if (!ok) {
      ++failures;
      if (counterexamples.size() < 5) counterexamples.push_back(describe());
    }
  }
};

template <Scalar T>
Json scalar_json(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return format_complex(v);
  }
}

template <Scalar T>
Json vec_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

template <Scalar T>
bool identity_equal(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return approx_equal(a, b, tol);
  }
}

// Float determinants cancel: the z^M part of a pencil is rank one, so the
// result can be many orders below the entries. Compare against Hadamard's
// bound prod_i |row_i| rather than the result itself.
template <Scalar T>
bool det_identity_equal(const T& a, const T& b, const Matrix<T>& m, double tol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double bound = 1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) row += std::norm(m(i, j));
      bound *= std::sqrt(row);
    }
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b), bound});
  }
}

// Size of a float Jacobi-Trudi evaluation: prod_i sum_j h_{lambda_i - i + j}(|x|),
// a bound on the permanent of |JT matrix|. s_lambda(|x|) alone is not enough;
// s_(8,4)(0, 7) = 0 but its determinant subtracts two copies of 7^12.
inline double jt_majorant(const Partition& lambda, const std::vector<Complex>& x) {
  const int n = static_cast<int>(lambda.length());
  const int top = n == 0 ? 0 : lambda[0] + n;
  std::vector<double> h(static_cast<std::size_t>(top) + 1, 0.0);
  h[0] = 1.0;
  for (const Complex& xi : x)
    for (int k = 1; k <= top; ++k) h[static_cast<std::size_t>(k)] += std::abs(xi) * h[static_cast<std::size_t>(k - 1)];
  double out = 1.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const int k = lambda[static_cast<std::size_t>(i)] - i + j;
      if (k >= 0) row += h[static_cast<std::size_t>(k)];
    }
    out *= row;
  }
  return out;
}

// |Delta(u) Delta(v)| sum_{n'} jt(u) jt(v) prod |c|: the size of the terms the
// closed form adds up.
inline double cauchy_binet_majorant(const ExponentCoefficients<Complex>& cs, const std::vector<Complex>& u,
                                    const std::vector<Complex>& v) {
  const std::size_t N = u.size();
  std::vector<int> exps;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) exps.push_back(it->first);
  if (exps.size() < N) return 0.0;
  std::vector<bool> pick(exps.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(N), true);
  double sum = 0.0;
  do {
    std::vector<int> chosen;
    double c = 1.0;
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (pick[k]) chosen.push_back(exps[k]), c *= std::abs(cs.at(exps[k]));
    const Partition lambda = staircase_complement(StrictTuple(std::move(chosen)));
    sum += jt_majorant(lambda, u) * jt_majorant(lambda, v) * c;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::abs(vandermonde_det<Complex>(u)) * std::abs(vandermonde_det<Complex>(v)) * sum;
}

template <Scalar T>
Json run_identity(const IdentityArgs& a, const Globals& g, Json& bounds) {
  std::mt19937_64 rng(g.seed);
  IdentityRun run;
  auto draw = [&](std::size_t n, bool nonzero = false) {
    std::vector<T> x(n);
    for (auto& v : x) {
      do v = random_scalar<T>(rng);
      while (nonzero && scalar_traits<T>::is_zero(v));
    }
    return x;
  };

  if (a.which == "pencil") {
    const int maxN = a.max_N ? a.max_N : 4;
    const int span = a.max_M ? a.max_M : 5;  // M ranges over N..N+span
    bounds = {{"N", Json::array({1, maxN})}, {"M", "N..N+" + std::to_string(span)}};
    for (int N = 1; N <= maxN; ++N)
      for (int M = N; M <= N + span; ++M)
        for (int t = 0; t < a.trials; ++t) {
          PencilSpec<T> spec{random_scalar<T>(rng), draw(static_cast<std::size_t>(N), true), M};
          const auto u = draw(static_cast<std::size_t>(N));
          const auto v = draw(static_cast<std::size_t>(N));
          const T lhs = pencil_det_direct<T>(spec, u, v);
          const T rhs = pencil_det_closed_form<T>(spec, u, v);
          const Matrix<T> ab = outer<T>(u, v);
          Matrix<T> pm = spec.t * entrywise_dense_poly<T>(spec.coeffs, ab);
          pm -= hadamard_power(ab, static_cast<unsigned>(M));
          run.record(det_identity_equal(lhs, rhs, pm, g.tol), [&] {
            return Json{{"N", N}, {"M", M}, {"t", scalar_json(spec.t)}, {"c", vec_json(spec.coeffs)},
                        {"u", vec_json(u)}, {"v", vec_json(v)}, {"direct", scalar_json(lhs)},
                        {"closed_form", scalar_json(rhs)}};
          });
        }
  } else if (a.which == "cauchy-binet") {
    const int maxN = a.max_N ? a.max_N : 4;
    const int maxm = a.max_m ? a.max_m : 6;
    bounds = {{"N", Json::array({1, maxN})}, {"m", Json::array({1, maxm})}, {"max_exponent", a.max_exponent}};
    if (maxm > a.max_exponent + 1) throw usage_error("--max-m exceeds the number of available exponents");
    for (int N = 1; N <= maxN; ++N)
      for (int m = 1; m <= maxm; ++m)
        for (int t = 0; t < a.trials; ++t) {
          std::vector<int> pool(static_cast<std::size_t>(a.max_exponent) + 1);
          std::iota(pool.begin(), pool.end(), 0);
          std::shuffle(pool.begin(), pool.end(), rng);
          ExponentCoefficients<T> cs;
          for (int k = 0; k < m; ++k) cs[pool[static_cast<std::size_t>(k)]] = random_scalar<T>(rng);
          const auto u = draw(static_cast<std::size_t>(N));
          const auto v = draw(static_cast<std::size_t>(N));
          const T lhs = cauchy_binet_lhs<T>(cs, u, v);
          const T rhs = cauchy_binet_rhs<T>(cs, u, v);
          const Matrix<T> ab = outer<T>(u, v);
          Matrix<T> sm(ab.rows(), ab.cols());
          for (const auto& [n, c] : cs) sm += c * hadamard_power(ab, static_cast<unsigned>(n));
          bool ok = det_identity_equal(lhs, rhs, sm, g.tol);
          if constexpr (!is_exact_v<T>) {
            if (!ok) ok = std::abs(lhs - rhs) <= g.tol * cauchy_binet_majorant(cs, u, v);
          }
          run.record(ok, [&] {
            Json e = Json::object();
            for (const auto& [n, c] : cs) e[std::to_string(n)] = scalar_json(c);
            return Json{{"N", N}, {"coefficients", e}, {"u", vec_json(u)}, {"v", vec_json(v)},
                        {"lhs", scalar_json(lhs)}, {"rhs", scalar_json(rhs)}};
          });
        }
  } else if (a.which == "decomposition") {
    const int maxN = a.max_N ? a.max_N : 5;
    const int maxM = a.max_M ? a.max_M : 9;
    bounds = {{"N", Json::array({1, maxN})}, {"M", Json::array({0, maxM})}};
    for (int N = 1; N <= maxN; ++N)
      for (int M = 0; M <= maxM; ++M)
        for (int t = 0; t < a.trials; ++t) {
          Matrix<T> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
          for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = random_scalar<T>(rng);
          const Matrix<T> r = hadamard_decomposition_residual(m, M);
          bool ok = true;
          if constexpr (is_exact_v<T>) {
            ok = r.is_zero();
          } else {
            ok = r.max_abs() <= g.tol * std::max(1.0, hadamard_power(m, static_cast<unsigned>(M)).max_abs());
          }
          run.record(ok, [&] {
            Json rows = Json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row_vector(i)));
            return Json{{"N", N}, {"M", M}, {"A", rows}};
          });
        }
  } else if (a.which == "moments") {
    const int maxN = a.max_N ? a.max_N : 4;
    const int span = a.max_M ? a.max_M : 5;
    bounds = {{"N", Json::array({1, maxN})}, {"M", "N..N+" + std::to_string(span)}};
    for (int N = 1; N <= maxN; ++N)
      for (int M = N; M <= N + span; ++M)
        for (int t = 0; t < a.trials; ++t) {
          std::vector<T> u;
          do u = draw(static_cast<std::size_t>(N));
          while (scalar_traits<T>::is_zero(vandermonde_det<T>(u)));
          const auto s = vandermonde_solve_moments<T>(u, M);
          // float: compare against sum_j |u_i|^j jt(mu_j), which bounds the terms
          double majorant = 0.0;
          if constexpr (!is_exact_v<T>) {
            for (int i = 0; i < N; ++i)
              for (int j = 0; j < N; ++j)
                majorant = std::max(majorant, std::pow(std::abs(u[static_cast<std::size_t>(i)]), j) *
                                                  jt_majorant(hook_partition(M, N, j), u));
            majorant *= N;
          }
          bool ok = true;
          for (int i = 0; i < N; ++i) {
            T lhs = scalar_traits<T>::from_int(0);
            for (int j = 0; j < N; ++j)
              lhs += ipow(u[static_cast<std::size_t>(i)], static_cast<unsigned>(j)) * s[static_cast<std::size_t>(j)];
            const T rhs = ipow(u[static_cast<std::size_t>(i)], static_cast<unsigned>(M));
            bool eq = identity_equal(lhs, rhs, g.tol);
            if constexpr (!is_exact_v<T>) eq = eq || std::abs(lhs - rhs) <= g.tol * majorant;
            ok = ok && eq;
          }
          run.record(ok, [&] { return Json{{"N", N}, {"M", M}, {"u", vec_json(u)}}; });
        }
  } else {
    throw usage_error("--which must be pencil, cauchy-binet, decomposition or moments");
  }
  return {{"checks", run.checks}, {"failures", run.failures}, {"counterexamples", run.counterexamples}};
}

inline Json cmd_verify_identity(const IdentityArgs& a, const Globals& g) {
  if (a.trials < 1) throw usage_error("--trials must be positive");
  if (a.max_N < 0 || a.max_M < 0 || a.max_m < 0 || a.max_exponent < 0) throw usage_error("bounds must be non-negative");
  Json bounds;
  Json results = g.backend == "exact" ? run_identity<GaussianRational>(a, g, bounds) : run_identity<Complex>(a, g, bounds);
  Json tolerances = g.backend == "exact" ? Json{{"comparison", "exact"}} : Json{{"relative", g.tol}};
  return {{"command", "verify-identity"},
          {"inputs", {{"which", a.which}, {"trials", a.trials}, {"bounds", bounds}}},
          {"globals", g.echo()},
          {"results", results},
          {"tolerances", tolerances}};
}

// ---- rayleigh --------------------------------------------------------------

struct RayleighArgs {
  std::string matrix;
  std::string rank_one;
  std::string c;
  int M = 0;
  bool probe = false;
  std::optional<double> rho;
  std::string eps = "1e-1,1e-2,1e-3,1e-4";
};

inline Json cmd_rayleigh(const RayleighArgs& a, const Globals& g, std::ostream& err) {
  const std::vector<double> c = require_positive(parse_coeffs(a.c), "--c");
  const int N = static_cast<int>(c.size());
  if (a.M < 0) throw usage_error("--M must be non-negative");
  if (!a.matrix.empty() && !a.rank_one.empty()) throw usage_error("give either --matrix or --rank-one, not both");
  Json inputs{{"c", real_vector_json(c)}, {"M", a.M}};

  std::optional<MatrixC> mat;
  std::optional<std::vector<Complex>> u;
  std::optional<double> file_rho;
  if (!a.matrix.empty()) {
    mat = load_matrix(a.matrix, &file_rho);
    inputs["matrix_file"] = a.matrix;
    inputs["matrix"] = matrix_json(*mat);
  } else if (!a.rank_one.empty()) {
    try {
      u = parse_complex_list(a.rank_one);
    } catch (const parameter_error& e) {
      throw usage_error(std::string("--rank-one: ") + e.what());
    }
    mat = outer_adjoint<Complex>(*u);
    inputs["rank_one"] = vector_json(*u);
  } else if (!a.probe) {
    throw usage_error("rayleigh needs --matrix or --rank-one");
  }
  if (mat && mat->rows() != c.size()) throw usage_error("matrix dimension must equal the number of coefficients in --c");

  Json results = Json::object();
  if (mat) {
    const RayleighResult spectral = rayleigh_constant(c, a.M, *mat, g.tol);
    const RayleighResult variational = rayleigh_variational(c, a.M, *mat, g.tol);
    std::vector<double> values{spectral.value, variational.value};
    results["spectral_radius"] = spectral.value;
    results["variational"] = variational.value;
    if (u && a.M < N) {
      results["rank_one_closed_form"] = "undefined for M < N";
    } else if (u) {
      if (N > 1 && coordinate_separation(*u) < 1e-6)
        err << "warning: coordinates of u nearly coincide; the closed form is the formal limit\n";
      const double closed = rayleigh_rank_one(c, a.M, *u);
      results["rank_one_closed_form"] = closed;
      values.push_back(closed);
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        const double s = std::max({std::abs(values[i]), std::abs(values[j]), std::numeric_limits<double>::min()});
        gap = std::max(gap, std::abs(values[i] - values[j]) / s);
      }
    results["max_relative_gap"] = gap;
    if (variational.maximizer) results["maximizer"] = vector_json(*variational.maximizer);
  }
  if (a.probe) {
    if (a.M < N) throw usage_error("--probe-discontinuity requires M >= N");
    double rho = 1.0;
    if (a.rho) {
      rho = *a.rho;
    } else if (file_rho) {
      rho = *file_rho;
    } else if (mat) {
      rho = mat->max_abs();
    }
    if (!(rho > 0.0)) throw usage_error("--rho must be positive");
    std::vector<double> eps;
    try {
      eps = parse_real_list(a.eps);
    } catch (const parameter_error& e) {
      throw usage_error(std::string("--eps: ") + e.what());
    }
    inputs["probe"] = {{"N", N}, {"rho", rho}, {"epsilons", real_vector_json(eps)}};
    const DiscontinuityProbe p = discontinuity_probe(c, a.M, N, rho, eps, g.tol);
    Json table = Json::array();
    for (const auto& row : p.rows)
      table.push_back({{"epsilon", row.epsilon}, {"closed_form", row.closed_form}, {"spectral_radius", row.spectral}});
    results["probe"] = {{"path", "u_k = sqrt(rho) (1 - eps k / N)"},
                        {"table", table},
                        {"on_point", p.on_point},
                        {"limit_estimate", p.limit_estimate},
                        {"formal_limit", p.formal_limit},
                        {"relative_jump", p.relative_jump}};
  }
  return {{"command", "rayleigh"},
          {"inputs", inputs},
          {"globals", g.echo()},
          {"results", results},
          {"tolerances", {{"psd", g.tol}, {"rank_cut", kRankCut}}}};
}

// ---- stratify --------------------------------------------------------------

struct StratifyArgs {
  std::string matrix;
  std::string group = "trivial";
};

inline Json cmd_stratify(const StratifyArgs& a, const Globals& g) {
  if (a.matrix.empty()) throw usage_error("stratify needs --matrix");
  const GroupTag group = parse_group(a.group);
  const MatrixC m = load_matrix(a.matrix);
  const IndexPartition pi = stratify(m, group, g.tol);
  const IndexPartition pi1 = stratify(m, GroupTag::trivial, g.tol);
  const SubspaceBasis simult = simultaneous_kernel(m, kRankCut, g.tol);
  const SubspaceBasis kpi = kernel_for_partition(pi1);
  const double angle = max_principal_angle(simult, kpi);
  Json results{{"partition", to_string(pi)},
               {"blocks", pi.size()},
               {"offdiagonal_structure", verify_offdiagonal_structure(m, pi, group, g.tol)},
               {"maximal", blocks_are_maximal(m, pi, group, g.tol)},
               {"rank", numerical_rank(m, g.tol)},
               {"rank_bound_holds", rank_bound_check(m, g.tol)},
               {"kernel_partition", to_string(pi1)},
               {"simultaneous_kernel_dim", simult.dim()},
               {"simultaneous_kernel_basis", basis_json(simult)},
               {"partition_kernel_dim", kpi.dim()},
               {"partition_kernel_basis", basis_json(kpi)},
               {"max_principal_angle", angle},
               {"kernels_agree", simult.dim() == kpi.dim() && angle <= 1e-8}};
  return {{"command", "stratify"},
          {"inputs", {{"matrix_file", a.matrix}, {"matrix", matrix_json(m)}, {"group", std::string(to_string(group))}}},
          {"globals", g.echo()},
          {"results", results},
          {"tolerances", {{"orbit_and_rank", g.tol}, {"kernel_rank_cut", kRankCut}, {"angle", 1e-8}}}};
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::string c = "1,1";
  std::string f = "1,-1,1";
  int M = 2;
  int N = 2;
  double rho = 1.0;
  int grid = 200;
  std::size_t budget = 0;  // 0: experiment default
  double alpha = 0.5;
  int draws = 100;
  int max_N = 5;
  int max_M = 10;
  std::string limit = "1,2";
  std::string path = "1|2";
  int steps = 20;
};

inline Json experiment_sharpness(const ExperimentArgs& a, Json& inputs) {
  CoefficientTuple c{require_positive(parse_coeffs(a.c), "--c"), std::nullopt};
  if (a.N != static_cast<int>(c.N())) throw usage_error("--N must equal the number of coefficients in --c");
  if (a.M < a.N) throw usage_error("sharpness requires M >= N");
  if (!(a.rho > 0.0)) throw usage_error("--rho must be positive");
  if (a.grid < 2 || a.grid < a.N) throw usage_error("--grid must be at least max(2, N)");
  inputs = {{"c", real_vector_json(c.c)}, {"M", a.M}, {"N", a.N}, {"rho", a.rho}, {"grid", a.grid}};
  const double closed = threshold_constant(c, a.M, a.N, a.rho);
  const SharpnessEstimate e = empirical_sharpness(c, a.M, a.N, a.rho, a.grid);
  return {{"closed_form", closed},
          {"empirical", e.value},
          {"gap", closed - e.value},
          {"relative_gap", (closed - e.value) / closed},
          {"maximizer", real_vector_json(e.maximizer)}};
}

inline Json witness_json(const WitnessSearch& s) {
  Json r{{"verdict", s.found ? "witness-found" : "inconclusive"}, {"evaluated", s.evaluated}};
  if (s.found) {
    r["u"] = real_vector_json(s.u);
    r["min_eigenvalue"] = s.min_eigenvalue;
    r["witness"] = matrix_json(*s.witness);
  }
  return r;
}

inline Json experiment_horn(const ExperimentArgs& a, const Globals& g, Json& inputs) {
  std::vector<double> f;
  try {
    f = parse_real_list(a.f);
  } catch (const parameter_error& e) {
    throw usage_error(std::string("--f: ") + e.what());
  }
  if (a.N < 1) throw usage_error("--N must be positive");
  if (!(a.rho > 0.0)) throw usage_error("--rho must be positive");
  const std::size_t budget = a.budget ? a.budget : 10000;
  RealPoly poly;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] != 0.0) poly[static_cast<unsigned>(k)] = f[k];
  inputs = {{"f", real_vector_json(f)}, {"N", a.N}, {"rho", a.rho}, {"budget", budget}};
  return witness_json(horn_necessity_witness(poly, a.N, a.rho, budget, g.seed, g.tol));
}

inline Json experiment_power(const ExperimentArgs& a, const Globals& g, Json& inputs) {
  if (a.N < 1) throw usage_error("--N must be positive");
  if (!(a.alpha > a.N - 2 && a.alpha < a.N - 1)) throw usage_error("--alpha must lie in (N-2, N-1)");
  if (!(a.rho > 0.0)) throw usage_error("--rho must be positive");
  const std::size_t budget = a.budget ? a.budget : 100000;
  inputs = {{"N", a.N}, {"alpha", a.alpha}, {"rho", a.rho}, {"budget", budget}, {"dimension", a.N + 1}};
  return witness_json(power_nonpreservation_search(a.N, a.alpha, a.rho, budget, g.seed, g.tol));
}

inline Json experiment_closure(const ExperimentArgs& a, const Globals& g, Json& inputs) {
  const std::size_t n = std::max({partition_extent(a.limit), partition_extent(a.path), static_cast<std::size_t>(1)});
  const IndexPartition limit = parse_partition_arg(a.limit, n, "--limit");
  const IndexPartition path = parse_partition_arg(a.path, n, "--path");
  if (a.steps < 1 || a.steps > 30) throw usage_error("--steps must lie in [1, 30]");
  if (!refinement_leq(path, limit)) throw usage_error("--path must refine --limit");
  inputs = {{"limit", to_string(limit)}, {"path", to_string(path)}, {"steps", a.steps}, {"N", n}};
  const auto steps = closure_probe(limit, path, a.steps, g.seed, g.tol);
  Json table = Json::array();
  bool constant = true;
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) constant = constant && steps[k].label == path;
  for (const auto& s : steps) table.push_back({{"t", s.t}, {"distance", s.distance}, {"label", to_string(s.label)}});
  return {{"table", table},
          {"label_constant_along_path", constant},
          {"limit_label", to_string(steps.back().label)},
          {"limit_matches", steps.back().label == limit}};
}

inline Json experiment_cross_dim(const ExperimentArgs& a, const Globals& g, Json& inputs) {
  if (a.draws < 1) throw usage_error("--draws must be positive");
  if (a.max_N < 2 || a.max_M < a.max_N) throw usage_error("need 2 <= max-N <= max-M");
  inputs = {{"draws", a.draws}, {"max_N", a.max_N}, {"max_M", a.max_M}};
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<int> pickN(2, a.max_N);
  std::uniform_real_distribution<double> coef(0.1, 4.0);
  std::uniform_real_distribution<double> radius(0.1, 4.0);
  int holds = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  Json argmin;
  for (int d = 0; d < a.draws; ++d) {
    const int N = pickN(rng);
    std::uniform_int_distribution<int> pickM(N, a.max_M);
    const int M = pickM(rng);
    CoefficientTuple c;
    for (int j = 0; j < N; ++j) c.c.push_back(coef(rng));
    const double rho = radius(rng);
    const CrossDimCheck chk = cross_dim_inequality_check(c, M, N, rho);
    holds += chk.holds ? 1 : 0;
    if (chk.ratio < min_ratio) {
      min_ratio = chk.ratio;
      argmin = {{"c", real_vector_json(c.c)}, {"M", M}, {"N", N}, {"rho", rho}, {"lhs", chk.lhs}, {"rhs", chk.rhs}};
    }
  }
  return {{"draws", a.draws}, {"holds", holds}, {"all_hold", holds == a.draws}, {"min_ratio", min_ratio},
          {"min_ratio_at", argmin}};
}

inline Json cmd_experiment(const ExperimentArgs& a, const Globals& g) {
  Json inputs;
  Json results;
  if (a.name == "sharpness") {
    results = experiment_sharpness(a, inputs);
  } else if (a.name == "horn-witness") {
    results = experiment_horn(a, g, inputs);
  } else if (a.name == "power-nonpreservation") {
    results = experiment_power(a, g, inputs);
  } else if (a.name == "closure-probe") {
    results = experiment_closure(a, g, inputs);
  } else if (a.name == "cross-dim") {
    results = experiment_cross_dim(a, g, inputs);
  } else {
    throw usage_error("unknown experiment '" + a.name +
                      "' (sharpness, horn-witness, power-nonpreservation, closure-probe, cross-dim)");
  }
  return {{"command", "experiment"},
          {"experiment", a.name},
          {"inputs", inputs},
          {"globals", g.echo()},
          {"results", results},
          {"tolerances", {{"psd", g.tol}}}};
}

// ---- entry point -----------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entrywise positivity calculus: thresholds, identities, Rayleigh quotients and strata"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "PSD / orbit / comparison tolerance")->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable report");
  app.add_option("--backend", g.backend, "arithmetic for verify-identity")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();

  ThresholdArgs th;
  auto* threshold = app.add_subcommand("threshold", "threshold constant C(c; z^M; N, rho)");
  threshold->add_option("--c", th.c, "c_0,...,c_{N-1}, ascending degree")->required();
  threshold->add_option("--M", th.M, "degree of the extra term")->required();
  threshold->add_option("--N", th.N, "matrix dimension")->required();
  threshold->add_option("--rho", th.rho, "disc radius")->capture_default_str();
  threshold->add_option("--cprime", th.cprime, "coefficient of z^M to classify");
  threshold->add_flag("--empirical", th.empirical, "grid sharpness estimate");
  threshold->add_option("--grid", th.grid, "grid size for --empirical")->capture_default_str();

  IdentityArgs id;
  auto* verify = app.add_subcommand("verify-identity", "randomized checks of the determinantal identities");
  verify->add_option("--which", id.which, "pencil | cauchy-binet | decomposition | moments")->capture_default_str();
  verify->add_option("--trials", id.trials, "draws per size configuration")->capture_default_str();
  verify->add_option("--max-N", id.max_N, "largest dimension");
  verify->add_option("--max-M", id.max_M, "largest M (decomposition) or M - N span (pencil, moments)");
  verify->add_option("--max-m", id.max_m, "largest number of exponents (cauchy-binet)");
  verify->add_option("--max-exponent", id.max_exponent, "largest exponent (cauchy-binet)")->capture_default_str();

  RayleighArgs ra;
  auto* rayleigh = app.add_subcommand("rayleigh", "extreme critical value C(h_c; z^M; A)");
  rayleigh->add_option("--matrix", ra.matrix, "matrix file");
  rayleigh->add_option("--rank-one", ra.rank_one, "u as comma-separated complex literals; A = u u^*");
  rayleigh->add_option("--c", ra.c, "c_0,...,c_{N-1}")->required();
  rayleigh->add_option("--M", ra.M, "Hadamard power")->required();
  rayleigh->add_flag("--probe-discontinuity", ra.probe, "table along the path to rho 1_N");
  rayleigh->add_option("--rho", ra.rho, "radius for the probe");
  rayleigh->add_option("--eps", ra.eps, "descending epsilons for the probe")->capture_default_str();

  StratifyArgs st;
  auto* strat = app.add_subcommand("stratify", "G-orbit partition and simultaneous kernel");
  strat->add_option("--matrix", st.matrix, "matrix file")->required();
  strat->add_option("--group", st.group, "trivial | s1 | cx")->capture_default_str();

  ExperimentArgs ex;
  auto* exper = app.add_subcommand("experiment", "named experiments");
  exper->add_option("name", ex.name, "sharpness | horn-witness | power-nonpreservation | closure-probe | cross-dim")
      ->required();
  exper->add_option("--c", ex.c, "coefficients (sharpness)")->capture_default_str();
  exper->add_option("--f", ex.f, "dense polynomial coefficients (horn-witness)")->capture_default_str();
  exper->add_option("--M", ex.M, "degree (sharpness)")->capture_default_str();
  exper->add_option("--N", ex.N, "dimension")->capture_default_str();
  exper->add_option("--rho", ex.rho, "radius")->capture_default_str();
  exper->add_option("--grid", ex.grid, "grid size (sharpness)")->capture_default_str();
  exper->add_option("--budget", ex.budget, "search budget (horn-witness, power-nonpreservation)");
  exper->add_option("--alpha", ex.alpha, "real power (power-nonpreservation)")->capture_default_str();
  exper->add_option("--draws", ex.draws, "random draws (cross-dim)")->capture_default_str();
  exper->add_option("--max-N", ex.max_N, "largest N (cross-dim)")->capture_default_str();
  exper->add_option("--max-M", ex.max_M, "largest M (cross-dim)")->capture_default_str();
  exper->add_option("--limit", ex.limit, "limit partition, e.g. 1,2|3 (closure-probe)")->capture_default_str();
  exper->add_option("--path", ex.path, "path partition refining the limit (closure-probe)")->capture_default_str();
  exper->add_option("--steps", ex.steps, "halvings of t (closure-probe)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!(g.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Json report;
    if (threshold->parsed()) {
      report = cmd_threshold(th, g);
    } else if (verify->parsed()) {
      report = cmd_verify_identity(id, g);
    } else if (rayleigh->parsed()) {
      report = cmd_rayleigh(ra, g, err);
    } else if (strat->parsed()) {
      report = cmd_stratify(st, g);
    } else {
      report = cmd_experiment(ex, g);
    }
    emit(out, report, g);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const parameter_error& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const domain_error& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "runtime: " << elapsed.count() << " s\n";
  return kOk;
}

}  // namespace entrywise::cli
