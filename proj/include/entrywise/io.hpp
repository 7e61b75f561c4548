#pragma once

// Matrix files and inline literals.
//
// A matrix file is one JSON object:
//   {"n": 2, "entries": [[{"re": 1, "im": 0}, ...], ...], "rho": 1.0, "description": "..."}
// "im" may be omitted for real entries; "rho" and "description" are optional.
// Doubles are written in shortest round-trip form, so parse(emit(A)) == A.

#include "entrywise/errors.hpp"
#include "entrywise/matrix.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace entrywise {

struct MatrixFile {
  MatrixC matrix;
  std::optional<double> rho;
  std::optional<std::string> description;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_double_strict(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw parameter_error("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

inline double json_number(const nlohmann::json& j, std::string_view what) {
  if (!j.is_number()) throw parameter_error("matrix file: " + std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw parameter_error("matrix file: " + std::string(what) + " is not finite");
  return v;
}

}  // namespace detail

inline MatrixFile matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parameter_error("matrix file: top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw parameter_error("matrix file: \"n\" must be a positive integer");
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != n)
    throw parameter_error("matrix file: \"entries\" must be an array of n rows");
  MatrixFile f{MatrixC(n, n), std::nullopt, std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j["entries"][i];
    if (!row.is_array() || row.size() != n) throw parameter_error("matrix file: row " + std::to_string(i) + " must have n entries");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = row[k];
      const std::string where = "entry (" + std::to_string(i) + "," + std::to_string(k) + ")";
      if (e.is_number()) {
        f.matrix(i, k) = Complex(detail::json_number(e, where), 0.0);
        continue;
      }
      if (!e.is_object() || !e.contains("re")) throw parameter_error("matrix file: " + where + " needs \"re\"");
      const double re = detail::json_number(e["re"], where);
      const double im = e.contains("im") ? detail::json_number(e["im"], where) : 0.0;
      f.matrix(i, k) = Complex(re, im);
    }
  }
  if (j.contains("rho")) {
    f.rho = detail::json_number(j["rho"], "rho");
    if (*f.rho <= 0.0) throw parameter_error("matrix file: rho must be positive");
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw parameter_error("matrix file: description must be a string");
    f.description = j["description"].get<std::string>();
  }
  return f;
}

inline nlohmann::ordered_json entries_to_json(const MatrixC& a) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back({{"re", a(i, k).real()}, {"im", a(i, k).imag()}});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::ordered_json matrix_to_json(const MatrixFile& f) {
  detail::require(f.matrix.is_square() && f.matrix.rows() >= 1, "matrix_to_json: square nonempty matrix required");
  nlohmann::ordered_json out;
  out["n"] = f.matrix.rows();
  out["entries"] = entries_to_json(f.matrix);
  if (f.rho) out["rho"] = *f.rho;
  if (f.description) out["description"] = *f.description;
  return out;
}

inline MatrixFile parse_matrix_file(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parameter_error(std::string("matrix file: ") + e.what());
  }
  return matrix_from_json(j);
}

inline std::string emit_matrix_file(const MatrixFile& f) { return matrix_to_json(f).dump(2) + "\n"; }

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parameter_error("cannot open matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

inline void write_matrix_file(const std::string& path, const MatrixFile& f) {
  std::ofstream out(path);
  if (!out) throw parameter_error("cannot write matrix file '" + path + "'");
  out << emit_matrix_file(f);
}

/// "a+bi", "a-bi", "a", "bi", "i", "-i", with exponents allowed in a and b.
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw parameter_error("cannot parse complex literal ''");
  if (s.back() != 'i') return {detail::parse_double_strict(s, "complex literal"), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading and not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string_view b) {
    if (b.empty() || b == "+") return 1.0;
    if (b == "-") return -1.0;
    return detail::parse_double_strict(b, "imaginary part of '" + s + "'");
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  const double re = detail::parse_double_strict(std::string_view(body).substr(0, split), "real part of '" + s + "'");
  return {re, imag_part(std::string_view(body).substr(split))};
}

inline std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Comma-separated reals, "1,0.5,2".
inline std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(detail::parse_double_strict(item, "list entry"));
  return out;
}

/// Comma-separated complex literals, "1+2i,3,-i".
inline std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (auto item : split_list(text)) out.push_back(parse_complex(item));
  return out;
}

/// Inverse of parse_complex in shortest round-trip form.
inline std::string format_complex(Complex z) {
  auto num = [](double x) { return nlohmann::json(x).dump(); };
  if (z.imag() == 0.0) return num(z.real());
  std::string im = num(std::abs(z.imag())) + "i";
  if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

}  // namespace entrywise
