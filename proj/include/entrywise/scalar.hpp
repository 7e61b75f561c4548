#pragma once

// Scalar backends. Every algorithm in the library is templated on a scalar
// type T satisfying `Scalar`; two backends are provided:
//
//   GaussianRational      exact complex numbers with rational parts
//   std::complex<double>  floating complex numbers
//
// Exact code paths compare with ==; floating paths always go through an
// explicit tolerance (see approx_equal).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>

namespace entrywise {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long long re) : re_(re) {}  // NOLINT: implicit from integers
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    if (o.im_ == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    const Rational d = o.norm();
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const {
    return {static_cast<double>(re_), static_cast<double>(im_)};
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    os << z.re_;
    if (z.im_ != 0) os << (z.im_ > 0 ? "+" : "") << z.im_ << "i";
    return os;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::string to_string(const GaussianRational& z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational from_int(long long k) { return GaussianRational(k); }
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static double magnitude(const GaussianRational& z) { return std::abs(z.to_complex()); }
  static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex from_int(long long k) { return Complex(static_cast<double>(k), 0.0); }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static Complex to_complex(const Complex& z) { return z; }
};

template <class T>
concept Scalar = requires(T a, T b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { scalar_traits<T>::exact } -> std::convertible_to<bool>;
  { scalar_traits<T>::from_int(1) } -> std::convertible_to<T>;
};

template <Scalar T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <Scalar T>
T ipow(T base, unsigned exponent) {
  T result = scalar_traits<T>::from_int(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

/// Default relative tolerance for floating identity checks.
inline constexpr double kFloatRelTol = 1e-9;

/// Exact equality on the exact backend; |a-b| <= tol * max(1, |a|, |b|) otherwise.
template <Scalar T>
bool approx_equal(const T& a, const T& b, double tol = kFloatRelTol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return a == b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }
}

/// Uniform draw of p/q with p in [lo, hi] and q in [1, max_den].
template <class Rng>
Rational random_rational(Rng& rng, int lo = -9, int hi = 9, int max_den = 9) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  const int p = num(rng);
  const int q = den(rng);
  return Rational(p, q);
}

/// Random Gaussian rational with both parts drawn by random_rational.
template <class Rng>
GaussianRational random_gaussian_rational(Rng& rng, bool real_only = false) {
  Rational re = random_rational(rng);
  Rational im = real_only ? Rational(0) : random_rational(rng);
  return {std::move(re), std::move(im)};
}

/// Draws a scalar of either backend. Floating draws use the same rational grid
/// converted to double so both backends see comparable inputs.
template <Scalar T, class Rng>
T random_scalar(Rng& rng, bool real_only = false) {
  GaussianRational z = random_gaussian_rational(rng, real_only);
  if constexpr (is_exact_v<T>) {
    return z;
  } else {
    return z.to_complex();
  }
}

}  // namespace entrywise
