#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace frobenius {

/// Arbitrary-precision rational coefficient type (GMP backed).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (coincident Toda coordinates,
/// base point too close to the discriminant, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A matrix that had to be inverted was (numerically) singular.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure of an exact pipeline stage.
class PipelineError : public Error {
 public:
  using Error::Error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0).
inline std::string to_string(const Rational& q) {
  const Integer num = numerator_of(q);
  const Integer den = denominator_of(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

/// Converts an exact coefficient into the scalar type used for evaluation.
template <class T>
T scalar_cast(const Rational& q);

template <>
inline Rational scalar_cast<Rational>(const Rational& q) {
  return q;
}

template <>
inline double scalar_cast<double>(const Rational& q) {
  return to_double(q);
}

template <>
inline Complex scalar_cast<Complex>(const Rational& q) {
  return {to_double(q), 0.0};
}

template <>
inline std::complex<long double> scalar_cast<std::complex<long double>>(const Rational& q) {
  return {q.convert_to<long double>(), 0.0L};
}

inline double magnitude(const Rational& q) { return std::abs(to_double(q)); }
inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(double x) { return std::abs(x); }

inline bool is_exact_zero(const Rational& q) { return q == 0; }
inline bool is_exact_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline bool is_exact_zero(double x) { return x == 0.0; }

}  // namespace frobenius
