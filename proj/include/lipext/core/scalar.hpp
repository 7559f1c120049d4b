#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace lipext {

// Exact rationals; expression templates are disabled so `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class Arithmetic { kExact, kFloat };

inline const char* to_string(Arithmetic a) {
  return a == Arithmetic::kExact ? "exact" : "float";
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  // Default feasibility/optimality tolerance for floating solvers.
  static constexpr double kEps = 1e-9;
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational abs(const Rational& v) { return boost::multiprecision::abs(v); }
  static constexpr double kEps = 0.0;
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::kExact;

template <class T>
double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <class T>
T from_double(double v) {
  return ScalarTraits<T>::from_double(v);
}

template <class T>
T abs_value(const T& v) {
  return ScalarTraits<T>::abs(v);
}

// Tolerance-aware comparisons: exact for rationals, `tol`-slack for doubles.
template <class T>
bool leq(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a <= b;
  } else {
    return a <= b + tol;
  }
}

template <class T>
bool approx_eq(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= tol;
  }
}

std::string to_string(const Rational& q);

}  // namespace lipext
