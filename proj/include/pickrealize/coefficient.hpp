#pragma once

#include <cmath>
#include <complex>

#include "pickrealize/gaussian_rational.hpp"

namespace pickrealize {

// Zero-drop threshold for float coefficients (absolute).
inline constexpr double kFloatDropTolerance = 1e-12;

template <class T>
struct CoefficientTraits;

template <>
struct CoefficientTraits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
  static bool is_real(const GaussianRational& c) { return c.is_real(); }
  static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
  static Complex to_complex(const GaussianRational& c) { return c.to_complex(); }
  static GaussianRational from_complex(Complex c) { return GaussianRational::from_double(c.real(), c.imag()); }
  static GaussianRational from_int(long v) { return GaussianRational(v); }
  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational inverse_of(long v) { return {mpq_class(1, v), mpq_class(0)}; }
  static double magnitude(const GaussianRational& c) { return std::abs(c.to_complex()); }
  static bool equal(const GaussianRational& a, const GaussianRational& b) { return a == b; }
};

template <>
struct CoefficientTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& c) { return std::abs(c) <= kFloatDropTolerance; }
  static bool is_real(const Complex& c) { return std::abs(c.imag()) <= kFloatDropTolerance; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex from_complex(Complex c) { return c; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex imaginary_unit() { return {0.0, 1.0}; }
  static Complex inverse_of(long v) { return {1.0 / static_cast<double>(v), 0.0}; }
  static double magnitude(const Complex& c) { return std::abs(c); }
  static bool equal(const Complex& a, const Complex& b) { return is_zero(a - b); }
};

template <class T>
concept Coefficient = requires { CoefficientTraits<T>::exact; };

}  // namespace pickrealize
