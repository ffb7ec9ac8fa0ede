#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace semicross {

using Rational = mpq_class;

// Canonicalized rational from an integer pair (mpq_class alone does not
// reduce, which breaks exact comparison).
Rational make_ratio(long num, long den);

// Exact parsing of "3", "-3/4", "0.25" (decimal digits become an exact
// denominator power of ten).
Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& q);
double rational_to_double(const Rational& q);

// Rational square root when q is a perfect square of a rational, else nullopt.
std::optional<Rational> exact_sqrt(const Rational& q);

// Deterministic rational lower bound of sqrt(q) with absolute error < 1e-18.
Rational approx_sqrt_lower(const Rational& q);

// One value of the exact complex-rational scalar field used everywhere
// outside the numeric representation layer.
struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long v) : re(v), im(0) {}
  Scalar(Rational r) : re(std::move(r)), im(0) {}
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Rational abs_sq() const { return re * re + im * im; }

  Scalar operator+(const Scalar& o) const { return {re + o.re, im + o.im}; }
  Scalar operator-(const Scalar& o) const { return {re - o.re, im - o.im}; }
  Scalar operator-() const { return {-re, -im}; }
  Scalar operator*(const Scalar& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
};

Scalar scalar_from_string(const std::string& text);
std::string scalar_to_string(const Scalar& z);

// Norm of a function or element. The squared modulus of the attained value is
// always exact; `value` is set when that square has a rational root (the case
// for every bundled fixture). `approx` is kept for display and numeric use.
struct NormValue {
  std::optional<Rational> value;
  std::optional<Rational> square;
  double approx = 0.0;

  static NormValue zero();
  static NormValue from_square(const Rational& sq);
  static NormValue from_value(const Rational& v);

  bool is_zero() const;
  double to_double() const { return approx; }
};

NormValue norm_add(const NormValue& a, const NormValue& b);
NormValue norm_scale(const NormValue& a, const Rational& factor);  // factor >= 0
// Order comparison; exact whenever both squares are known.
bool norm_less(const NormValue& a, const NormValue& b);
NormValue norm_max(const NormValue& a, const NormValue& b);
NormValue norm_min(const NormValue& a, const NormValue& b);
// a >= b with exact squares when available.
bool norm_geq(const NormValue& a, const NormValue& b);

}  // namespace semicross
