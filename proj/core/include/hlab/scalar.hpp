#pragma once

// Scalar backends for the exterior-calculus kernel.
//
//   Rational          exact rational constant (GMP).
//   Poly              exact polynomial in the radial variable r with
//                     rational coefficients.
//   RationalFunction  quotient of two Polys; used by the closed-form metric
//                     identities. Not reduced: equality is cross-multiplied.
//   NumDual           double carrying d/dr and d^2/dr^2 through arithmetic.
//
// Every backend specializes ScalarTraits, which is what FormExpr and the
// exterior derivative use.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hlab {

using Rational = mpq_class;

// Parses "p", "p/q" or a finite decimal such as "0.35" (taken exactly, as
// 35/100). Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q);

// Integer power of a rational, exponent >= 0.
Rational pow(const Rational& base, unsigned exponent);

class NumDual {
 public:
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr NumDual() = default;
  constexpr NumDual(double v) : value(v) {}  // NOLINT: implicit constant
  constexpr NumDual(double v, double first, double second)
      : value(v), d1(first), d2(second) {}

  static constexpr NumDual variable(double r) { return {r, 1.0, 0.0}; }

  NumDual& operator+=(const NumDual& o) {
    value += o.value;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  NumDual& operator-=(const NumDual& o) {
    value -= o.value;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  NumDual& operator*=(const NumDual& o) {
    const double v = value * o.value;
    const double f = d1 * o.value + value * o.d1;
    const double s = d2 * o.value + 2.0 * d1 * o.d1 + value * o.d2;
    value = v;
    d1 = f;
    d2 = s;
    return *this;
  }
  NumDual& operator/=(const NumDual& o) {
    const double q = value / o.value;
    const double f = (d1 - q * o.d1) / o.value;
    const double s = (d2 - 2.0 * f * o.d1 - q * o.d2) / o.value;
    value = q;
    d1 = f;
    d2 = s;
    return *this;
  }

  friend NumDual operator+(NumDual a, const NumDual& b) { return a += b; }
  friend NumDual operator-(NumDual a, const NumDual& b) { return a -= b; }
  friend NumDual operator*(NumDual a, const NumDual& b) { return a *= b; }
  friend NumDual operator/(NumDual a, const NumDual& b) { return a /= b; }
  friend NumDual operator-(const NumDual& a) { return {-a.value, -a.d1, -a.d2}; }
  friend bool operator==(const NumDual&, const NumDual&) = default;
};

NumDual sqrt(const NumDual& x);
NumDual pow(const NumDual& x, int exponent);

// d/dr of a jet. The second-derivative slot of the result would need a third
// derivative, which a NumDual does not carry; it is set to NaN so that any
// accidental use shows up instead of silently reading zero.
inline NumDual radial_derivative(const NumDual& x) {
  return {x.d1, x.d2, std::numeric_limits<double>::quiet_NaN()};
}

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: implicit constant
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  explicit Poly(std::vector<Rational> coefficients);

  static Poly variable();  // r
  static Poly monomial(unsigned degree, const Rational& c = 1);

  // Index i holds the coefficient of r^i; no trailing zeros.
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coefficient(unsigned i) const;

  Poly derivative() const;
  Rational evaluate(const Rational& r) const;
  double evaluate(double r) const;
  NumDual evaluate(const NumDual& r) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string(std::string_view var = "r") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Poly pow(const Poly& base, unsigned exponent);

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(const Poly& p) : num_(p), den_(Rational(1)) {}  // NOLINT
  RationalFunction(const Rational& c) : RationalFunction(Poly(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Poly(c)) {}  // NOLINT
  RationalFunction(Poly num, Poly den);

  static RationalFunction variable() { return Poly::variable(); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction derivative() const;
  // Throws std::domain_error where the denominator vanishes.
  Rational evaluate(const Rational& r) const;
  NumDual evaluate(const NumDual& r) const;
  double evaluate(double r) const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_}; }
  // Identity of rational functions: a.num * b.den == b.num * a.den.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  Poly num_;
  Poly den_;
};

RationalFunction pow(const RationalFunction& base, int exponent);

// What FormExpr and d() need from a coefficient type.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& q, double) { return q; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational radial_derivative(const Rational&) { return Rational(0); }
  // sqrt(2)^k; only even k is representable.
  static Rational sqrt2_power(int k);
  static std::string render(const Rational& x) { return to_string(x); }
};

template <>
struct ScalarTraits<Poly> {
  static Poly from_rational(const Rational& q, double) { return Poly(q); }
  static bool is_zero(const Poly& x) { return x.is_zero(); }
  static Poly radial_derivative(const Poly& x) { return x.derivative(); }
  static Poly sqrt2_power(int k) { return Poly(ScalarTraits<Rational>::sqrt2_power(k)); }
  static std::string render(const Poly& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<NumDual> {
  static NumDual from_rational(const Rational&, double x) { return NumDual(x); }
  // Exact zero in every slot; NaN slots keep a term alive.
  static bool is_zero(const NumDual& x) {
    return x.value == 0.0 && x.d1 == 0.0 && x.d2 == 0.0;
  }
  static NumDual radial_derivative(const NumDual& x) { return hlab::radial_derivative(x); }
  static NumDual sqrt2_power(int k) { return NumDual(std::pow(std::sqrt(2.0), k)); }
  static std::string render(const NumDual& x);
};

}  // namespace hlab
