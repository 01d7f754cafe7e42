#include "hlab/scalar.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace hlab {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw std::invalid_argument("empty number");
  if (!whole.empty() && !all_digits(whole)) throw std::invalid_argument("bad number: " + std::string(text));
  if (dot != std::string_view::npos && !frac.empty() && !all_digits(frac)) {
    throw std::invalid_argument("bad number: " + std::string(text));
  }
  std::string digits = std::string(whole) + std::string(frac);
  if (digits.empty()) digits = "0";
  mpz_class numerator(digits, 10);
  mpz_class denominator = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) denominator *= 10;
  Rational q(numerator, denominator);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
  Rational q = num / den;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

NumDual sqrt(const NumDual& x) {
  const double s = std::sqrt(x.value);
  const double f = x.d1 / (2.0 * s);
  const double sec = (x.d2 - 2.0 * f * f) / (2.0 * s);
  return {s, f, sec};
}

NumDual pow(const NumDual& x, int exponent) {
  if (exponent < 0) return NumDual(1.0) / pow(x, -exponent);
  NumDual result(1.0);
  NumDual b = x;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

// ---- Poly -------------------------------------------------------------------

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) coeffs_.push_back(c);
}

Poly::Poly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly Poly::variable() { return monomial(1); }

Poly Poly::monomial(unsigned degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Poly::coefficient(unsigned i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

Rational Poly::evaluate(const Rational& r) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

double Poly::evaluate(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + it->get_d();
  return acc;
}

NumDual Poly::evaluate(const NumDual& r) const {
  NumDual acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + NumDual(it->get_d());
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(v);
  trim();
  return *this;
}

std::string Poly::to_string(std::string_view var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = abs(c);
    const bool unit = mag == 1;
    if (!unit || k == 0) out += mag.get_str();
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result(Rational(1));
  Poly b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

// ---- RationalFunction -------------------------------------------------------

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
}

RationalFunction RationalFunction::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

Rational RationalFunction::evaluate(const Rational& r) const {
  const Rational d = den_.evaluate(r);
  if (sgn(d) == 0) throw std::domain_error("rational function pole at r = " + r.get_str());
  Rational q = num_.evaluate(r) / d;
  q.canonicalize();
  return q;
}

NumDual RationalFunction::evaluate(const NumDual& r) const {
  const NumDual d = den_.evaluate(r);
  if (d.value == 0.0) throw std::domain_error("rational function pole");
  return num_.evaluate(r) / d;
}

double RationalFunction::evaluate(double r) const {
  const double d = den_.evaluate(r);
  if (d == 0.0) throw std::domain_error("rational function pole");
  return num_.evaluate(r) / d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.num_.is_zero()) throw std::domain_error("division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  return *this;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction pow(const RationalFunction& base, int exponent) {
  if (exponent < 0) return RationalFunction(1) / pow(base, -exponent);
  return {pow(base.numerator(), static_cast<unsigned>(exponent)),
          pow(base.denominator(), static_cast<unsigned>(exponent))};
}

// ---- traits -----------------------------------------------------------------

Rational ScalarTraits<Rational>::sqrt2_power(int k) {
  if (k % 2 != 0) {
    throw std::domain_error("odd power of sqrt(2) is not rational; use numeric scalars");
  }
  if (k >= 0) return pow(Rational(2), static_cast<unsigned>(k / 2));
  return Rational(1) / pow(Rational(2), static_cast<unsigned>(-k / 2));
}

std::string ScalarTraits<NumDual>::render(const NumDual& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x.value);
  return buf;
}

}  // namespace hlab
