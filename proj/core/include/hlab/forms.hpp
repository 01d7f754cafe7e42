#pragma once

// Elements of the exterior algebra over a fixed coframe {e^0, ..., e^{N-1}},
// N <= 64. A basis monomial e^{i1} ^ ... ^ e^{ik} with i1 < ... < ik is stored
// as the bitmask of its indices; terms are kept sorted lexicographically by
// index tuple, merged, and free of zero coefficients.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hlab/scalar.hpp"

namespace hlab {

using GeneratorMask = std::uint64_t;
inline constexpr int kMaxGenerators = 64;

inline constexpr GeneratorMask generator_bit(int i) { return GeneratorMask{1} << i; }

// Lexicographic order of the sorted index tuples of two masks of equal
// popcount: the tuple holding the lowest index in the symmetric difference
// comes first.
inline constexpr bool lex_less(GeneratorMask a, GeneratorMask b) {
  const GeneratorMask diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

// Sign of e^A ^ e^B relative to the sorted monomial e^{A|B}; 0 if A, B overlap.
inline constexpr int wedge_sign(GeneratorMask a, GeneratorMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (GeneratorMask rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const GeneratorMask above = j + 1 >= 64 ? 0 : (~GeneratorMask{0} << (j + 1));
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

inline std::vector<int> mask_indices(GeneratorMask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

template <class S>
class FormExpr {
 public:
  using Traits = ScalarTraits<S>;

  struct Term {
    GeneratorMask mask;
    S coeff;
  };

  FormExpr() = default;
  explicit FormExpr(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("negative form degree");
  }

  static FormExpr scalar(S value) {
    FormExpr f(0);
    if (!Traits::is_zero(value)) f.terms_.push_back({0, std::move(value)});
    return f;
  }

  static FormExpr generator(int index, S coeff = S(1)) {
    if (index < 0 || index >= kMaxGenerators) throw std::out_of_range("generator index");
    FormExpr f(1);
    if (!Traits::is_zero(coeff)) f.terms_.push_back({generator_bit(index), std::move(coeff)});
    return f;
  }

  // Accepts terms in any order, possibly repeated; canonicalizes.
  static FormExpr from_terms(int degree, std::vector<Term> terms) {
    FormExpr f(degree);
    for (const auto& t : terms) {
      if (std::popcount(t.mask) != degree) throw std::invalid_argument("term degree mismatch");
    }
    f.terms_ = std::move(terms);
    f.canonicalize();
    return f;
  }

  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(GeneratorMask mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const Term& t, GeneratorMask m) { return lex_less(t.mask, m); });
    if (it != terms_.end() && it->mask == mask) return it->coeff;
    return S(0);
  }

  FormExpr& operator+=(const FormExpr& o) { return accumulate(o, false); }
  FormExpr& operator-=(const FormExpr& o) { return accumulate(o, true); }
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  friend FormExpr operator-(FormExpr a) {
    for (auto& t : a.terms_) t.coeff = -t.coeff;
    return a;
  }

  friend FormExpr operator*(const S& s, FormExpr a) {
    if (Traits::is_zero(s)) return FormExpr(a.degree_);
    for (auto& t : a.terms_) t.coeff = s * t.coeff;
    a.drop_zeros();
    return a;
  }

  friend bool operator==(const FormExpr& a, const FormExpr& b) {
    if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mask != b.terms_[i].mask || !(a.terms_[i].coeff == b.terms_[i].coeff)) {
        return false;
      }
    }
    return true;
  }

  template <class T, class F>
  FormExpr<T> map_coefficients(F&& f) const {
    std::vector<typename FormExpr<T>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mask, f(t.coeff)});
    return FormExpr<T>::from_terms(degree_, std::move(out));
  }

  // Coefficients as "c*name^name + ...", in canonical order.
  std::string render(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + Traits::render(t.coeff) + ")";
      for (int i : mask_indices(t.mask)) out += (out.back() == ')' ? "*" : "^") + name(i);
    }
    return out;
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return lex_less(a.mask, b.mask); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mask == t.mask) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    terms_ = std::move(merged);
    drop_zeros();
  }

  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return Traits::is_zero(t.coeff); });
  }

  FormExpr& accumulate(const FormExpr& o, bool subtract) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty() && degree_ != o.degree_) degree_ = o.degree_;
    if (degree_ != o.degree_) throw std::invalid_argument("adding forms of different degree");
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && lex_less(a->mask, b->mask))) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || lex_less(b->mask, a->mask)) {
        out.push_back({b->mask, subtract ? S(-b->coeff) : b->coeff});
        ++b;
      } else {
        S c = subtract ? S(a->coeff - b->coeff) : S(a->coeff + b->coeff);
        if (!Traits::is_zero(c)) out.push_back({a->mask, std::move(c)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  int degree_ = 0;
  std::vector<Term> terms_;
};

template <class S>
FormExpr<S> wedge(const FormExpr<S>& a, const FormExpr<S>& b) {
  const int degree = a.degree() + b.degree();
  if (degree > kMaxGenerators) return FormExpr<S>(degree);
  std::vector<typename FormExpr<S>::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      const int sign = wedge_sign(x.mask, y.mask);
      if (sign == 0) continue;
      S c = x.coeff * y.coeff;
      if (sign < 0) c = -c;
      out.push_back({x.mask | y.mask, std::move(c)});
    }
  }
  return FormExpr<S>::from_terms(degree, std::move(out));
}

// omega ^ ... ^ omega (k factors). Degrees beyond the generator count give
// the zero form.
template <class S>
FormExpr<S> top_power(const FormExpr<S>& omega, int k) {
  if (omega.degree() % 2 != 0) throw std::invalid_argument("top_power needs an even-degree form");
  if (k < 0) throw std::invalid_argument("negative power");
  FormExpr<S> result = FormExpr<S>::scalar(S(1));
  for (int i = 0; i < k; ++i) result = wedge(result, omega);
  return result;
}

}  // namespace hlab
