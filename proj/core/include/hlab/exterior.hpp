#pragma once

// Exterior derivative over a StructureAlgebra: generators are differentiated
// through the structure-constant table, coefficients (functions of r only)
// through ScalarTraits::radial_derivative.

#include <stdexcept>
#include <string>
#include <vector>

#include "hlab/forms.hpp"
#include "hlab/liealg.hpp"

namespace hlab {

namespace detail {

// d of the monomial e^mask, as terms appended to `out` scaled by `coeff`.
template <class S>
void differentiate_monomial(GeneratorMask mask, const S& coeff, const StructureAlgebra& alg,
                            std::vector<typename FormExpr<S>::Term>& out) {
  using Traits = ScalarTraits<S>;
  GeneratorMask prefix = 0;
  int position = 0;
  for (GeneratorMask rest = mask; rest; rest &= rest - 1, ++position) {
    const int i = std::countr_zero(rest);
    const GeneratorMask suffix = rest & (rest - 1);
    // d(e^{i1} ^ ... ^ e^{ik}) = sum_k (-1)^(k-1) e^{i1} ^ ... ^ d e^{ik} ^ ...
    const int leibniz = (position & 1) ? -1 : 1;
    for (const auto& t : alg.derivative_terms(i)) {
      const int s1 = wedge_sign(prefix, t.mask);
      if (s1 == 0) continue;
      const int s2 = wedge_sign(prefix | t.mask, suffix);
      if (s2 == 0) continue;
      S c = Traits::from_rational(t.coeff, t.value) * coeff;
      if (leibniz * s1 * s2 < 0) c = -c;
      out.push_back({prefix | t.mask | suffix, std::move(c)});
    }
    prefix |= generator_bit(i);
  }
}

}  // namespace detail

// d(f e^I) = f'(r) dr ^ e^I + f d(e^I).
template <class S>
FormExpr<S> d(const FormExpr<S>& form, const StructureAlgebra& alg) {
  using Traits = ScalarTraits<S>;
  std::vector<typename FormExpr<S>::Term> out;
  const GeneratorMask radial = generator_bit(0);
  for (const auto& t : form.terms()) {
    if (!(t.mask & radial)) {
      S df = Traits::radial_derivative(t.coeff);
      if (!Traits::is_zero(df)) {
        // dr is index 0, so dr ^ e^I is already sorted.
        out.push_back({t.mask | radial, std::move(df)});
      }
    }
    detail::differentiate_monomial(t.mask, t.coeff, alg, out);
  }
  return FormExpr<S>::from_terms(form.degree() + 1, std::move(out));
}

enum class BasisDirection { CglpToEta, EtaToCglp };

// n = 1 eta coframe: index 0 dr, 1..7 eta_1..eta_7, 8 the vertical generator.
inline std::string eta_generator_name(int index) {
  if (index == 0) return "dr";
  if (index >= 1 && index <= 7) return "eta" + std::to_string(index);
  return "v" + std::to_string(index - 7);
}

// Rewrites a form between the (lambda, nu, sigma, Sigma) coframe and the
// eta coframe via lambda = 2 eta_1, nu_1 = eta_3, nu_2 = eta_2,
// Sigma_i = sqrt2 eta_{3+i}, sigma_i = sqrt2 eta_{5+i}. Only defined for n = 1.
// Exact scalars reject terms needing an odd power of sqrt(2).
template <class S>
FormExpr<S> translate_basis(const FormExpr<S>& form, BasisDirection direction, int n) {
  if (n != 1) throw std::invalid_argument("the eta dictionary is only defined for n = 1");
  using Traits = ScalarTraits<S>;
  // cglp index -> (eta index, factor numerator exponent of 2, sqrt2 count)
  struct Map {
    int target;
    int twos;
    int sqrt2s;
  };
  static constexpr Map kToEta[9] = {{0, 0, 0}, {1, 1, 0}, {3, 0, 0}, {2, 0, 0}, {6, 0, 1},
                                    {7, 0, 1}, {4, 0, 1}, {5, 0, 1}, {8, 0, 0}};
  Map table[9];
  if (direction == BasisDirection::CglpToEta) {
    std::copy(std::begin(kToEta), std::end(kToEta), table);
  } else {
    for (int i = 0; i < 9; ++i) table[kToEta[i].target] = {i, -kToEta[i].twos, -kToEta[i].sqrt2s};
  }
  std::vector<typename FormExpr<S>::Term> out;
  for (const auto& t : form.terms()) {
    if (t.mask >> 9) throw std::invalid_argument("form uses generators outside the n = 1 coframe");
    GeneratorMask target = 0;
    int sign = 1;
    int sqrt2s = 0;
    for (int i : mask_indices(t.mask)) {
      const Map& m = table[i];
      sign *= wedge_sign(target, generator_bit(m.target));
      target |= generator_bit(m.target);
      sqrt2s += 2 * m.twos + m.sqrt2s;
    }
    S c = Traits::sqrt2_power(sqrt2s) * t.coeff;
    if (sign < 0) c = -c;
    out.push_back({target, std::move(c)});
  }
  return FormExpr<S>::from_terms(form.degree(), std::move(out));
}

}  // namespace hlab
