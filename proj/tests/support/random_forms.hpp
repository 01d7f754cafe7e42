#pragma once

#include <random>
#include <vector>

#include "hlab/forms.hpp"
#include "hlab/liealg.hpp"

namespace hlab::testing {

inline GeneratorMask random_mask(std::mt19937_64& rng, int generators, int degree) {
  std::vector<int> pool(generators);
  for (int i = 0; i < generators; ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  GeneratorMask m = 0;
  for (int i = 0; i < degree; ++i) m |= generator_bit(pool[i]);
  return m;
}

// Small integer coefficients, at most quadratic in r.
inline Poly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  return Poly({Rational(c(rng)), Rational(c(rng)), Rational(c(rng))});
}

inline FormExpr<Poly> random_form(std::mt19937_64& rng, const StructureAlgebra& alg, int degree, int terms = 4) {
  std::vector<FormExpr<Poly>::Term> out;
  for (int k = 0; k < terms; ++k) out.push_back({random_mask(rng, alg.size(), degree), random_poly(rng)});
  return FormExpr<Poly>::from_terms(degree, std::move(out));
}

}  // namespace hlab::testing
