#pragma once

// Real structure constants of su(n+2) in the coframe adapted to the orbit
// SU(n+2)/S(U(n) x U(1)):
//
//   index 0                 dr (radial, closed)
//   index 1                 lambda = L_1^1 - L_2^2
//   index 2, 3              nu_1, nu_2          (L_1^2 = nu_1 + i nu_2)
//   index 4 + 2(b-1), +1    sigma_{1b}, sigma_{2b}  (L_1^b)
//   index 4 + 2n + 2(b-1),+1  Sigma_{1b}, Sigma_{2b}  (L_2^b)
//   index 4n + 4 ...        vertical: L_b^b (b = 1..n), then Re/Im L_b^c (b < c)
//
// The complex left-invariant forms satisfy dL_A^B = i L_A^C ^ L_C^B with
// conj(L_A^B) = L_B^A.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlab/forms.hpp"
#include "hlab/scalar.hpp"

namespace hlab {

enum class GeneratorKind : std::uint8_t {
  Radial,
  Lambda,
  Nu1,
  Nu2,
  Sigma1,
  Sigma2,
  BigSigma1,
  BigSigma2,
  Vertical,
};

struct GeneratorIndex {
  GeneratorKind kind = GeneratorKind::Radial;
  int beta = 0;      // 1..n for the sigma / Sigma kinds
  int vertical = 0;  // 1..n^2 for Vertical

  friend bool operator==(const GeneratorIndex&, const GeneratorIndex&) = default;
};

inline bool is_vertical(const GeneratorIndex& g) { return g.kind == GeneratorKind::Vertical; }
inline bool is_radial(const GeneratorIndex& g) { return g.kind == GeneratorKind::Radial; }
inline bool is_horizontal(const GeneratorIndex& g) { return !is_vertical(g) && !is_radial(g); }

std::string generator_name(const GeneratorIndex& g);

// One term of d e^k: coefficient * e^i ^ e^j with i < j (mask has two bits).
struct DerivativeTerm {
  GeneratorMask mask;
  Rational coeff;
  double value;
};

// Sparse structure constants c^k_{ij}, [e_i, e_j] = c^k_{ij} e_k.
struct BracketEntry {
  int k;
  Rational coeff;
};
using SparseBracket = std::vector<BracketEntry>;

class StructureAlgebra {
 public:
  // `generators` must start with the radial generator and list vertical
  // generators last. `derivatives[k]` is the 2-form d e^k; the radial entry
  // must be zero.
  StructureAlgebra(int n, std::vector<GeneratorIndex> generators,
                   std::vector<FormExpr<Rational>> derivatives);

  int n() const { return n_; }
  int size() const { return static_cast<int>(generators_.size()); }
  // Radial plus horizontal generators; these carry the orthonormal frame.
  int frame_size() const { return frame_size_; }
  int horizontal_count() const { return frame_size_ - 1; }
  int vertical_count() const { return size() - frame_size_; }

  const GeneratorIndex& generator(int i) const { return generators_.at(i); }
  const std::vector<GeneratorIndex>& generators() const { return generators_; }
  int index_of(const GeneratorIndex& g) const;
  std::string name(int i) const { return generator_name(generator(i)); }
  bool is_vertical(int i) const { return i >= frame_size_; }

  const FormExpr<Rational>& exterior_derivative(int k) const { return derivatives_.at(k); }
  const std::vector<DerivativeTerm>& derivative_terms(int k) const { return terms_.at(k); }

  // c^k_{ij} for all k; antisymmetric in (i, j) by construction.
  const SparseBracket& bracket(int i, int j) const { return brackets_[i * size() + j]; }

 private:
  int n_;
  int frame_size_ = 0;
  std::vector<GeneratorIndex> generators_;
  std::vector<FormExpr<Rational>> derivatives_;
  std::vector<std::vector<DerivativeTerm>> terms_;
  std::vector<SparseBracket> brackets_;
};

// su(n+2) from the complex Maurer-Cartan relations. Throws
// std::invalid_argument for n < 1 or n > 6 (bitmask limit).
StructureAlgebra build_algebra(int n);

// Same generator layout with all structure constants zero.
StructureAlgebra abelian_algebra(int n);

// d e^k for every generator, d(dr) = 0.
std::vector<FormExpr<Rational>> exterior_derivative_table(const StructureAlgebra& alg);

// Largest |Jacobiator component| over all generator triples; 0 for a Lie algebra.
Rational jacobi_residual(const StructureAlgebra& alg);

// True iff [V,V] is vertical and [V,H] is horizontal.
bool is_reductive(const StructureAlgebra& alg);

// Deterministic listing of d e^k, sorted by generator then monomial.
nlohmann::ordered_json dump_algebra(const StructureAlgebra& alg);

}  // namespace hlab
