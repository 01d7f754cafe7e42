#include "hlab/liealg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hlab {

namespace {

constexpr int kMaxN = 6;  // 4n + 4 + n^2 <= 64

struct Complex {
  Rational re;
  Rational im;
};

// Complex-coefficient form over the real generators, keyed by mask.
using ComplexForm = std::map<GeneratorMask, Complex, bool (*)(GeneratorMask, GeneratorMask)>;

ComplexForm empty_complex_form() {
  return ComplexForm([](GeneratorMask a, GeneratorMask b) { return lex_less(a, b); });
}

void add_term(ComplexForm& f, GeneratorMask mask, const Rational& re, const Rational& im) {
  auto it = f.try_emplace(mask, Complex{Rational(0), Rational(0)}).first;
  it->second.re += re;
  it->second.im += im;
}

class Layout {
 public:
  explicit Layout(int n) : n_(n) {}
  int lambda() const { return 1; }
  int nu(int part) const { return 2 + part; }
  int sigma(int beta, int part) const { return 4 + 2 * (beta - 1) + part; }
  int big_sigma(int beta, int part) const { return 4 + 2 * n_ + 2 * (beta - 1) + part; }
  int diagonal(int beta) const { return 4 + 4 * n_ + (beta - 1); }
  int off_diagonal(int beta, int gamma, int part) const {
    int pair = 0;
    for (int b = 1; b <= n_; ++b) {
      for (int c = b + 1; c <= n_; ++c) {
        if (b == beta && c == gamma) return 4 + 5 * n_ + 2 * pair + part;
        ++pair;
      }
    }
    throw std::logic_error("bad off-diagonal pair");
  }
  int size() const { return 4 + 4 * n_ + n_ * n_; }

  std::vector<GeneratorIndex> generators() const {
    std::vector<GeneratorIndex> g(size());
    g[0] = {GeneratorKind::Radial};
    g[lambda()] = {GeneratorKind::Lambda};
    g[nu(0)] = {GeneratorKind::Nu1};
    g[nu(1)] = {GeneratorKind::Nu2};
    for (int b = 1; b <= n_; ++b) {
      g[sigma(b, 0)] = {GeneratorKind::Sigma1, b};
      g[sigma(b, 1)] = {GeneratorKind::Sigma2, b};
      g[big_sigma(b, 0)] = {GeneratorKind::BigSigma1, b};
      g[big_sigma(b, 1)] = {GeneratorKind::BigSigma2, b};
    }
    for (int v = 4 + 4 * n_; v < size(); ++v) {
      g[v] = {GeneratorKind::Vertical, 0, v - (4 + 4 * n_) + 1};
    }
    return g;
  }

  // L_A^B as a complex combination of real generators. Matrix indices:
  // 0 -> "1", 1 -> "2", 1 + beta -> beta.
  std::vector<std::pair<int, Complex>> entry(int a, int b) const {
    using Entry = std::vector<std::pair<int, Complex>>;
    const Rational half(1, 2);
    if (a == b) {
      if (a >= 2) return Entry{{diagonal(a - 1), {1, 0}}};
      // L_1^1 = (lambda - S)/2, L_2^2 = (-lambda - S)/2, S = sum_b L_b^b.
      Entry e{{lambda(), {a == 0 ? half : Rational(-half), 0}}};
      for (int beta = 1; beta <= n_; ++beta) e.push_back({diagonal(beta), {-half, 0}});
      return e;
    }
    const bool conj = a > b;
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    int re = 0;
    int im = 0;
    if (lo == 0 && hi == 1) {
      re = nu(0), im = nu(1);
    } else if (lo == 0) {
      re = sigma(hi - 1, 0), im = sigma(hi - 1, 1);
    } else if (lo == 1) {
      re = big_sigma(hi - 1, 0), im = big_sigma(hi - 1, 1);
    } else {
      re = off_diagonal(lo - 1, hi - 1, 0), im = off_diagonal(lo - 1, hi - 1, 1);
    }
    return Entry{{re, {1, 0}}, {im, {0, conj ? -1 : 1}}};
  }

  // dL_A^B = i sum_C L_A^C ^ L_C^B.
  ComplexForm maurer_cartan(int a, int b) const {
    ComplexForm out = empty_complex_form();
    for (int c = 0; c < n_ + 2; ++c) {
      for (const auto& [g1, z1] : entry(a, c)) {
        for (const auto& [g2, z2] : entry(c, b)) {
          const int sign = wedge_sign(generator_bit(g1), generator_bit(g2));
          if (sign == 0) continue;
          // i * z1 * z2
          const Rational pr = z1.re * z2.re - z1.im * z2.im;
          const Rational pi = z1.re * z2.im + z1.im * z2.re;
          add_term(out, generator_bit(g1) | generator_bit(g2), Rational(-pi * sign),
                   Rational(pr * sign));
        }
      }
    }
    return out;
  }

 private:
  int n_;
};

FormExpr<Rational> real_part(const ComplexForm& f) {
  std::vector<FormExpr<Rational>::Term> t;
  for (const auto& [m, z] : f) t.push_back({m, z.re});
  return FormExpr<Rational>::from_terms(2, std::move(t));
}

FormExpr<Rational> imag_part(const ComplexForm& f) {
  std::vector<FormExpr<Rational>::Term> t;
  for (const auto& [m, z] : f) t.push_back({m, z.im});
  return FormExpr<Rational>::from_terms(2, std::move(t));
}

FormExpr<Rational> require_real(const ComplexForm& f, const char* what) {
  if (!imag_part(f).is_zero()) throw std::logic_error(std::string("non-real derivative for ") + what);
  return real_part(f);
}

FormExpr<Rational> difference(const ComplexForm& a, const ComplexForm& b) {
  ComplexForm out = a;
  for (const auto& [m, z] : b) add_term(out, m, Rational(-z.re), Rational(-z.im));
  return require_real(out, "lambda");
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > kMaxN) throw std::invalid_argument("n > 6 exceeds the 64-generator coframe limit");
}

}  // namespace

std::string generator_name(const GeneratorIndex& g) {
  const std::string b = std::to_string(g.beta);
  switch (g.kind) {
    case GeneratorKind::Radial: return "dr";
    case GeneratorKind::Lambda: return "lambda";
    case GeneratorKind::Nu1: return "nu1";
    case GeneratorKind::Nu2: return "nu2";
    case GeneratorKind::Sigma1: return "sigma1_" + b;
    case GeneratorKind::Sigma2: return "sigma2_" + b;
    case GeneratorKind::BigSigma1: return "Sigma1_" + b;
    case GeneratorKind::BigSigma2: return "Sigma2_" + b;
    case GeneratorKind::Vertical: return "v" + std::to_string(g.vertical);
  }
  return "?";
}

StructureAlgebra::StructureAlgebra(int n, std::vector<GeneratorIndex> generators,
                                   std::vector<FormExpr<Rational>> derivatives)
    : n_(n), generators_(std::move(generators)), derivatives_(std::move(derivatives)) {
  const int N = size();
  if (N == 0 || N > kMaxGenerators) throw std::invalid_argument("generator count out of range");
  if (static_cast<int>(derivatives_.size()) != N) throw std::invalid_argument("derivative table size");
  if (!hlab::is_radial(generators_[0])) throw std::invalid_argument("generator 0 must be radial");
  frame_size_ = N;
  for (int i = 1; i < N; ++i) {
    if (hlab::is_radial(generators_[i])) throw std::invalid_argument("only one radial generator");
    if (hlab::is_vertical(generators_[i])) {
      if (frame_size_ == N) frame_size_ = i;
    } else if (frame_size_ != N) {
      throw std::invalid_argument("vertical generators must come last");
    }
  }
  if (!derivatives_[0].is_zero()) throw std::invalid_argument("d(dr) must vanish");

  const GeneratorMask radial = generator_bit(0);
  terms_.resize(N);
  brackets_.assign(static_cast<std::size_t>(N) * N, {});
  for (int k = 0; k < N; ++k) {
    const auto& dk = derivatives_[k];
    if (!dk.is_zero() && dk.degree() != 2) throw std::invalid_argument("d e^k must be a 2-form");
    for (const auto& t : dk.terms()) {
      if (t.mask & radial) throw std::invalid_argument("structure constants cannot involve dr");
      if (N < kMaxGenerators && (t.mask >> N)) throw std::invalid_argument("generator index out of range");
      terms_[k].push_back({t.mask, t.coeff, t.coeff.get_d()});
      const auto ij = mask_indices(t.mask);
      // d e^k = -sum_{i<j} c^k_ij e^i ^ e^j
      brackets_[ij[0] * N + ij[1]].push_back({k, Rational(-t.coeff)});
      brackets_[ij[1] * N + ij[0]].push_back({k, t.coeff});
    }
  }
}

int StructureAlgebra::index_of(const GeneratorIndex& g) const {
  auto it = std::find(generators_.begin(), generators_.end(), g);
  if (it == generators_.end()) throw std::out_of_range("unknown generator " + generator_name(g));
  return static_cast<int>(it - generators_.begin());
}

StructureAlgebra build_algebra(int n) {
  check_n(n);
  const Layout layout(n);
  std::vector<FormExpr<Rational>> d(layout.size(), FormExpr<Rational>(2));
  d[layout.lambda()] = difference(layout.maurer_cartan(0, 0), layout.maurer_cartan(1, 1));
  const auto dnu = layout.maurer_cartan(0, 1);
  d[layout.nu(0)] = real_part(dnu);
  d[layout.nu(1)] = imag_part(dnu);
  for (int b = 1; b <= n; ++b) {
    const auto ds = layout.maurer_cartan(0, 1 + b);
    d[layout.sigma(b, 0)] = real_part(ds);
    d[layout.sigma(b, 1)] = imag_part(ds);
    const auto dS = layout.maurer_cartan(1, 1 + b);
    d[layout.big_sigma(b, 0)] = real_part(dS);
    d[layout.big_sigma(b, 1)] = imag_part(dS);
    d[layout.diagonal(b)] = require_real(layout.maurer_cartan(1 + b, 1 + b), "diagonal");
    for (int c = b + 1; c <= n; ++c) {
      const auto dv = layout.maurer_cartan(1 + b, 1 + c);
      d[layout.off_diagonal(b, c, 0)] = real_part(dv);
      d[layout.off_diagonal(b, c, 1)] = imag_part(dv);
    }
  }
  d[0] = FormExpr<Rational>(2);
  return StructureAlgebra(n, layout.generators(), std::move(d));
}

StructureAlgebra abelian_algebra(int n) {
  check_n(n);
  const Layout layout(n);
  return StructureAlgebra(n, layout.generators(),
                          std::vector<FormExpr<Rational>>(layout.size(), FormExpr<Rational>(2)));
}

std::vector<FormExpr<Rational>> exterior_derivative_table(const StructureAlgebra& alg) {
  std::vector<FormExpr<Rational>> out;
  out.reserve(alg.size());
  for (int k = 0; k < alg.size(); ++k) out.push_back(alg.exterior_derivative(k));
  return out;
}

Rational jacobi_residual(const StructureAlgebra& alg) {
  const int N = alg.size();
  Rational worst = 0;
  std::vector<Rational> acc(N);
  auto add_nested = [&](int i, int j, int k) {
    // [[e_i, e_j], e_k]
    for (const auto& [m, c] : alg.bracket(i, j)) {
      for (const auto& [l, c2] : alg.bracket(m, k)) acc[l] += c * c2;
    }
  };
  for (int i = 1; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      for (int k = j + 1; k < N; ++k) {
        std::fill(acc.begin(), acc.end(), Rational(0));
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (const auto& x : acc) {
          if (abs(x) > worst) worst = abs(x);
        }
      }
    }
  }
  return worst;
}

bool is_reductive(const StructureAlgebra& alg) {
  const int N = alg.size();
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      for (const auto& e : alg.bracket(i, j)) {
        if (sgn(e.coeff) == 0) continue;
        if (i == 0 || j == 0) return false;
        const bool vi = alg.is_vertical(i);
        const bool vj = alg.is_vertical(j);
        if (vi && vj && !alg.is_vertical(e.k)) return false;
        if (vi != vj && alg.is_vertical(e.k)) return false;
      }
    }
  }
  return true;
}

nlohmann::ordered_json dump_algebra(const StructureAlgebra& alg) {
  nlohmann::ordered_json out;
  out["n"] = alg.n();
  out["generators"] = nlohmann::ordered_json::array();
  for (int i = 0; i < alg.size(); ++i) out["generators"].push_back(alg.name(i));
  auto& table = out["derivatives"] = nlohmann::ordered_json::array();
  for (int k = 0; k < alg.size(); ++k) {
    nlohmann::ordered_json row;
    row["generator"] = alg.name(k);
    row["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : alg.exterior_derivative(k).terms()) {
      const auto ij = mask_indices(t.mask);
      row["terms"].push_back({{"wedge", {alg.name(ij[0]), alg.name(ij[1])}},
                              {"coeff", t.coeff.get_str()}});
    }
    table.push_back(std::move(row));
  }
  return out;
}

}  // namespace hlab
