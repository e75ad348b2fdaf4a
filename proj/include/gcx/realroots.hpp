#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcx/polynomial.hpp"

namespace gcx {

/// Dense univariate polynomial over Q; coeffs[k] multiplies x^k, trailing
/// zeros trimmed (zero polynomial = empty vector).
struct UniPoly {
  std::vector<Rational> coeffs;

  static UniPoly from_polynomial(const Polynomial& p);  // NotUnivariate if >1 var
  Polynomial to_polynomial() const;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const Rational& leading() const { return coeffs.back(); }
  void trim();

  UniPoly derivative() const;
  Rational evaluate(const Rational& x) const;
  UniPoly operator+(const UniPoly& rhs) const;
  UniPoly operator-(const UniPoly& rhs) const;
  UniPoly operator*(const UniPoly& rhs) const;
  UniPoly scaled(const Rational& c) const;
  bool operator==(const UniPoly& rhs) const { return coeffs == rhs.coeffs; }
};

/// Quotient/remainder over Q.
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);

/// Monic gcd over Q (primitive integer PRS internally).
UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);

struct SquareFreeDecomposition {
  Rational unit;                                  // leading constant
  std::vector<std::pair<UniPoly, int>> factors;   // (monic square-free S_m, m)
};

/// Yun's gcd cascade. Factors are monic, pairwise coprime, square-free;
/// unit * prod S_m^m reproduces the input. ZeroPolynomial on b == 0.
SquareFreeDecomposition squarefree_decompose(const UniPoly& b);

/// Exact bound with all real roots in (-B, B): Cauchy, 1 + max|a_i|/|a_d|.
Rational cauchy_root_bound(const UniPoly& b);

/// Signed-remainder (Sturm) chain of primitive integer polynomials; positive
/// scalings only, so sign variations match the classical chain.
struct SturmChain {
  std::vector<std::vector<Integer>> elems;

  int variations_at(const Rational& x) const;
  int variations_at_neg_inf() const;
  int variations_at_pos_inf() const;
};
SturmChain sturm_chain(const UniPoly& b);

/// Number of distinct real roots in (lo, hi]; whole line by default.
/// ZeroPolynomial on b == 0.
int count_real_roots(const UniPoly& b);
int count_real_roots(const UniPoly& b, const Rational& lo, const Rational& hi);

struct RootRecord {
  Rational lo, hi;   // isolating interval (lo, hi]
  int multiplicity;
};

/// One record per distinct real root, sorted, intervals pairwise disjoint;
/// multiplicity read off the unique square-free factor vanishing there.
std::vector<RootRecord> isolate_real_roots(const UniPoly& b);

/// Summary used by the univariate classifier and the density samplers.
struct RootSummary {
  int distinct_roots;
  bool all_odd;          // every multiplicity odd (true when no roots)
  int single_root_mult;  // multiplicity when distinct_roots == 1, else 0
};
RootSummary analyze_roots(const UniPoly& b);

/// Fast path: distinct real-root count over R via a certified double filter
/// (falls back to the exact chain whenever a sign is uncertain). Exact.
int count_real_roots_filtered(const std::vector<double>& coeffs);

/// Certified double-precision count. `input_rel_err` widens each input
/// coefficient ball (0 when the doubles are the exact values). Returns
/// nullopt when some needed sign cannot be certified.
std::optional<int> try_count_real_roots_double(const std::vector<double>& coeffs,
                                               double input_rel_err = 0.0);

}  // namespace gcx
