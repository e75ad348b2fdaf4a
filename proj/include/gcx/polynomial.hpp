#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

using ExponentVec = std::vector<unsigned>;

/// Graded lexicographic order on exponent vectors of equal length.
struct GrlexLess {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: no stored coefficient is zero; every exponent vector has
/// length nvars(); the zero polynomial is an empty term map.
class Polynomial {
 public:
  using TermMap = std::map<ExponentVec, Rational, GrlexLess>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index);
  static Polynomial monomial(int nvars, ExponentVec exps, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const ExponentVec& exps, const Rational& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial& operator+=(const Polynomial& rhs) { return *this = *this + rhs; }
  Polynomial& operator-=(const Polynomial& rhs) { return *this = *this - rhs; }
  Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;
  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

  Polynomial derivative(int var) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;

  /// Substitutes x_i -> x_i + shift[i]; exact expansion.
  Polynomial shifted(const std::vector<Rational>& shift) const;

  std::vector<int> used_vars() const;

  /// Repackages the polynomial over the variable subset `vars` (which must
  /// cover every used variable); position i of `vars` becomes variable i.
  Polynomial restricted(const std::vector<int>& vars) const;

  /// Embeds into an `nvars`-variable ring, old variable i -> `where[i]`.
  Polynomial embedded(int nvars, const std::vector<int>& where) const;

  /// Canonical text form: graded-lex descending, `^` exponents, explicit `*`.
  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;  // names x1..xn

 private:
  int nvars_;
  TermMap terms_;
};

std::vector<Polynomial> gradient(const Polynomial& f);
std::vector<std::vector<Polynomial>> euclidean_hessian(const Polynomial& f);

/// Default variable names x1..xn.
std::vector<std::string> default_names(int nvars);

/// gcd over Q[x1..xn]; result is primitive with positive leading coefficient
/// (grlex-leading), and gcd(f, 0) = normalized f. Content/primitive-part
/// recursion on the last used variable.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Exact quotient p/q; q must divide p (Internal error otherwise).
Polynomial poly_divide_exact(const Polynomial& p, const Polynomial& q);

}  // namespace gcx
