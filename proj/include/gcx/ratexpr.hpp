#pragma once

#include <string>
#include <vector>

#include "gcx/polynomial.hpp"

namespace gcx {

/// Rational-function expression num/den, closed under +,-,*,/ and partial
/// derivatives. Kept canonical: gcd(num, den) = 1, den != 0, and the
/// grlex-leading coefficient of den is positive.
class RatExpr {
 public:
  RatExpr() : num_(0), den_(Polynomial::constant(0, Rational(1))) {}
  explicit RatExpr(Polynomial num);
  RatExpr(Polynomial num, Polynomial den);

  static RatExpr constant(int nvars, const Rational& c) {
    return RatExpr(Polynomial::constant(nvars, c));
  }
  static RatExpr zero(int nvars) { return RatExpr(Polynomial(nvars)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  int nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatExpr operator-() const;
  RatExpr operator+(const RatExpr& rhs) const;
  RatExpr operator-(const RatExpr& rhs) const;
  RatExpr operator*(const RatExpr& rhs) const;
  RatExpr operator/(const RatExpr& rhs) const;
  RatExpr& operator+=(const RatExpr& rhs) { return *this = *this + rhs; }
  RatExpr& operator-=(const RatExpr& rhs) { return *this = *this - rhs; }
  RatExpr& operator*=(const RatExpr& rhs) { return *this = *this * rhs; }

  bool equals(const RatExpr& rhs) const { return (*this - rhs).is_zero(); }

  RatExpr derivative(int var) const;

  /// Exact value; throws PoleAtPoint when the denominator vanishes.
  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;
  double denominator_at(const std::vector<double>& point) const;

  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const { return to_string(default_names(nvars())); }

 private:
  void canonicalize();

  Polynomial num_, den_;
};

/// Parses `expr` or `(expr)/(expr)`; the polynomial pieces use the
/// parse_expression grammar.
RatExpr parse_ratexpr(const std::string& text,
                      const std::vector<std::string>& variable_order);

}  // namespace gcx
