#include "gcx/ratexpr.hpp"

#include <cctype>

#include "gcx/error.hpp"
#include "gcx/parser.hpp"

namespace gcx {

RatExpr::RatExpr(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.nvars(), Rational(1))) {}

RatExpr::RatExpr(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::BadInput, "zero denominator");
  canonicalize();
}

void RatExpr::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.nvars(), Rational(1));
    return;
  }
  if (den_.is_constant()) {
    Rational d = den_.constant_term();
    if (d != 1) {
      num_ = num_.scaled(Rational(1) / d);
      den_ = Polynomial::constant(num_.nvars(), Rational(1));
    }
    return;
  }
  Polynomial g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = poly_divide_exact(num_, g);
    den_ = poly_divide_exact(den_, g);
  }
  if (den_.is_constant()) {
    Rational d = den_.constant_term();
    num_ = num_.scaled(Rational(1) / d);
    den_ = Polynomial::constant(num_.nvars(), Rational(1));
    return;
  }
  // sign-normalize: positive grlex-leading coefficient on the denominator
  const Rational& lead = den_.terms().rbegin()->second;
  if (sign(lead) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatExpr RatExpr::operator-() const {
  RatExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RatExpr RatExpr::operator+(const RatExpr& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) return RatExpr(num_ + rhs.num_, den_);
  return RatExpr(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatExpr RatExpr::operator-(const RatExpr& rhs) const { return *this + (-rhs); }

RatExpr RatExpr::operator*(const RatExpr& rhs) const {
  if (is_zero() || rhs.is_zero()) return zero(nvars());
  return RatExpr(num_ * rhs.num_, den_ * rhs.den_);
}

RatExpr RatExpr::operator/(const RatExpr& rhs) const {
  if (rhs.is_zero()) throw Error(ErrorKind::BadInput, "division by zero expression");
  if (is_zero()) return zero(nvars());
  return RatExpr(num_ * rhs.den_, den_ * rhs.num_);
}

RatExpr RatExpr::derivative(int var) const {
  if (is_polynomial()) return RatExpr(num_.derivative(var));
  // (n/d)' = (n'd - nd')/d^2
  Polynomial n1 = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return RatExpr(std::move(n1), den_ * den_);
}

Rational RatExpr::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (sign(d) == 0)
    throw Error(ErrorKind::PoleAtPoint, "denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

double RatExpr::evaluate(const std::vector<double>& point) const {
  return num_.evaluate(point) / den_.evaluate(point);
}

double RatExpr::denominator_at(const std::vector<double>& point) const {
  return den_.evaluate(point);
}

std::string RatExpr::to_string(const std::vector<std::string>& names) const {
  if (is_polynomial()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

RatExpr parse_ratexpr(const std::string& text,
                      const std::vector<std::string>& variable_order) {
  // split at a top-level '/': "(num)/(den)" or a plain polynomial
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      // distinguish from a rational literal "p/q": literals have digits around
      std::size_t l = i;
      while (l > 0 && std::isspace(static_cast<unsigned char>(text[l - 1]))) --l;
      if (l > 0 && text[l - 1] == ')') {
        Polynomial num = parse_expression(text.substr(0, i), variable_order);
        Polynomial den = parse_expression(text.substr(i + 1), variable_order);
        return RatExpr(std::move(num), std::move(den));
      }
    }
  }
  return RatExpr(parse_expression(text, variable_order));
}

}  // namespace gcx
