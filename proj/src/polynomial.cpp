#include "gcx/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "gcx/error.hpp"

namespace gcx {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  if (sign(c) != 0) p.terms_.emplace(ExponentVec(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw Error(ErrorKind::IndexOutOfRange, "variable index out of range");
  ExponentVec e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, e, Rational(1));
}

Polynomial Polynomial::monomial(int nvars, ExponentVec exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars)
    throw Error(ErrorKind::DimensionMismatch, "exponent vector length mismatch");
  Polynomial p(nvars);
  if (sign(c) != 0) p.terms_.emplace(std::move(exps), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(ExponentVec(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (unsigned e : terms_.rbegin()->first) d += e;  // grlex max term
  return static_cast<int>(d);
}

int Polynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return terms_.empty() ? -1 : d;
}

void Polynomial::add_term(const ExponentVec& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "exponent vector length mismatch");
  if (sign(c) == 0) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (sign(it->second) == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_)
    throw Error(ErrorKind::DimensionMismatch, "polynomial arity mismatch");
  Polynomial r = *this;
  for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_)
    throw Error(ErrorKind::DimensionMismatch, "polynomial arity mismatch");
  Polynomial r = *this;
  for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_)
    throw Error(ErrorKind::DimensionMismatch, "polynomial arity mismatch");
  Polynomial r(nvars_);
  ExponentVec e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(nvars_);
  if (sign(c) == 0) return r;
  for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_)
    throw Error(ErrorKind::IndexOutOfRange, "derivative variable out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExponentVec d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "evaluation point arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

double Polynomial::evaluate(const std::vector<double>& point) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < nvars_; ++i) {
      double p = 1.0, base = point[i];
      unsigned k = e[i];
      while (k > 0) {
        if (k & 1u) p *= base;
        k >>= 1u;
        if (k) base *= base;
      }
      t *= p;
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::shifted(const std::vector<Rational>& shift) const {
  if (static_cast<int>(shift.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "shift arity mismatch");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Polynomial base = variable(nvars_, i) + constant(nvars_, shift[i]);
      term *= base.pow(e[i]);
    }
    r += term;
  }
  return r;
}

std::vector<int> Polynomial::used_vars() const {
  std::vector<bool> used(nvars_, false);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i)
      if (e[i] > 0) used[i] = true;
  }
  std::vector<int> out;
  for (int i = 0; i < nvars_; ++i)
    if (used[i]) out.push_back(i);
  return out;
}

Polynomial Polynomial::restricted(const std::vector<int>& vars) const {
  std::vector<int> pos(nvars_, -1);
  for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = static_cast<int>(i);
  Polynomial r(static_cast<int>(vars.size()));
  for (const auto& [e, c] : terms_) {
    ExponentVec out(vars.size(), 0);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (pos[i] < 0)
        throw Error(ErrorKind::IndexOutOfRange, "restriction drops a used variable");
      out[pos[i]] = e[i];
    }
    r.add_term(out, c);
  }
  return r;
}

Polynomial Polynomial::embedded(int nvars, const std::vector<int>& where) const {
  Polynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    ExponentVec out(nvars, 0);
    for (int i = 0; i < nvars_; ++i) out[where[i]] = e[i];
    r.add_term(out, c);
  }
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (sign(a) < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (sign(a) < 0 ? " - " : " + ");
      if (sign(a) < 0) a = -a;
    }
    bool has_vars = false;
    for (unsigned k : e) has_vars |= (k > 0);
    bool coef_one = (a == 1);
    if (!coef_one || !has_vars) os << rational_to_string(a);
    bool need_star = !coef_one || !has_vars;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const { return to_string(default_names(nvars_)); }

std::vector<Polynomial> gradient(const Polynomial& f) {
  std::vector<Polynomial> g;
  g.reserve(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) g.push_back(f.derivative(i));
  return g;
}

std::vector<std::vector<Polynomial>> euclidean_hessian(const Polynomial& f) {
  int n = f.nvars();
  std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i) {
    Polynomial fi = f.derivative(i);
    for (int j = i; j < n; ++j) {
      h[i][j] = fi.derivative(j);
      if (j != i) h[j][i] = h[i][j];
    }
  }
  return h;
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

// Rational content: gcd of numerators over lcm of denominators, sign of the
// grlex-leading coefficient.
Rational rational_content(const Polynomial& p) {
  if (p.is_zero()) return Rational(0);
  Integer num_gcd(0), den_lcm(1);
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (sign(p.terms().rbegin()->second) < 0) content = -content;
  return content;
}

int top_variable(const Polynomial& p) {
  auto used = p.used_vars();
  return used.empty() ? -1 : used.back();
}

// Coefficients of p viewed as a univariate in `var`, each a polynomial in the
// remaining variables (same ambient arity).
std::vector<Polynomial> coeffs_in(const Polynomial& p, int var) {
  int d = std::max(p.degree_in(var), 0);
  std::vector<Polynomial> out(d + 1, Polynomial(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    ExponentVec r = e;
    unsigned k = r[var];
    r[var] = 0;
    out[k].add_term(r, c);
  }
  return out;
}

Polynomial from_coeffs_in(const std::vector<Polynomial>& cs, int var, int nvars) {
  Polynomial r(nvars);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms()) {
      ExponentVec t = e;
      t[var] += static_cast<unsigned>(k);
      r.add_term(t, c);
    }
  }
  return r;
}

int degree_of(const std::vector<Polynomial>& cs) {
  for (int k = static_cast<int>(cs.size()) - 1; k >= 0; --k)
    if (!cs[k].is_zero()) return k;
  return -1;
}

Polynomial content_in(const Polynomial& p, int var) {
  Polynomial g(p.nvars());
  for (const Polynomial& c : coeffs_in(p, var)) {
    if (!c.is_zero()) g = poly_gcd(g, c);
  }
  return g;
}

// Exact division when the divisor is known to divide; used for primitive parts.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_constant()) return p.scaled(Rational(1) / q.constant_term());
  int var = top_variable(q);
  std::vector<Polynomial> pc = coeffs_in(p, var);
  std::vector<Polynomial> qc = coeffs_in(q, var);
  int dq = degree_of(qc);
  std::vector<Polynomial> out;
  int dp = degree_of(pc);
  if (dp < dq) throw Error(ErrorKind::Internal, "exact_divide degree underflow");
  out.assign(dp - dq + 1, Polynomial(p.nvars()));
  while ((dp = degree_of(pc)) >= dq) {
    Polynomial q_lead = qc[dq];
    Polynomial factor = exact_divide(pc[dp], q_lead);
    out[dp - dq] = factor;
    for (int k = 0; k <= dq; ++k) pc[dp - dq + k] -= factor * qc[k];
    if (!pc[dp].is_zero()) throw Error(ErrorKind::Internal, "exact_divide remainder");
  }
  if (degree_of(pc) >= 0) throw Error(ErrorKind::Internal, "exact_divide remainder");
  return from_coeffs_in(out, var, p.nvars());
}

// Divides out the polynomial content in `var` and the rational content.
Polynomial make_primitive(const Polynomial& p, int var) {
  if (p.is_zero()) return p;
  Polynomial cont = content_in(p, var);
  Polynomial pp = cont.is_constant() ? p : exact_divide(p, cont);
  Rational rc = rational_content(pp);
  return pp.scaled(Rational(1) / rc);
}

// Pseudo-remainder of a by b in `var` (classic lc-multiplier variant).
Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int var) {
  std::vector<Polynomial> rc = coeffs_in(a, var);
  std::vector<Polynomial> bc = coeffs_in(b, var);
  int db = degree_of(bc);
  const Polynomial& blead = bc[db];
  int dr = degree_of(rc);
  while (dr >= db) {
    Polynomial rlead = rc[dr];
    for (int k = 0; k < dr; ++k) rc[k] = rc[k] * blead;
    for (int k = 0; k < db; ++k) rc[dr - db + k] -= rlead * bc[k];
    rc[dr] = Polynomial(a.nvars());
    for (dr = dr - 1; dr >= 0 && rc[dr].is_zero(); --dr) {
    }
    rc.resize(dr + 1);
  }
  return from_coeffs_in(rc, var, a.nvars());
}

// gcd of primitive polynomials in variable `var` via a primitive PRS.
Polynomial primitive_gcd(Polynomial a, Polynomial b, int var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree_in(var) == 0) return Polynomial::constant(a.nvars(), Rational(1));
    Polynomial r = pseudo_rem(a, b, var);
    a = std::move(b);
    b = make_primitive(r, var);
  }
  return a;
}

}  // namespace

Polynomial poly_divide_exact(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw Error(ErrorKind::BadInput, "division by zero polynomial");
  if (p.is_zero()) return p;
  return exact_divide(p, q);
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return a;
  auto normalize = [](const Polynomial& p) {
    Rational c = rational_content(p);
    return p.scaled(Rational(1) / c);
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant())
    return Polynomial::constant(a.nvars(), Rational(1));

  int var = std::max(top_variable(a), top_variable(b));
  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial pa = exact_divide(a, ca);
  Polynomial pb = exact_divide(b, cb);
  pa = normalize(pa);
  pb = normalize(pb);
  Polynomial g = primitive_gcd(pa, pb, var) * poly_gcd(ca, cb);
  return normalize(g);
}

}  // namespace gcx
