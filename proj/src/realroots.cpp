#include "gcx/realroots.hpp"

#include <algorithm>
#include <cmath>

#include "gcx/error.hpp"

namespace gcx {

UniPoly UniPoly::from_polynomial(const Polynomial& p) {
  auto used = p.used_vars();
  if (used.size() > 1)
    throw Error(ErrorKind::NotUnivariate, "polynomial uses more than one variable");
  UniPoly u;
  if (p.is_zero()) return u;
  int var = used.empty() ? -1 : used[0];
  int deg = used.empty() ? 0 : p.degree_in(var);
  u.coeffs.assign(deg + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) u.coeffs[var < 0 ? 0 : e[var]] = c;
  u.trim();
  return u;
}

Polynomial UniPoly::to_polynomial() const {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    p.add_term({static_cast<unsigned>(k)}, coeffs[k]);
  return p;
}

void UniPoly::trim() {
  while (!coeffs.empty() && sign(coeffs.back()) == 0) coeffs.pop_back();
}

UniPoly UniPoly::derivative() const {
  UniPoly d;
  if (coeffs.size() <= 1) return d;
  d.coeffs.resize(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d.coeffs[k - 1] = coeffs[k] * Rational(static_cast<long>(k));
  d.trim();
  return d;
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
  UniPoly r;
  r.coeffs.resize(std::max(coeffs.size(), rhs.coeffs.size()), Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) r.coeffs[k] += coeffs[k];
  for (std::size_t k = 0; k < rhs.coeffs.size(); ++k) r.coeffs[k] += rhs.coeffs[k];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const {
  UniPoly neg = rhs.scaled(Rational(-1));
  return *this + neg;
}

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
  UniPoly r;
  if (is_zero() || rhs.is_zero()) return r;
  r.coeffs.assign(coeffs.size() + rhs.coeffs.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs.size(); ++j)
      r.coeffs[i + j] += coeffs[i] * rhs.coeffs[j];
  r.trim();
  return r;
}

UniPoly UniPoly::scaled(const Rational& c) const {
  UniPoly r;
  if (sign(c) == 0) return r;
  r.coeffs.resize(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) r.coeffs[k] = coeffs[k] * c;
  return r;
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  UniPoly rem = a, quot;
  int db = b.degree();
  if (rem.degree() >= db) quot.coeffs.assign(rem.degree() - db + 1, Rational(0));
  while (rem.degree() >= db) {
    int shift = rem.degree() - db;
    Rational f = rem.leading() / b.leading();
    quot.coeffs[shift] = f;
    for (int k = 0; k <= db; ++k) rem.coeffs[shift + k] -= f * b.coeffs[k];
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

namespace {

using IntPoly = std::vector<Integer>;  // dense, trailing zeros trimmed

void int_trim(IntPoly& p) {
  while (!p.empty() && sign(p.back()) == 0) p.pop_back();
}

// Primitive part with the leading sign preserved; divides by positive content.
void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  Integer g(0);
  for (const Integer& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 1) return;
  for (Integer& c : p)
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IntPoly to_int_primitive(const UniPoly& p) {
  IntPoly out;
  if (p.is_zero()) return out;
  Integer lcm(1);
  for (const Rational& c : p.coeffs)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  out.resize(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    Rational scaled = p.coeffs[k] * Rational(lcm);
    out[k] = scaled.get_num();
  }
  make_primitive(out);
  return out;
}

IntPoly int_derivative(const IntPoly& p) {
  IntPoly d;
  if (p.size() <= 1) return d;
  d.resize(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k)
    d[k - 1] = p[k] * Integer(static_cast<long>(k));
  int_trim(d);
  return d;
}

// Pseudo-remainder rem(lc(g)^(deg f - deg g + 1) * f, g), exact over Z.
IntPoly int_pseudo_rem(const IntPoly& f, const IntPoly& g, Integer& multiplier) {
  IntPoly r = f;
  int dg = static_cast<int>(g.size()) - 1;
  const Integer& lc = g.back();
  multiplier = 1;
  while (static_cast<int>(r.size()) - 1 >= dg) {
    int shift = static_cast<int>(r.size()) - 1 - dg;
    Integer rl = r.back();
    for (Integer& c : r) c *= lc;
    multiplier *= lc;
    for (int k = 0; k <= dg; ++k) r[shift + k] -= rl * g[k];
    int_trim(r);
  }
  return r;
}

int sign_at_rational(const IntPoly& p, const Rational& x) {
  // sign of p(a/b) = sign of sum p_k a^k b^(d-k) with b > 0
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc(0), apow(1);
  std::vector<Integer> bpow(p.size());
  if (!p.empty()) {
    bpow[p.size() - 1] = 1;
    for (std::size_t k = p.size() - 1; k-- > 0;) bpow[k] = bpow[k + 1] * b;
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += p[k] * apow * bpow[k];
    apow *= a;
  }
  return sign(acc);
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmChain sturm_chain(const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Sturm chain of zero");
  SturmChain chain;
  IntPoly p0 = to_int_primitive(b);
  chain.elems.push_back(p0);
  if (p0.size() <= 1) return chain;
  IntPoly p1 = int_derivative(p0);
  make_primitive(p1);
  chain.elems.push_back(p1);
  while (chain.elems.back().size() > 0) {
    const IntPoly& prev = chain.elems[chain.elems.size() - 2];
    const IntPoly& cur = chain.elems.back();
    if (cur.size() <= 1) break;  // constant: chain ends here
    Integer mult;
    IntPoly r = int_pseudo_rem(prev, cur, mult);
    if (r.empty()) break;
    // next element is -rem(prev, cur) up to a positive constant
    if (sign(mult) > 0) {
      for (Integer& c : r) c = -c;
    }
    make_primitive(r);
    chain.elems.push_back(std::move(r));
  }
  return chain;
}

int SturmChain::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(elems.size());
  for (const auto& p : elems) signs.push_back(sign_at_rational(p, x));
  return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& p : elems) {
    int s = p.empty() ? 0 : sign(p.back());
    if ((p.size() - 1) % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& p : elems) signs.push_back(p.empty() ? 0 : sign(p.back()));
  return count_variations(signs);
}

Rational cauchy_root_bound(const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root bound of zero");
  Rational m(0);
  for (std::size_t k = 0; k + 1 < b.coeffs.size(); ++k)
    m = std::max(m, Rational(abs(b.coeffs[k])));
  return Rational(1) + m / Rational(abs(b.leading()));
}

int count_real_roots(const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root count of zero");
  if (b.degree() == 0) return 0;
  SturmChain chain = sturm_chain(b);
  return chain.variations_at_neg_inf() - chain.variations_at_pos_inf();
}

int count_real_roots(const UniPoly& b, const Rational& lo, const Rational& hi) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root count of zero");
  if (b.degree() == 0) return 0;
  if (lo >= hi) return 0;
  SturmChain chain = sturm_chain(b);
  return chain.variations_at(lo) - chain.variations_at(hi);
}

SquareFreeDecomposition squarefree_decompose(const UniPoly& b) {
  if (b.is_zero())
    throw Error(ErrorKind::ZeroPolynomial, "square-free decomposition of zero");
  SquareFreeDecomposition out;
  out.unit = b.leading();
  if (b.degree() == 0) return out;

  UniPoly monic = b.scaled(Rational(1) / b.leading());
  UniPoly deriv = monic.derivative();
  UniPoly a0 = uni_gcd(monic, deriv);
  UniPoly bi = uni_divmod(monic, a0).first;
  UniPoly ci = uni_divmod(deriv, a0).first;
  UniPoly di = ci - bi.derivative();
  int m = 1;
  while (bi.degree() > 0) {
    UniPoly ai = uni_gcd(bi, di);
    if (ai.degree() > 0) out.factors.emplace_back(ai, m);
    bi = uni_divmod(bi, ai).first;
    ci = uni_divmod(di, ai).first;
    di = ci - bi.derivative();
    ++m;
  }
  return out;
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  auto monic = [](const UniPoly& p) { return p.scaled(Rational(1) / p.leading()); };
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  IntPoly pa = to_int_primitive(a);
  IntPoly pb = to_int_primitive(b);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (!pb.empty()) {
    if (pb.size() == 1) {
      UniPoly one;
      one.coeffs = {Rational(1)};
      return one;
    }
    Integer mult;
    IntPoly r = int_pseudo_rem(pa, pb, mult);
    make_primitive(r);
    pa = std::move(pb);
    pb = std::move(r);
  }
  UniPoly g;
  g.coeffs.resize(pa.size());
  for (std::size_t k = 0; k < pa.size(); ++k) g.coeffs[k] = Rational(pa[k]);
  return monic(g);
}

std::vector<RootRecord> isolate_real_roots(const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "isolation of zero");
  std::vector<RootRecord> out;
  if (b.degree() == 0) return out;

  SquareFreeDecomposition sq = squarefree_decompose(b);
  UniPoly part;
  part.coeffs = {Rational(1)};
  for (const auto& [s, m] : sq.factors) part = part * s;
  if (part.degree() == 0) return out;

  SturmChain chain = sturm_chain(part);
  std::vector<SturmChain> factor_chains;
  factor_chains.reserve(sq.factors.size());
  for (const auto& [s, m] : sq.factors)
    factor_chains.push_back(s.degree() > 0 ? sturm_chain(s) : SturmChain{});

  Rational bound = cauchy_root_bound(part);
  struct Item {
    Rational lo, hi;
    int count;
  };
  std::vector<Item> stack;
  int total = chain.variations_at(-bound) - chain.variations_at(bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 1) {
      // attribute multiplicity: exactly one factor holds the single root
      int mult = 0;
      for (std::size_t f = 0; f < sq.factors.size(); ++f) {
        if (sq.factors[f].first.degree() == 0) continue;
        int c = factor_chains[f].variations_at(it.lo) - factor_chains[f].variations_at(it.hi);
        if (c == 1) {
          mult = sq.factors[f].second;
          break;
        }
      }
      out.push_back({it.lo, it.hi, mult});
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    int right = chain.variations_at(mid) - chain.variations_at(it.hi);
    int left = it.count - right;
    if (left > 0) stack.push_back({it.lo, mid, left});
    if (right > 0) stack.push_back({mid, it.hi, right});
  }
  std::sort(out.begin(), out.end(),
            [](const RootRecord& a, const RootRecord& b) { return a.lo < b.lo; });
  return out;
}

RootSummary analyze_roots(const UniPoly& b) {
  RootSummary s{0, true, 0};
  if (b.is_zero() || b.degree() == 0) return s;
  auto records = isolate_real_roots(b);
  s.distinct_roots = static_cast<int>(records.size());
  for (const auto& r : records) s.all_odd = s.all_odd && (r.multiplicity % 2 == 1);
  if (records.size() == 1) s.single_root_mult = records[0].multiplicity;
  return s;
}

// ---------------------------------------------------------------------------
// Certified double-precision Sturm filter.
// Coefficients are balls (mid, rad); every chain element is rescaled to unit
// max magnitude, a positive scaling that leaves sign variations unchanged.
// Falls back to nullopt whenever a needed sign cannot be certified.

namespace {

struct Ball {
  double mid = 0.0, rad = 0.0;
};

constexpr double kEps = 2.3e-16;  // one ulp of slack per operation

inline Ball ball_add(Ball a, Ball b) {
  double m = a.mid + b.mid;
  return {m, a.rad + b.rad + std::fabs(m) * kEps};
}

inline Ball ball_sub(Ball a, Ball b) {
  double m = a.mid - b.mid;
  return {m, a.rad + b.rad + std::fabs(m) * kEps};
}

inline Ball ball_mul(Ball a, Ball b) {
  double m = a.mid * b.mid;
  double r = std::fabs(a.mid) * b.rad + std::fabs(b.mid) * a.rad + a.rad * b.rad +
             std::fabs(m) * kEps;
  return {m, r};
}

// +1/-1 when certain, 0 when the ball straddles zero or is genuinely zero.
inline int ball_sign(const Ball& b, bool& certain) {
  if (std::fabs(b.mid) > b.rad) {
    certain = true;
    return b.mid > 0 ? 1 : -1;
  }
  certain = (b.mid == 0.0 && b.rad == 0.0);
  return 0;
}

using BallPoly = std::vector<Ball>;

bool ball_trim(BallPoly& p) {
  // drop certain zeros; fail on uncertain leading coefficients
  while (!p.empty()) {
    bool certain = false;
    int s = ball_sign(p.back(), certain);
    if (s != 0) return true;
    if (!certain) return false;
    p.pop_back();
  }
  return true;
}

void ball_normalize(BallPoly& p) {
  double scale = 0.0;
  for (const Ball& b : p) scale = std::max(scale, std::fabs(b.mid));
  if (scale == 0.0) return;
  double inv = 1.0 / scale;
  for (Ball& b : p) {
    b.mid *= inv;
    b.rad = b.rad * inv + std::fabs(b.mid) * kEps;
  }
}

}  // namespace

std::optional<int> try_count_real_roots_double(const std::vector<double>& coeffs,
                                               double input_rel_err) {
  BallPoly p0;
  p0.reserve(coeffs.size());
  for (double c : coeffs) p0.push_back({c, std::fabs(c) * input_rel_err});
  if (!ball_trim(p0)) return std::nullopt;
  if (p0.size() <= 1) return 0;

  BallPoly p1(p0.size() - 1);
  for (std::size_t k = 1; k < p0.size(); ++k)
    p1[k - 1] = ball_mul(p0[k], {static_cast<double>(k), 0.0});
  ball_normalize(p0);
  ball_normalize(p1);

  std::vector<int> neg_signs, pos_signs;
  auto push_lead = [&](const BallPoly& p) -> bool {
    bool certain = false;
    int s = ball_sign(p.back(), certain);
    if (s == 0) return false;
    pos_signs.push_back(s);
    neg_signs.push_back((p.size() - 1) % 2 == 1 ? -s : s);
    return true;
  };
  if (!push_lead(p0) || !push_lead(p1)) return std::nullopt;

  BallPoly prev = std::move(p0), cur = std::move(p1);
  while (cur.size() > 1) {
    // pseudo-remainder with sign bookkeeping
    BallPoly r = prev;
    Ball lc = cur.back();
    int dg = static_cast<int>(cur.size()) - 1;
    int mult_sign = 1;
    bool lc_certain = false;
    int lc_s = ball_sign(lc, lc_certain);
    if (lc_s == 0) return std::nullopt;
    while (static_cast<int>(r.size()) - 1 >= dg) {
      int shift = static_cast<int>(r.size()) - 1 - dg;
      Ball rl = r.back();
      for (Ball& c : r) c = ball_mul(c, lc);
      mult_sign *= lc_s;
      for (int k = 0; k <= dg; ++k) r[shift + k] = ball_sub(r[shift + k], ball_mul(rl, cur[k]));
      r.pop_back();  // exact cancellation of the leading term
      if (!ball_trim(r)) return std::nullopt;
    }
    if (r.empty()) break;
    if (mult_sign > 0)
      for (Ball& c : r) c.mid = -c.mid;
    ball_normalize(r);
    if (!push_lead(r)) return std::nullopt;
    prev = std::move(cur);
    cur = std::move(r);
  }
  return count_variations(neg_signs) - count_variations(pos_signs);
}

int count_real_roots_filtered(const std::vector<double>& coeffs) {
  if (auto fast = try_count_real_roots_double(coeffs)) return *fast;
  UniPoly b;
  b.coeffs.reserve(coeffs.size());
  for (double c : coeffs) b.coeffs.push_back(rational_from_double(c));
  b.trim();
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root count of zero");
  return count_real_roots(b);
}

}  // namespace gcx
