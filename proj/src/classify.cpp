#include "gcx/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gcx/error.hpp"

namespace gcx {

namespace {

Verdict gconvex(Certificate cert) {
  return Verdict{Outcome::GConvex, std::move(cert), std::nullopt, ""};
}

Verdict not_gconvex(Witness w) {
  return Verdict{Outcome::NotGConvex, std::nullopt, std::move(w), ""};
}

Verdict unknown(std::string reason) {
  return Verdict{Outcome::Unknown, std::nullopt, std::nullopt, std::move(reason)};
}

Certificate simple_cert(CertificateKind k) {
  Certificate c;
  c.kind = k;
  return c;
}

}  // namespace

Verdict classify_univariate(const Polynomial& f) {
  if (f.used_vars().size() > 1)
    throw Error(ErrorKind::NotUnivariate, "classify_univariate needs one variable");
  UniPoly u = UniPoly::from_polynomial(
      f.nvars() == 1 ? f : f.restricted(f.used_vars()));
  UniPoly b = u.derivative();

  if (b.is_zero()) return gconvex(simple_cert(CertificateKind::ConstantFunction));
  if (b.degree() == 0) return gconvex(simple_cert(CertificateKind::NoCriticalPoint));

  auto records = isolate_real_roots(b);
  if (records.empty()) return gconvex(simple_cert(CertificateKind::NoCriticalPoint));

  if (records.size() >= 2) {
    // an even-multiplicity root is the sharper obstruction when present
    std::vector<RootRecord> even;
    for (const auto& r : records)
      if (r.multiplicity % 2 == 0) even.push_back(r);
    if (!even.empty()) {
      Witness w;
      w.kind = WitnessKind::EvenMultiplicityRoot;
      w.roots = even;
      w.detail = "derivative has a real root of even multiplicity";
      return not_gconvex(std::move(w));
    }
    Witness w;
    w.kind = WitnessKind::MultipleOddRoots;
    w.roots = records;
    w.detail = "derivative has more than one distinct real root of odd multiplicity";
    return not_gconvex(std::move(w));
  }

  const RootRecord& root = records[0];
  if (root.multiplicity % 2 == 0) {
    Witness w;
    w.kind = WitnessKind::EvenMultiplicityRoot;
    w.roots = {root};
    w.detail = "derivative has a single real root of even multiplicity";
    return not_gconvex(std::move(w));
  }
  // single odd root u: cofactor p with b = (x-u)^(2r-1) p has no real root,
  // so p > 0 everywhere iff the leading coefficient of b is positive
  if (sign(b.leading()) > 0) {
    Certificate c;
    c.kind = CertificateKind::UnivariateOddRoot;
    c.root = root;
    c.cofactor_positive = true;
    return gconvex(std::move(c));
  }
  Witness w;
  w.kind = WitnessKind::NegativeLeadingCofactor;
  w.roots = {root};
  w.detail = "derivative cofactor is negative (leading coefficient < 0)";
  return not_gconvex(std::move(w));
}

QuadraticForm to_quadratic_form(const Polynomial& f) {
  if (f.total_degree() > 2)
    throw Error(ErrorKind::DegreeTooHigh, "quadratic form extraction needs degree <= 2");
  int n = f.nvars();
  QuadraticForm q;
  q.A.assign(n, RatVec(n, Rational(0)));
  q.b.assign(n, Rational(0));
  q.c = 0;
  for (const auto& [e, coef] : f.terms()) {
    std::vector<int> vars;
    int deg = 0;
    for (int i = 0; i < n; ++i) {
      deg += e[i];
      if (e[i] > 0) vars.push_back(i);
    }
    if (deg == 0) {
      q.c = coef;
    } else if (deg == 1) {
      q.b[vars[0]] = coef;
    } else if (vars.size() == 1) {
      q.A[vars[0]][vars[0]] = coef * 2;  // 1/2 A_ii x_i^2
    } else {
      q.A[vars[0]][vars[1]] = coef;
      q.A[vars[1]][vars[0]] = coef;
    }
  }
  return q;
}

Verdict classify_quadratic(const QuadraticForm& q) {
  if (is_psd(q.A)) return gconvex(simple_cert(CertificateKind::QuadraticPSD));
  int n = q.n();
  RatMat aug = q.A;
  for (int i = 0; i < n; ++i) aug[i].push_back(q.b[i]);
  if (rank_fraction_free(aug) > rank_fraction_free(q.A))
    return gconvex(simple_cert(CertificateKind::QuadraticNoCritical));
  // critical points exist: solve A x = -b for a witness
  RatVec rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = -q.b[i];
  auto point = solve_linear(q.A, rhs);
  Witness w;
  w.kind = WitnessKind::IndefiniteHessianAtCritical;
  w.critical_point = point;
  w.detail = "Euclidean Hessian is not positive semidefinite at a critical point";
  return not_gconvex(std::move(w));
}

Verdict classify_monomial(const Polynomial& f) {
  if (f.term_count() != 1)
    throw Error(ErrorKind::NotMonomial, "classify_monomial needs exactly one term");
  const auto& [exps, coef] = *f.terms().begin();
  std::vector<int> support;
  int total = 0;
  for (int i = 0; i < f.nvars(); ++i) {
    total += exps[i];
    if (exps[i] > 0) support.push_back(i);
  }
  if (total == 0) return gconvex(simple_cert(CertificateKind::ConstantFunction));
  if (total == 1) return gconvex(simple_cert(CertificateKind::NoCriticalPoint));

  if (support.size() == 1) {
    int j = support[0];
    int d = exps[j];
    if (d % 2 == 0 && sign(coef) > 0) {
      Certificate c;
      c.kind = CertificateKind::MonomialEvenPower;
      c.variable_index = j;
      c.degree = d;
      c.coefficient = coef;
      return gconvex(std::move(c));
    }
    Witness w;
    w.kind = WitnessKind::MonomialStructure;
    w.detail = d % 2 ? "odd power of a single variable"
                     : "negative coefficient on an even power";
    return not_gconvex(std::move(w));
  }

  // several variables, total degree >= 2
  int unit_vars = 0, odd_high = 0;
  for (int i : support) {
    if (exps[i] == 1) ++unit_vars;
    if (exps[i] >= 2 && exps[i] % 2 == 1) ++odd_high;
  }
  Witness w;
  w.kind = WitnessKind::MonomialStructure;
  if (odd_high > 0)
    w.detail = "an exponent >= 2 is odd";
  else if (unit_vars >= 2)
    w.detail = "two variables of unit degree give a saddle at a critical point";
  else if (unit_vars == 1)
    w.detail = "a unit-degree variable times even powers";
  else
    w.detail = "more than one variable carries an even power";
  return not_gconvex(std::move(w));
}

std::vector<SeparableBlock> separable_partition(const Polynomial& f) {
  int n = f.nvars();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  for (const auto& [e, c] : f.terms()) {
    int first = -1;
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (first < 0)
        first = i;
      else
        unite(first, i);
    }
  }
  std::vector<int> used = f.used_vars();
  std::vector<SeparableBlock> blocks;
  for (int v : used) {
    if (find(v) != v) continue;
    SeparableBlock blk;
    blk.summand = Polynomial(n);
    blocks.push_back(blk);
  }
  // map root -> block index, blocks ordered by smallest member
  std::vector<std::pair<int, int>> roots;  // (root, block)
  {
    int idx = 0;
    for (int v : used)
      if (find(v) == v) roots.emplace_back(v, idx++);
  }
  auto block_of = [&](int v) {
    int r = find(v);
    for (auto& [root, idx] : roots)
      if (root == r) return idx;
    return -1;
  };
  for (int v : used) blocks[block_of(v)].variables.push_back(v);
  for (auto& blk : blocks) std::sort(blk.variables.begin(), blk.variables.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    return a.variables.front() < b.variables.front();
  });

  for (const auto& [e, c] : f.terms()) {
    int first = -1;
    for (int i = 0; i < n && first < 0; ++i)
      if (e[i] > 0) first = i;
    if (first < 0) continue;  // constant handled below
    for (auto& blk : blocks) {
      if (std::binary_search(blk.variables.begin(), blk.variables.end(), first)) {
        blk.summand.add_term(e, c);
        break;
      }
    }
  }
  if (!blocks.empty()) {
    Rational c0 = f.constant_term();
    if (sign(c0) != 0)
      blocks[0].summand.add_term(ExponentVec(n, 0), c0);
  }
  return blocks;
}

std::optional<bool> has_no_critical_point(const Polynomial& f) {
  auto used = f.used_vars();
  if (used.empty()) return false;  // constants are critical everywhere
  if (used.size() == 1) {
    UniPoly u = UniPoly::from_polynomial(f.restricted(used));
    UniPoly b = u.derivative();
    if (b.is_zero()) return false;
    if (b.degree() == 0) return true;
    return count_real_roots(b) == 0;
  }
  if (f.term_count() == 1) {
    return f.total_degree() == 1;  // linear monomial has constant gradient
  }
  if (f.total_degree() <= 2) {
    QuadraticForm q = to_quadratic_form(f);
    RatMat aug = q.A;
    for (int i = 0; i < q.n(); ++i) aug[i].push_back(q.b[i]);
    return rank_fraction_free(aug) > rank_fraction_free(q.A);
  }
  auto blocks = separable_partition(f);
  if (blocks.size() >= 2) {
    bool any_unknown = false;
    for (const auto& blk : blocks) {
      auto sub = has_no_critical_point(blk.summand.restricted(blk.variables));
      if (!sub.has_value())
        any_unknown = true;
      else if (*sub)
        return true;  // one block without critical points is enough
    }
    if (any_unknown) return std::nullopt;
    return false;  // every block has one, so the product set is nonempty
  }
  return std::nullopt;
}

Verdict classify(const Polynomial& f) {
  if (f.is_constant()) return gconvex(simple_cert(CertificateKind::ConstantFunction));

  auto used = f.used_vars();
  if (used.size() == 1) return classify_univariate(f.restricted(used));
  if (f.term_count() == 1) return classify_monomial(f);
  if (f.total_degree() <= 2) return classify_quadratic(to_quadratic_form(f));

  auto blocks = separable_partition(f);
  if (blocks.size() < 2)
    return unknown("multivariate polynomial outside the decidable classes");

  // g-convex iff (no critical point) or (every block g-convex)
  std::vector<std::optional<bool>> block_no_crit;
  for (const auto& blk : blocks)
    block_no_crit.push_back(has_no_critical_point(blk.summand.restricted(blk.variables)));
  for (auto& v : block_no_crit)
    if (v.has_value() && *v) return gconvex(simple_cert(CertificateKind::NoCriticalPoint));

  std::vector<Verdict> sub;
  sub.reserve(blocks.size());
  bool all_gconvex = true, any_not = false;
  int failing = -1;
  bool any_unknown = false;
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    sub.push_back(classify(blocks[t].summand.restricted(blocks[t].variables)));
    if (sub.back().outcome != Outcome::GConvex) all_gconvex = false;
    if (sub.back().outcome == Outcome::NotGConvex && failing < 0) {
      any_not = true;
      failing = static_cast<int>(t);
    }
    if (sub.back().outcome == Outcome::Unknown) any_unknown = true;
  }
  if (all_gconvex) {
    Certificate c;
    c.kind = CertificateKind::Separable;
    for (auto& v : sub) c.blocks.push_back(*v.certificate);
    return gconvex(std::move(c));
  }
  bool all_have_critical = true;
  for (auto& v : block_no_crit)
    all_have_critical = all_have_critical && v.has_value() && !*v;
  if (all_have_critical && any_not) {
    Witness w;
    w.kind = WitnessKind::SeparableFailure;
    w.failing_block = failing;
    w.detail = "every block has a critical point and block " +
               std::to_string(failing + 1) + " is not g-convex";
    return not_gconvex(std::move(w));
  }
  if (any_unknown) {
    for (std::size_t t = 0; t < blocks.size(); ++t) {
      if (sub[t].outcome == Outcome::Unknown)
        return unknown("separable block " + std::to_string(t + 1) +
                       " is outside the decidable classes");
    }
  }
  return unknown("cannot decide the critical-point condition for every block");
}

CriticalPointReport check_necessary_at_critical(const Polynomial& f, const RatVec& point) {
  CriticalPointReport rep{true, false};
  for (int i = 0; i < f.nvars(); ++i) {
    if (sign(f.derivative(i).evaluate(point)) != 0) {
      rep.is_critical = false;
      break;
    }
  }
  auto h = euclidean_hessian(f);
  int n = f.nvars();
  RatMat hm(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hm[i][j] = h[i][j].evaluate(point);
  rep.hessian_psd = is_psd(hm);
  return rep;
}

std::vector<CriticalPointReport> check_necessary_at_critical(
    const Polynomial& f, const std::vector<RatVec>& points) {
  std::vector<CriticalPointReport> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(check_necessary_at_critical(f, p));
  return out;
}

CriticalCount count_isolated_critical_points(const Polynomial& f) {
  auto used = f.used_vars();
  if (used.empty()) return {CriticalCount::Continuum};

  if (used.size() == 1 && static_cast<int>(used.size()) == f.nvars()) {
    UniPoly b = UniPoly::from_polynomial(f).derivative();
    if (b.is_zero()) return {CriticalCount::Continuum};
    if (b.degree() == 0) return {CriticalCount::Count, 0};
    return {CriticalCount::Count, count_real_roots(b)};
  }
  if (f.total_degree() <= 2) {
    QuadraticForm q = to_quadratic_form(f);
    int n = q.n();
    RatMat aug = q.A;
    for (int i = 0; i < n; ++i) aug[i].push_back(q.b[i]);
    int ra = rank_fraction_free(q.A);
    if (rank_fraction_free(aug) > ra) return {CriticalCount::Count, 0};
    if (ra == n) return {CriticalCount::Count, 1};
    return {CriticalCount::Continuum};
  }
  if (f.term_count() == 1) {
    if (f.total_degree() <= 1) return {CriticalCount::Count, 0};
    // degree >= 2 monomial: the critical set is cut out by coordinate
    // hyperplanes; isolated only in one ambient variable
    if (f.nvars() == 1) return {CriticalCount::Count, 1};
    return {CriticalCount::Continuum};
  }
  auto blocks = separable_partition(f);
  if (blocks.size() >= 2) {
    long product = 1;
    bool continuum = false;
    for (const auto& blk : blocks) {
      CriticalCount c = count_isolated_critical_points(blk.summand.restricted(blk.variables));
      if (c.kind == CriticalCount::Unknown) return {CriticalCount::Unknown};
      if (c.kind == CriticalCount::Count && c.count == 0) return {CriticalCount::Count, 0};
      if (c.kind == CriticalCount::Continuum)
        continuum = true;
      else
        product *= c.count;
    }
    if (continuum) return {CriticalCount::Continuum};
    return {CriticalCount::Count, product};
  }
  return {CriticalCount::Unknown};
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::GConvex: return "GConvex";
    case Outcome::NotGConvex: return "NotGConvex";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::NoCriticalPoint: return "NoCriticalPoint";
    case CertificateKind::UnivariateOddRoot: return "UnivariateOddRoot";
    case CertificateKind::QuadraticPSD: return "QuadraticPSD";
    case CertificateKind::QuadraticNoCritical: return "QuadraticNoCritical";
    case CertificateKind::MonomialEvenPower: return "MonomialEvenPower";
    case CertificateKind::Separable: return "Separable";
    case CertificateKind::ConstantFunction: return "ConstantFunction";
  }
  return "?";
}

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::EvenMultiplicityRoot: return "EvenMultiplicityRoot";
    case WitnessKind::MultipleOddRoots: return "MultipleOddRoots";
    case WitnessKind::NegativeLeadingCofactor: return "NegativeLeadingCofactor";
    case WitnessKind::IndefiniteHessianAtCritical: return "IndefiniteHessianAtCritical";
    case WitnessKind::MonomialStructure: return "MonomialStructure";
    case WitnessKind::SeparableFailure: return "SeparableFailure";
  }
  return "?";
}

}  // namespace gcx
