#include "gcx/density.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gcx/classify.hpp"
#include "gcx/error.hpp"
#include "gcx/linalg.hpp"
#include "gcx/realroots.hpp"
#include "gcx/rng.hpp"

namespace gcx {

using nlohmann::json;

double wilson_halfwidth(long hits, long trials) {
  if (trials <= 0) return 0.0;
  const double z = 1.9599639845400545;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(hits) / n;
  double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

namespace {

template <class TrialFn>
long run_hits(long trials, bool parallel, TrialFn&& trial) {
  long hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) if (parallel)
  for (long t = 0; t < trials; ++t) {
    if (trial(t)) hits += 1;
  }
  return hits;
}

DensityReport make_report(Family fam, int n, int d, double r, long trials, long hits,
                          std::uint64_t seed, std::optional<Rational> exact) {
  DensityReport rep;
  rep.family = fam;
  rep.n = n;
  rep.d = d;
  rep.r = r;
  rep.trials = trials;
  rep.hits = hits;
  rep.estimate = trials > 0 ? static_cast<double>(hits) / trials : 0.0;
  rep.ci95 = wilson_halfwidth(hits, trials);
  rep.exact = std::move(exact);
  if (rep.exact) rep.abs_err = std::fabs(rep.estimate - to_double(*rep.exact));
  rep.seed = seed;
  return rep;
}

Rational power_of_two_reciprocal(unsigned long k) {
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  Rational q(Integer(1), den);
  q.canonicalize();
  return q;
}

// --- univariate hit kernel ---------------------------------------------

struct BlockSummary {
  bool hit;      // the block alone is g-convex
  bool no_crit;  // the block provably has no critical point
};

// `coeffs` are the exact dyadic coefficients of f (as doubles); the
// derivative is formed exactly and counted through the certified filter.
BlockSummary analyze_univariate_block(const std::vector<double>& coeffs) {
  int top = static_cast<int>(coeffs.size()) - 1;
  while (top >= 0 && coeffs[top] == 0.0) --top;
  if (top <= 0) return {true, false};  // constant f

  // derivative in doubles, with one rounding each
  std::vector<double> bd(top);
  for (int k = 1; k <= top; ++k) bd[k - 1] = k * coeffs[k];
  if (top == 1) return {true, true};  // linear f, constant nonzero derivative

  int count;
  if (auto fast = try_count_real_roots_double(bd, 4e-16)) {
    count = *fast;
  } else {
    UniPoly b;
    b.coeffs.resize(top);
    for (int k = 1; k <= top; ++k)
      b.coeffs[k - 1] = rational_from_double(coeffs[k]) * Rational(k);
    b.trim();
    count = count_real_roots(b);
  }
  if (count == 0) return {true, true};
  if (count >= 2) return {false, false};

  // single distinct real root: g-convex iff the multiplicity is odd and the
  // leading coefficient is positive
  bool lc_positive = coeffs[top] > 0.0;
  UniPoly b;
  b.coeffs.resize(top);
  for (int k = 1; k <= top; ++k)
    b.coeffs[k - 1] = rational_from_double(coeffs[k]) * Rational(k);
  b.trim();
  UniPoly g = uni_gcd(b, b.derivative());
  if (g.degree() == 0) return {lc_positive, false};  // simple root
  auto records = isolate_real_roots(b);
  bool odd = records.size() == 1 && records[0].multiplicity % 2 == 1;
  return {odd && lc_positive, false};
}

void sample_ball(SplitMix64& rng, double radius, std::vector<double>& out) {
  double norm2 = 0.0;
  for (auto& c : out) {
    c = rng.gaussian();
    norm2 += c * c;
  }
  double norm = std::sqrt(norm2);
  int n = static_cast<int>(out.size());
  double rad = radius * std::pow(rng.uniform01(), 1.0 / n);
  double f = norm > 0.0 ? rad / norm : 0.0;
  for (auto& c : out) c *= f;
}

RatMat symmetric_from_ball(SplitMix64& rng, int n, double radius) {
  int N = n * (n + 1) / 2;
  std::vector<double> y(N);
  sample_ball(rng, radius, y);
  // isometric coordinates: diagonal direct, off-diagonal divided by sqrt(2)
  const double inv_sqrt2 = 0.7071067811865475244;
  RatMat A(n, RatVec(n, Rational(0)));
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double value = (i == j) ? y[k] : y[k] * inv_sqrt2;
      A[i][j] = rational_from_double(value);
      A[j][i] = A[i][j];
      ++k;
    }
  return A;
}

}  // namespace

bool univariate_gconvex_hit(const std::vector<double>& coeffs) {
  return analyze_univariate_block(coeffs).hit;
}

DensityReport sample_univariate(int d, double r, long trials, std::uint64_t seed,
                                bool parallel) {
  if (d < 1 || trials < 1) throw Error(ErrorKind::BadInput, "need d >= 1 and trials >= 1");
  long hits = run_hits(trials, parallel, [&](long t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> coeffs(d + 1);
    for (auto& c : coeffs) c = r * rng.uniform_pm1();
    return univariate_gconvex_hit(coeffs);
  });
  return make_report(Family::Univariate, 1, d, r, trials, hits, seed, std::nullopt);
}

DensityReport sample_quadratic(int n, double r, long trials, std::uint64_t seed,
                               bool parallel) {
  if (n < 1 || trials < 1) throw Error(ErrorKind::BadInput, "need n >= 1 and trials >= 1");
  long hits = run_hits(trials, parallel, [&](long t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    RatMat A = symmetric_from_ball(rng, n, r);
    std::vector<double> bc(n + 1);
    sample_ball(rng, r, bc);
    QuadraticForm q;
    q.A.assign(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q.A[i][j] = A[i][j] * 2;  // f = x^T A x + b^T x + c
    q.b.resize(n);
    for (int i = 0; i < n; ++i) q.b[i] = rational_from_double(bc[i]);
    q.c = rational_from_double(bc[n]);
    return classify_quadratic(q).outcome == Outcome::GConvex;
  });
  return make_report(Family::Quadratic, n, 2, r, trials, hits, seed,
                     power_of_two_reciprocal(static_cast<unsigned long>(n) * (n + 1) / 2));
}

DensityReport psd_ball_fraction(int n, long trials, std::uint64_t seed, bool parallel) {
  if (n < 1 || trials < 1) throw Error(ErrorKind::BadInput, "need n >= 1 and trials >= 1");
  long hits = run_hits(trials, parallel, [&](long t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    RatMat A = symmetric_from_ball(rng, n, 1.0);
    return is_psd(A);
  });
  return make_report(Family::PSDBall, n, 0, 1.0, trials, hits, seed,
                     power_of_two_reciprocal(static_cast<unsigned long>(n) * (n + 1) / 2));
}

DensityReport sample_separable(int n, int d, double r, long trials, std::uint64_t seed,
                               bool parallel) {
  if (n < 1 || d < 1 || trials < 1)
    throw Error(ErrorKind::BadInput, "need n, d >= 1 and trials >= 1");
  long hits = run_hits(trials, parallel, [&](long t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    bool all_hit = true, any_no_crit = false;
    std::vector<double> coeffs(d + 1);
    for (int j = 0; j < n; ++j) {
      for (auto& c : coeffs) c = r * rng.uniform_pm1();
      BlockSummary s = analyze_univariate_block(coeffs);
      all_hit = all_hit && s.hit;
      any_no_crit = any_no_crit || s.no_crit;
    }
    return any_no_crit || all_hit;
  });
  return make_report(Family::Separable, n, d, r, trials, hits, seed, std::nullopt);
}

MonomialDensity monomial_density_exact(int n, int d) {
  if (n < 1 || d < 1) throw Error(ErrorKind::BadInput, "need n, d >= 1");
  MonomialDensity out;
  out.n = n;
  out.d = d;

  // enumerate exponent tuples with sum <= d by an odometer
  Integer count(0);
  std::vector<int> tuple(n, 0);
  while (true) {
    int sum = 0;
    for (int v : tuple) sum += v;
    if (sum <= d) count += 1;
    int a = n - 1;
    for (; a >= 0; --a) {
      if (++tuple[a] <= d) break;
      tuple[a] = 0;
    }
    if (a < 0) break;
  }
  out.tuple_count_enumerated = count;

  mpz_bin_uiui(out.binom_nd.get_mpz_t(), static_cast<unsigned long>(n + d),
               static_cast<unsigned long>(n));
  mpz_bin_uiui(out.binom_printed.get_mpz_t(), static_cast<unsigned long>(n + 1 + d),
               static_cast<unsigned long>(n));
  out.enumeration_consistent = (out.tuple_count_enumerated == out.binom_nd);

  long half = d / 2;
  out.even_power_configs = static_cast<long>(n) * (half + 1);
  out.even_power_tuples = static_cast<long>(n) * half + 1;  // zero tuple shared

  Rational denom = Rational(2) * Rational(out.tuple_count_enumerated);
  out.oracle = Rational(out.even_power_configs) / denom;
  out.dedup_value = Rational(out.even_power_tuples) / denom;
  out.paper_formula =
      Rational(out.even_power_configs) / (Rational(2) * Rational(out.binom_printed));
  out.match = (out.oracle == out.paper_formula);
  return out;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Univariate: return "univariate";
    case Family::Quadratic: return "quadratic";
    case Family::Monomial: return "monomial";
    case Family::Separable: return "separable";
    case Family::PSDBall: return "psdball";
  }
  return "?";
}

std::string DensityReport::to_json(int indent) const {
  json j;
  j["family"] = family_name(family);
  j["n"] = n;
  j["d"] = d;
  j["r"] = r;
  j["trials"] = trials;
  j["hits"] = hits;
  j["estimate"] = estimate;
  j["ci95"] = ci95;
  if (exact) {
    j["exact"] = rational_to_string(*exact);
    j["abs_err"] = abs_err;
  } else {
    j["exact"] = nullptr;
  }
  j["seed"] = seed;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

std::string DensityReport::csv_header() {
  return "family,n,d,r,trials,hits,estimate,ci95,exact,abs_err,seed";
}

std::string DensityReport::to_csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << family_name(family) << ',' << n << ',' << d << ',' << r << ',' << trials << ','
     << hits << ',' << estimate << ',' << ci95 << ',';
  if (exact)
    os << rational_to_string(*exact) << ',' << abs_err;
  else
    os << ',';
  os << ',' << seed;
  return os.str();
}

std::string MonomialDensity::to_json(int indent) const {
  json j;
  j["family"] = "monomial";
  j["n"] = n;
  j["d"] = d;
  j["tuple_count_enumerated"] = tuple_count_enumerated.get_str();
  j["binom_n_plus_d_choose_n"] = binom_nd.get_str();
  j["binom_printed_n_plus_1_plus_d_choose_n"] = binom_printed.get_str();
  j["even_power_configs"] = even_power_configs;
  j["even_power_tuples_dedup"] = even_power_tuples;
  j["oracle"] = rational_to_string(oracle);
  j["paper_formula"] = rational_to_string(paper_formula);
  j["dedup_value"] = rational_to_string(dedup_value);
  j["match"] = match;
  j["enumeration_consistent"] = enumeration_consistent;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace gcx
