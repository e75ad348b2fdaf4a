#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

enum class Family { Univariate, Quadratic, Monomial, Separable, PSDBall };

struct DensityReport {
  Family family;
  int n = 0;
  int d = 0;
  double r = 1.0;
  long trials = 0;
  long hits = 0;
  double estimate = 0.0;
  double ci95 = 0.0;  // Wilson halfwidth
  std::optional<Rational> exact;
  double abs_err = 0.0;  // |estimate - exact| when exact is present
  std::uint64_t seed = 0;

  std::string to_json(int indent = -1) const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

double wilson_halfwidth(long hits, long trials);

/// Every sampler is deterministic in (params, seed) and yields identical
/// results with `parallel` on or off; the parallel path partitions trials
/// into independently seeded chunks (OpenMP) and reduces by summation.

/// Coefficients of f i.i.d. uniform on [-r, r] (exact dyadic doubles);
/// hit = the univariate classifier returns GConvex.
DensityReport sample_univariate(int d, double r, long trials, std::uint64_t seed,
                                bool parallel = true);

/// A uniform in the Frobenius ball of radius r (Gaussian direction, radius
/// r*u^(1/N)), (b, c) uniform in the (n+1)-ball; hit = quadratic classifier
/// returns GConvex. exact = 2^-binom(n+1,2).
DensityReport sample_quadratic(int n, double r, long trials, std::uint64_t seed,
                               bool parallel = true);

/// Uniform symmetric matrices in the unit Frobenius ball; hit = PSD (exact
/// test). exact = 2^-binom(n+1,2).
DensityReport psd_ball_fraction(int n, long trials, std::uint64_t seed,
                                bool parallel = true);

/// n univariate blocks of degree d with i.i.d. uniform coefficients;
/// hit = separable classifier returns GConvex.
DensityReport sample_separable(int n, int d, double r, long trials, std::uint64_t seed,
                               bool parallel = true);

struct MonomialDensity {
  int n = 0, d = 0;
  Integer tuple_count_enumerated;   // |{d >= 0 : sum <= d}| by brute force
  Integer binom_nd;                 // binom(n+d, n)
  Integer binom_printed;            // binom(n+1+d, n)
  long even_power_configs = 0;      // n * (floor(d/2) + 1), counting per variable
  long even_power_tuples = 0;       // deduplicated exponent tuples
  Rational oracle;                  // configs / (2 * enumerated count)
  Rational paper_formula;           // n(floor(d/2)+1) / (2 binom(n+1+d, n))
  Rational dedup_value;             // tuples / (2 * enumerated count)
  bool match = false;               // oracle == paper_formula
  bool enumeration_consistent = false;  // enumerated == binom(n+d, n)

  std::string to_json(int indent = -1) const;
};

/// Exact counting for the monomial family; reports both the enumeration
/// oracle and the printed closed form, flagging agreement.
MonomialDensity monomial_density_exact(int n, int d);

/// Fast exact g-convexity hit test for a univariate polynomial given by
/// dyadic double coefficients c[k] of x^k (certified filter + exact
/// fallback). Matches classify_univariate on the same input.
bool univariate_gconvex_hit(const std::vector<double>& coeffs);

std::string family_name(Family f);

}  // namespace gcx
