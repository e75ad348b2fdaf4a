#include "gcx/geoverify.hpp"

#include <cmath>
#include <limits>

#include "gcx/error.hpp"
#include "gcx/linalg.hpp"
#include "gcx/rng.hpp"

namespace gcx {

namespace {

// Flattened double evaluator for the integrator hot loop.
struct CompiledPoly {
  struct Term {
    double coef;
    std::vector<unsigned> exps;
  };
  std::vector<Term> terms;

  static CompiledPoly compile(const Polynomial& p) {
    CompiledPoly out;
    out.terms.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) out.terms.push_back({to_double(c), e});
    return out;
  }

  double eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double v = t.coef;
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        double p = 1.0, b = x[i];
        unsigned k = t.exps[i];
        while (k) {
          if (k & 1u) p *= b;
          k >>= 1u;
          if (k) b *= b;
        }
        v *= p;
      }
      acc += v;
    }
    return acc;
  }
};

struct CompiledRatExpr {
  CompiledPoly num, den;
  bool zero;

  static CompiledRatExpr compile(const RatExpr& e) {
    return {CompiledPoly::compile(e.num()), CompiledPoly::compile(e.den()), e.is_zero()};
  }
};

struct CompiledConnection {
  int n;
  std::vector<CompiledRatExpr> gamma;  // (i*n + j)*n + k, i <= j only used

  static CompiledConnection compile(const Connection& conn) {
    int n = conn.dim();
    CompiledConnection out;
    out.n = n;
    out.gamma.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          out.gamma.push_back(CompiledRatExpr::compile(conn.gamma(i, j, k)));
    return out;
  }

  // acceleration a^k = -Gamma^k_ij v^i v^j; returns false near a pole
  bool acceleration(const std::vector<double>& x, const std::vector<double>& v,
                    std::vector<double>& a) const {
    for (int k = 0; k < n; ++k) a[k] = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double vij = v[i] * v[j];
        for (int k = 0; k < n; ++k) {
          const CompiledRatExpr& g = gamma[(static_cast<std::size_t>(i) * n + j) * n + k];
          if (g.zero) continue;
          double den = g.den.eval(x);
          if (std::fabs(den) < 1e-12) return false;
          a[k] -= g.num.eval(x) / den * vij;
        }
      }
    return true;
  }
};

}  // namespace

GeodesicPath integrate_geodesic(const Connection& conn, const std::vector<double>& x0,
                                const std::vector<double>& v0, double T, int steps) {
  int n = conn.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(v0.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "initial state dimension mismatch");
  if (steps <= 0) throw Error(ErrorKind::BadInput, "steps must be positive");
  CompiledConnection cc = CompiledConnection::compile(conn);

  GeodesicPath path;
  path.times.reserve(steps + 1);
  path.positions.reserve(steps + 1);
  path.velocities.reserve(steps + 1);

  std::vector<double> x = x0, v = v0, a(n);
  std::vector<double> kx1(n), kv1(n), kx2(n), kv2(n), kx3(n), kv3(n), kx4(n), kv4(n);
  std::vector<double> tx(n), tv(n);
  double h = T / steps;

  auto record = [&](double t) {
    path.times.push_back(t);
    path.positions.push_back(x);
    path.velocities.push_back(v);
  };
  auto deriv = [&](const std::vector<double>& px, const std::vector<double>& pv,
                   std::vector<double>& dx, std::vector<double>& dv) {
    dx = pv;
    if (!cc.acceleration(px, pv, dv))
      throw Error(ErrorKind::PoleEncountered, "geodesic hit a Christoffel pole");
  };

  record(0.0);
  for (int s = 0; s < steps; ++s) {
    deriv(x, v, kx1, kv1);
    for (int i = 0; i < n; ++i) {
      tx[i] = x[i] + 0.5 * h * kx1[i];
      tv[i] = v[i] + 0.5 * h * kv1[i];
    }
    deriv(tx, tv, kx2, kv2);
    for (int i = 0; i < n; ++i) {
      tx[i] = x[i] + 0.5 * h * kx2[i];
      tv[i] = v[i] + 0.5 * h * kv2[i];
    }
    deriv(tx, tv, kx3, kv3);
    for (int i = 0; i < n; ++i) {
      tx[i] = x[i] + h * kx3[i];
      tv[i] = v[i] + h * kv3[i];
    }
    deriv(tx, tv, kx4, kv4);
    for (int i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (kx1[i] + 2.0 * kx2[i] + 2.0 * kx3[i] + kx4[i]);
      v[i] += h / 6.0 * (kv1[i] + 2.0 * kv2[i] + 2.0 * kv3[i] + kv4[i]);
      if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
        throw Error(ErrorKind::NonFinite, "geodesic state left the finite range");
    }
    record(h * (s + 1));
  }
  return path;
}

ConvexityReport convexity_along(const Polynomial& f, const GeodesicPath& path, double tol) {
  CompiledPoly cf = CompiledPoly::compile(f);
  std::vector<double> y;
  y.reserve(path.positions.size());
  double scale = 1.0;
  for (const auto& x : path.positions) {
    y.push_back(cf.eval(x));
    scale = std::max(scale, std::fabs(y.back()));
  }
  double min_dd = 0.0;
  bool first = true;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    double dd = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (first || dd < min_dd) min_dd = dd;
    first = false;
  }
  return {min_dd >= -tol * scale, min_dd};
}

PsdSampleReport sample_hessian_psd(const Polynomial& f, const Connection& conn,
                                   double box_lo, double box_hi, int N, double tol,
                                   std::uint64_t seed, bool parallel) {
  int n = f.nvars();
  auto hess = hessian_under(f, conn);
  std::vector<CompiledRatExpr> ch;
  ch.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ch.push_back(CompiledRatExpr::compile(hess[i][j]));

  int violations = 0, skipped = 0;
  double worst = std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(static) reduction(+ : violations, skipped) \
    reduction(min : worst) if (parallel)
  for (int t = 0; t < N; ++t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> x(n);
    for (auto& c : x) c = box_lo + (box_hi - box_lo) * rng.uniform01();
    bool near_pole = false;
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    double hnorm = 0.0;
    for (int i = 0; i < n && !near_pole; ++i)
      for (int j = 0; j < n; ++j) {
        const CompiledRatExpr& e = ch[static_cast<std::size_t>(i) * n + j];
        if (e.zero) continue;
        double den = e.den.eval(x);
        if (std::fabs(den) < 1e-9) {
          near_pole = true;
          break;
        }
        H[i][j] = e.num.eval(x) / den;
        hnorm = std::max(hnorm, std::fabs(H[i][j]));
      }
    if (near_pole) {
      skipped += 1;
      continue;
    }
    double lambda_min = smallest_eigenvalue(H);
    if (lambda_min < worst) worst = lambda_min;
    if (lambda_min < -tol * std::max(1.0, hnorm)) violations += 1;
  }
  if (!std::isfinite(worst)) worst = 0.0;
  return {violations, skipped, worst};
}

int check_geodesics_convex(const Polynomial& f, const Connection& conn, int count,
                           double T, int steps, double tol, std::uint64_t seed,
                           bool parallel) {
  int n = conn.dim();
  int failures = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures) if (parallel)
  for (int t = 0; t < count; ++t) {
    SplitMix64 rng = task_rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> x0(n), v0(n);
    for (auto& c : x0) c = rng.uniform_pm1();
    for (auto& c : v0) c = rng.uniform_pm1();
    try {
      GeodesicPath path = integrate_geodesic(conn, x0, v0, T, steps);
      if (!convexity_along(f, path, tol).convex) failures += 1;
    } catch (const Error&) {
      failures += 1;  // poles or blowups count against the certificate
    }
  }
  return failures;
}

}  // namespace gcx
