#include "gcx/holonomy.hpp"

#include <algorithm>
#include <cmath>

#include "gcx/error.hpp"
#include "gcx/rng.hpp"

namespace gcx {

CurvatureTensor curvature(const Connection& conn) {
  int n = conn.dim();
  CurvatureTensor r;
  r.n = n;
  r.comp.assign(static_cast<std::size_t>(n) * n * n * n, RatExpr::zero(n));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          RatExpr acc = conn.gamma(j, k, l).derivative(i) - conn.gamma(i, k, l).derivative(j);
          for (int t = 0; t < n; ++t) {
            const RatExpr& gjk = conn.gamma(j, k, t);
            const RatExpr& gik = conn.gamma(i, k, t);
            if (!gjk.is_zero() && !conn.gamma(i, t, l).is_zero())
              acc += gjk * conn.gamma(i, t, l);
            if (!gik.is_zero() && !conn.gamma(j, t, l).is_zero())
              acc -= gik * conn.gamma(j, t, l);
          }
          r.at(l, i, j, k) = acc;
          r.at(l, j, i, k) = -acc;
        }
      }
    }
  }
  return r;
}

bool curvature_antisymmetric(const CurvatureTensor& r) {
  for (int l = 0; l < r.n; ++l)
    for (int i = 0; i < r.n; ++i)
      for (int j = 0; j < r.n; ++j)
        for (int k = 0; k < r.n; ++k)
          if (!(r.at(l, i, j, k) + r.at(l, j, i, k)).is_zero()) return false;
  return true;
}

TensorField TensorField::zero(int n, int s) {
  TensorField t;
  t.n = n;
  t.s = s;
  std::size_t count = n;
  for (int a = 0; a < s; ++a) count *= n;
  t.comp.assign(count, RatExpr::zero(n));
  return t;
}

namespace {

std::size_t lower_offset(int n, int s, const std::vector<int>& lower) {
  std::size_t off = 0;
  for (int a = 0; a < s; ++a) off = off * n + lower[a];
  return off;
}

}  // namespace

const RatExpr& TensorField::at(int l, const std::vector<int>& lower) const {
  std::size_t stride = 1;
  for (int a = 0; a < s; ++a) stride *= n;
  return comp[l * stride + lower_offset(n, s, lower)];
}

RatExpr& TensorField::at(int l, const std::vector<int>& lower) {
  std::size_t stride = 1;
  for (int a = 0; a < s; ++a) stride *= n;
  return comp[l * stride + lower_offset(n, s, lower)];
}

TensorField curvature_endomorphism(const CurvatureTensor& r, int i, int j) {
  TensorField t = TensorField::zero(r.n, 1);
  for (int l = 0; l < r.n; ++l)
    for (int k = 0; k < r.n; ++k) t.at(l, {k}) = r.at(l, i, j, k);
  return t;
}

TensorField covariant_derivative(const TensorField& t, const Connection& conn) {
  int n = t.n, s = t.s;
  if (n != conn.dim())
    throw Error(ErrorKind::DimensionMismatch, "tensor/connection dimension mismatch");
  TensorField out = TensorField::zero(n, s + 1);
  std::vector<int> lower(s, 0), ext(s + 1, 0), tmp(s, 0);
  while (true) {
    for (int l = 0; l < n; ++l) {
      for (int m = 0; m < n; ++m) {
        RatExpr acc = t.at(l, lower).derivative(m);
        for (int u = 0; u < n; ++u) {
          const RatExpr& g_up = conn.gamma(m, u, l);
          if (!g_up.is_zero() && !t.at(u, lower).is_zero()) acc += g_up * t.at(u, lower);
        }
        for (int a = 0; a < s; ++a) {
          for (int u = 0; u < n; ++u) {
            const RatExpr& g = conn.gamma(m, lower[a], u);
            if (g.is_zero()) continue;
            tmp = lower;
            tmp[a] = u;
            if (!t.at(l, tmp).is_zero()) acc -= g * t.at(l, tmp);
          }
        }
        std::copy(lower.begin(), lower.end(), ext.begin());
        ext[s] = m;
        out.at(l, ext) = std::move(acc);
      }
    }
    // next multi-index
    int a = s - 1;
    for (; a >= 0; --a) {
      if (++lower[a] < n) break;
      lower[a] = 0;
    }
    if (a < 0) break;
  }
  return out;
}

std::vector<RatMat> generators_at(const Connection& conn, const RatVec& x, int k) {
  int n = conn.dim();
  CurvatureTensor r = curvature(conn);
  std::vector<RatMat> out;
  auto eval = [&](const RatExpr& e) -> Rational { return e.evaluate(x); };

  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = i1 + 1; i2 < n; ++i2) {
      TensorField field = curvature_endomorphism(r, i1, i2);
      for (int order = 0; order <= k; ++order) {
        if (order > 0) field = covariant_derivative(field, conn);
        // enumerate derivative tuples (the trailing s-1 lower indices)
        int tuple_len = field.s - 1;
        std::vector<int> tuple(tuple_len, 0);
        while (true) {
          RatMat m(n, RatVec(n, Rational(0)));
          std::vector<int> lower(field.s);
          for (int l = 0; l < n; ++l)
            for (int u = 0; u < n; ++u) {
              lower[0] = u;
              std::copy(tuple.begin(), tuple.end(), lower.begin() + 1);
              m[l][u] = eval(field.at(l, lower));
            }
          out.push_back(std::move(m));
          int a = tuple_len - 1;
          for (; a >= 0; --a) {
            if (++tuple[a] < n) break;
            tuple[a] = 0;
          }
          if (a < 0) break;
        }
      }
    }
  }
  return out;
}

namespace {

RatVec flatten(const RatMat& m) {
  RatVec v;
  v.reserve(m.size() * m.size());
  for (const auto& row : m)
    for (const auto& c : row) v.push_back(c);
  return v;
}

RatMat unflatten(const RatVec& v, int n) {
  RatMat m(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = v[i * n + j];
  return m;
}

RatMat bracket(const RatMat& a, const RatMat& b) {
  return rat_mat_sub(rat_mat_mul(a, b), rat_mat_mul(b, a));
}

}  // namespace

LieAlgebraBasis lie_closure(const std::vector<RatMat>& mats, int n) {
  RatSpan span(static_cast<std::size_t>(n) * n);
  std::vector<RatMat> basis;
  auto add = [&](const RatMat& m) {
    if (span.insert(flatten(m))) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (const auto& m : mats) add(m);
  // worklist: close under brackets
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (static_cast<int>(basis.size()) >= n * n) break;
      add(bracket(basis[i], basis[j]));
    }
  }
  LieAlgebraBasis out;
  out.n = n;
  out.matrices = std::move(basis);
  return out;
}

std::pair<int, LieAlgebraBasis> stabilized_algebra(const Connection& conn, const RatVec& x) {
  int n = conn.dim();
  int cap = n * n + 1;
  LieAlgebraBasis prev = lie_closure(generators_at(conn, x, 0), n);
  for (int k = 0; k <= cap; ++k) {
    LieAlgebraBasis next = lie_closure(generators_at(conn, x, k + 1), n);
    if (next.dim() == prev.dim()) return {k, prev};
    prev = std::move(next);
  }
  throw Error(ErrorKind::IterationCap, "holonomy chain failed to stabilize by n^2");
}

namespace {

// Numeric twin of the exact pipeline for connections tagged as floating:
// rank decisions use a relative threshold and the report says so.
LCReport lc_check_numeric(const Connection& conn, const RatVec& x, unsigned seed) {
  int n = conn.dim();
  LCReport rep;
  const double tol = 1e-9;

  auto to_dmat = [&](const RatMat& m) {
    std::vector<double> v;
    v.reserve(n * n);
    for (const auto& row : m)
      for (const auto& c : row) v.push_back(to_double(c));
    return v;
  };
  auto closure_dim = [&](int order) {
    std::vector<std::vector<double>> rows;  // orthonormalized
    std::vector<std::vector<double>> mats;
    double scale = 0.0;
    auto mat_norm = [&](const std::vector<double>& m) {
      double s = 0.0;
      for (double c : m) s += c * c;
      return std::sqrt(s);
    };
    auto add = [&](std::vector<double> m) {
      scale = std::max(scale, mat_norm(m));
      std::vector<double> r = m;
      for (const auto& q : rows) {
        double dot = 0.0;
        for (std::size_t t = 0; t < r.size(); ++t) dot += r[t] * q[t];
        for (std::size_t t = 0; t < r.size(); ++t) r[t] -= dot * q[t];
      }
      double nr = mat_norm(r);
      if (nr <= tol * std::max(scale, 1e-300)) return false;
      for (double& c : r) c /= nr;
      rows.push_back(std::move(r));
      mats.push_back(std::move(m));
      return true;
    };
    for (const RatMat& g : generators_at(conn, x, order)) add(to_dmat(g));
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<double> br(n * n, 0.0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int t = 0; t < n; ++t)
              acc += mats[i][a * n + t] * mats[j][t * n + b] -
                     mats[j][a * n + t] * mats[i][t * n + b];
            br[a * n + b] = acc;
          }
        add(std::move(br));
      }
    return static_cast<int>(rows.size());
  };

  int prev = closure_dim(0);
  int k = 0;
  for (; k <= n * n; ++k) {
    int next = closure_dim(k + 1);
    if (next == prev) break;
    prev = next;
  }
  rep.k_stable = k;
  rep.dim = prev;
  rep.notes = "numeric evaluation (threshold 1e-9)";
  if (rep.dim == 0) {
    rep.verdict = LCVerdict::MetricExistsAllSignatures;
  } else if (rep.dim > (n * n - n) / 2) {
    rep.verdict = LCVerdict::NoMetric;
  } else {
    rep.verdict = LCVerdict::Inconclusive;
    rep.notes += "; metric search is only performed on exact connections";
  }
  (void)seed;
  return rep;
}

}  // namespace

LCReport lc_check(const Connection& conn, const RatVec& x, unsigned seed) {
  if (conn.numeric()) return lc_check_numeric(conn, x, seed);
  int n = conn.dim();
  LCReport rep;
  auto [k, basis] = stabilized_algebra(conn, x);
  rep.k_stable = k;
  rep.dim = basis.dim();
  if (rep.dim == 0) {
    rep.verdict = LCVerdict::MetricExistsAllSignatures;
    rep.notes = "stabilized algebra is zero; every signature admits a metric";
    return rep;
  }
  if (rep.dim > (n * n - n) / 2) {
    rep.verdict = LCVerdict::NoMetric;
    rep.notes = "dim exceeds n(n-1)/2, no compatible metric exists";
    return rep;
  }
  // Solve X^T B + B X = 0 over symmetric B for every basis element X.
  int nb = n * (n + 1) / 2;
  std::vector<std::pair<int, int>> unk;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) unk.emplace_back(i, j);
  RatMat system;
  for (const RatMat& X : basis.matrices) {
    for (int p = 0; p < n; ++p) {
      for (int q = p; q < n; ++q) {
        RatVec row(nb, Rational(0));
        // (X^T B + B X)_pq = sum_u X_up B_uq + B_pu X_uq
        for (int u = 0; u < n; ++u) {
          auto slot = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            return std::distance(unk.begin(),
                                 std::find(unk.begin(), unk.end(), std::make_pair(a, b)));
          };
          row[slot(u, q)] += X[u][p];
          row[slot(p, u)] += X[u][q];
        }
        system.push_back(std::move(row));
      }
    }
  }
  auto null_basis = nullspace(system);
  if (null_basis.empty()) {
    rep.verdict = LCVerdict::Inconclusive;
    rep.notes = "no nonzero invariant symmetric form; the chain gives no verdict";
    return rep;
  }
  SplitMix64 rng(seed ^ 0x9027abcdULL);
  for (int attempt = 0; attempt < 50; ++attempt) {
    RatVec combo(nb, Rational(0));
    for (const auto& vb : null_basis) {
      long c = rng.uniform_int(-10, 10);
      if (c == 0) continue;
      for (int t = 0; t < nb; ++t) combo[t] += Rational(c) * vb[t];
    }
    RatMat B(n, RatVec(n, Rational(0)));
    for (int t = 0; t < nb; ++t) {
      B[unk[t].first][unk[t].second] = combo[t];
      B[unk[t].second][unk[t].first] = combo[t];
    }
    if (sign(determinant(B)) != 0) {
      Inertia in = inertia(B);
      rep.verdict = LCVerdict::MetricExists;
      rep.signature = std::make_pair(in.positive, in.negative);
      rep.sample_metric = B;
      rep.notes = "non-degenerate invariant form found";
      return rep;
    }
  }
  rep.verdict = LCVerdict::Inconclusive;
  rep.notes = "invariant forms exist but all sampled combinations were degenerate";
  return rep;
}

std::string lc_verdict_name(LCVerdict v) {
  switch (v) {
    case LCVerdict::MetricExistsAllSignatures: return "MetricExistsAllSignatures";
    case LCVerdict::MetricExists: return "MetricExists";
    case LCVerdict::NoMetric: return "NoMetric";
    case LCVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

}  // namespace gcx
