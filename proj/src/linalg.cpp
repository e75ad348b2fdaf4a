#include "gcx/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "gcx/error.hpp"

namespace gcx {

RatMat rat_identity(int n) {
  RatMat m(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rat_mat_mul(const RatMat& a, const RatMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat r(n, RatVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (sign(a[i][t]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

RatMat rat_mat_sub(const RatMat& a, const RatMat& b) {
  RatMat r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

RatMat rat_mat_transpose(const RatMat& a) {
  if (a.empty()) return a;
  RatMat r(a[0].size(), RatVec(a.size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

int rank_fraction_free(const RatMat& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  // clear denominators row-wise
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer lcm(1);
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m[i][j].get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      Rational scaled = m[i][j] * Rational(lcm);
      a[i][j] = scaled.get_num();
    }
  }
  Integer prev_pivot(1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && sign(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Integer pivot = a[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer t = a[i][j] * pivot - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev_pivot = pivot;
    ++rank;
  }
  return static_cast<int>(rank);
}

namespace {

// Gauss-Jordan to reduced row echelon; returns pivot column per row.
std::vector<std::size_t> rref(RatMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && sign(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rational inv = Rational(1) / a[r][col];
    for (std::size_t j = col; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sign(a[i][col]) == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  a.resize(r);
  return pivots;
}

}  // namespace

std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  RatMat aug(rows, RatVec(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy(a[i].begin(), a[i].end(), aug[i].begin());
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  RatVec x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // 0 = nonzero row
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

std::vector<RatVec> nullspace(const RatMat& a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  RatMat m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const RatMat& a) {
  int n = static_cast<int>(a.size());
  RatMat m = a;
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sign(m[piv][col]) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (int i = col + 1; i < n; ++i) {
      if (sign(m[i][col]) == 0) continue;
      Rational f = m[i][col] * inv;
      for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return det;
}

RatVec charpoly_minor_sums(const RatMat& a) {
  int n = static_cast<int>(a.size());
  // power sums p_k = tr(A^k), then Newton's identities
  RatVec p(n + 1, Rational(0));
  RatMat m = a;
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) p[k] += m[i][i];
    if (k < n) m = rat_mat_mul(a, m);
  }
  RatVec e(n + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k; ++i) {
      Rational t = e[k - i] * p[i];
      acc += (i % 2 ? t : -t);
    }
    e[k] = acc / Rational(k);
  }
  return RatVec(e.begin() + 1, e.end());
}

bool is_psd(const RatMat& a) {
  for (const Rational& ek : charpoly_minor_sums(a))
    if (sign(ek) < 0) return false;
  return true;
}

bool is_positive_definite(const RatMat& a) {
  for (const Rational& ek : charpoly_minor_sums(a))
    if (sign(ek) <= 0) return false;
  return true;
}

Inertia inertia(const RatMat& a) {
  int n = static_cast<int>(a.size());
  RatVec e = charpoly_minor_sums(a);
  // p(t) = t^n - e1 t^{n-1} + ... + (-1)^n e_n, all roots real.
  // Descartes: positive roots (with multiplicity) = sign variations.
  std::vector<Rational> coeffs;  // from t^n downward
  coeffs.push_back(Rational(1));
  for (int k = 1; k <= n; ++k) coeffs.push_back((k % 2 ? -e[k - 1] : e[k - 1]));
  Inertia in;
  // zero eigenvalues: trailing zero coefficients
  int z = 0;
  while (z < n && sign(coeffs[n - z]) == 0) ++z;
  in.zero = z;
  int last = 0;
  int variations = 0;
  int lastsign = 1;  // leading coefficient
  for (int k = 1; k <= n - z; ++k) {
    int s = sign(coeffs[k]);
    if (s == 0) continue;
    if (s != lastsign) ++variations;
    lastsign = s;
    last = k;
  }
  (void)last;
  in.positive = variations;
  in.negative = n - z - variations;
  return in;
}

bool RatSpan::insert(RatVec v) {
  reduce(v);
  std::size_t piv = dim_;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (sign(v[j]) != 0) {
      piv = j;
      break;
    }
  }
  if (piv == dim_) return false;
  Rational inv = Rational(1) / v[piv];
  for (auto& x : v) x *= inv;
  // keep earlier rows reduced against the new one
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (sign(rows_[r][piv]) != 0) {
      Rational f = rows_[r][piv];
      for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] -= f * v[j];
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool RatSpan::contains(RatVec v) const {
  reduce(v);
  for (const auto& x : v)
    if (sign(x) != 0) return false;
  return true;
}

void RatSpan::reduce(RatVec& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational& f = v[pivots_[r]];
    if (sign(f) == 0) continue;
    Rational factor = f;
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= factor * rows_[r][j];
  }
}

SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a, int max_sweeps) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
    return s;
  };
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  if (scale == 0.0) scale = 1.0;
  const double tol = 1e-30 * scale * scale;

  int sweep = 0;
  while (offdiag() > tol) {
    if (++sweep > max_sweeps)
      throw Error(ErrorKind::NumericalFailure, "jacobi eigensolver did not converge");
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) <= 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vpk = v[p][k], vqk = v[q][k];
          v[p][k] = c * vpk - s * vqk;
          v[q][k] = s * vpk + c * vqk;
        }
      }
    }
  }
  SymmetricEigen out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = a[i][i];
  out.rot = std::move(v);
  return out;
}

double smallest_eigenvalue(const std::vector<std::vector<double>>& a) {
  SymmetricEigen e = jacobi_eigen(a);
  double m = e.values.empty() ? 0.0 : e.values[0];
  for (double x : e.values) m = std::min(m, x);
  return m;
}

}  // namespace gcx
