#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/connection.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

/// R^l_ijk = d Gamma^l_jk / dx_i - d Gamma^l_ik / dx_j
///           + sum_t (Gamma^t_jk Gamma^l_it - Gamma^t_ik Gamma^l_jt).
struct CurvatureTensor {
  int n = 0;
  std::vector<RatExpr> comp;  // index ((l*n + i)*n + j)*n + k

  const RatExpr& at(int l, int i, int j, int k) const {
    return comp[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k];
  }
  RatExpr& at(int l, int i, int j, int k) {
    return comp[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k];
  }
};

CurvatureTensor curvature(const Connection& conn);

/// Antisymmetry R^l_ijk + R^l_jik == 0, symbolically.
bool curvature_antisymmetric(const CurvatureTensor& r);

/// (1, s)-tensor field: one upper index l, s lower indices.
struct TensorField {
  int n = 0;
  int s = 0;
  std::vector<RatExpr> comp;  // index l * n^s + sum_a i_a * n^(s-1-a)

  static TensorField zero(int n, int s);
  const RatExpr& at(int l, const std::vector<int>& lower) const;
  RatExpr& at(int l, const std::vector<int>& lower);
};

/// The endomorphism slice u -> R(e_i, e_j, u) as a (1,1) field.
TensorField curvature_endomorphism(const CurvatureTensor& r, int i, int j);

/// Standard (1,s) covariant derivative; the differentiation slot is appended
/// as the last lower index.
TensorField covariant_derivative(const TensorField& t, const Connection& conn);

/// Generators of the holonomy candidates at x: for each 0 <= j <= k and each
/// index tuple, the matrix of (nabla^j applied to the curvature endomorphism
/// R(e_i1, e_i2, .)) contracted with e_i3..e_ij+2, evaluated at x. Pairs
/// pruned to i1 < i2. PoleAtPoint when a Gamma entry blows up at x.
std::vector<RatMat> generators_at(const Connection& conn, const RatVec& x, int k);

struct LieAlgebraBasis {
  int n = 0;
  std::vector<RatMat> matrices;  // linearly independent
  int dim() const { return static_cast<int>(matrices.size()); }
};

/// Span of the generators closed under [X,Y] = XY - YX (exact elimination).
LieAlgebraBasis lie_closure(const std::vector<RatMat>& mats, int n);

/// Iterates k = 0,1,... until span stabilizes (guaranteed at k <= n^2);
/// returns the first k with L_{k+1} = L_k and its basis.
std::pair<int, LieAlgebraBasis> stabilized_algebra(const Connection& conn, const RatVec& x);

enum class LCVerdict {
  MetricExistsAllSignatures,
  MetricExists,
  NoMetric,
  Inconclusive,
};

struct LCReport {
  int k_stable = 0;
  int dim = 0;
  LCVerdict verdict = LCVerdict::Inconclusive;
  std::optional<std::pair<int, int>> signature;  // (p, n-p) when MetricExists
  std::optional<RatMat> sample_metric;           // a non-degenerate solution B
  std::string notes;
};

/// Levi-Civita test at x: dim 0 -> all signatures; dim > (n^2-n)/2 -> no
/// metric; otherwise solve X^T B + B X = 0 over symmetric B and look for a
/// non-degenerate element (up to 50 seeded rational combinations).
LCReport lc_check(const Connection& conn, const RatVec& x, unsigned seed = 0);

std::string lc_verdict_name(LCVerdict v);

}  // namespace gcx
