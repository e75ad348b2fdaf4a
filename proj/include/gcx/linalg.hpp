#pragma once

#include <optional>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row major

RatMat rat_identity(int n);
RatMat rat_mat_mul(const RatMat& a, const RatMat& b);
RatMat rat_mat_sub(const RatMat& a, const RatMat& b);
RatMat rat_mat_transpose(const RatMat& a);

/// Rank via fraction-free (Bareiss) elimination on a denominator-cleared
/// integer copy.
int rank_fraction_free(const RatMat& m);

/// A particular solution of Ax = b, or nullopt when inconsistent.
std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b);

/// Basis of the nullspace of A (exact Gauss-Jordan).
std::vector<RatVec> nullspace(const RatMat& a);

Rational determinant(const RatMat& a);

/// Coefficients e_1..e_n with det(tI - A) = t^n - e_1 t^{n-1} + e_2 t^{n-2} -
/// ... + (-1)^n e_n; e_k is the sum of k x k principal minors
/// (Faddeev-LeVerrier).
RatVec charpoly_minor_sums(const RatMat& a);

/// Exact PSD test for symmetric A: all principal-minor sums non-negative.
bool is_psd(const RatMat& a);
bool is_positive_definite(const RatMat& a);

/// (positives, negatives, zeros) of a symmetric matrix: Descartes count on the
/// characteristic polynomial, exact since all eigenvalues are real.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Inertia inertia(const RatMat& a);

/// Incremental exact span tracker for vectors over Q.
class RatSpan {
 public:
  explicit RatSpan(std::size_t dim) : dim_(dim) {}

  /// Reduces v against the basis; inserts the residue when nonzero.
  /// Returns true if the span grew.
  bool insert(RatVec v);
  bool contains(RatVec v) const;
  std::size_t dim() const { return rows_.size(); }
  const std::vector<RatVec>& basis() const { return rows_; }

 private:
  void reduce(RatVec& v) const;
  std::size_t dim_;
  std::vector<RatVec> rows_;     // echelon rows, pivot normalized to 1
  std::vector<std::size_t> pivots_;
};

/// Cyclic Jacobi eigendecomposition for a symmetric matrix (doubles).
/// Returns eigenvalues and a rotation with rot * A * rot^T = diag(values):
/// row i of `rot` is the eigenvector of values[i].
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> rot;
};
SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a, int max_sweeps = 64);

double smallest_eigenvalue(const std::vector<std::vector<double>>& a);

}  // namespace gcx
