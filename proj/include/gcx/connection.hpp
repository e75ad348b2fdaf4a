#pragma once

#include <string>
#include <vector>

#include "gcx/classify.hpp"
#include "gcx/polynomial.hpp"
#include "gcx/ratexpr.hpp"

namespace gcx {

/// Torsion-free connection on R^n: gamma(i,j,k) = Gamma^k_ij, symmetric in
/// (i,j). Entries are exact rational functions; `numeric` marks connections
/// whose entries came from floating point (pullbacks through a float Q), for
/// which only sampled verification is claimed.
class Connection {
 public:
  Connection() : n_(0) {}
  explicit Connection(int n)
      : n_(n), gamma_(static_cast<std::size_t>(n) * n * n, RatExpr::zero(n)) {}

  static Connection zero(int n) { return Connection(n); }

  int dim() const { return n_; }
  bool numeric() const { return numeric_; }
  void set_numeric(bool v) { numeric_ = v; }

  const RatExpr& gamma(int i, int j, int k) const { return gamma_[idx(i, j, k)]; }
  /// Sets Gamma^k_ij and Gamma^k_ji.
  void set_gamma(int i, int j, int k, RatExpr value);

  bool is_symmetric() const;  // torsion-free check, symbolic
  bool is_zero() const;

  std::string to_json(int indent = -1) const;
  static Connection from_json(const std::string& text);

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  bool numeric_ = false;
  std::vector<RatExpr> gamma_;
};

/// Hess_conn f = d2f/dxi dxj - sum_k Gamma^k_ij df/dxk, canonicalized.
std::vector<std::vector<RatExpr>> hessian_under(const Polynomial& f, const Connection& conn);

/// Gamma^k_ij = (f_ij - a_ij) f_k / |grad f|^2 (Euclidean g, S = 0); the
/// result satisfies hessian_under(f, .) == target symbolically. Denominators
/// vanish exactly on the critical set of f. When `verify` is set and f lies in
/// a class where critical-point freeness is decidable, a failed check throws
/// CriticalPointDetected.
Connection construct_no_critical(const Polynomial& f,
                                 const std::vector<std::vector<RatExpr>>& target,
                                 bool verify = true);
Connection construct_no_critical(const Polynomial& f, bool verify = true);

/// f(Q^T(y - v)) = sum mu_i y_i^2 + sum nu_j y_j + kappa, rank(A) = r.
struct NormalForm {
  int n = 0;
  int r = 0;
  std::vector<std::vector<double>> Q;  // row i = eigenvector of A
  std::vector<double> v;
  std::vector<double> mu;              // size r, nonzero
  std::vector<double> nu;              // size n, entries 0..r-1 are zero
  double kappa = 0.0;
  bool q_is_identity = false;

  double reconstruction_error(const QuadraticForm& q, int samples = 32) const;
};

/// Requires rank([A|b]) > rank(A) (HasCriticalPoint otherwise); floating
/// Jacobi eigendecomposition, eigenvalues below 1e-10 * |A| treated as zero.
NormalForm quadratic_normal_form(const QuadraticForm& q);

/// Flat constant-Christoffel connection with vanishing Hessian for a
/// quadratic without critical points.
struct FlatQuadratic {
  NormalForm nf;
  /// Connection in normal-form coordinates; exact rationals (dyadic values of
  /// the floating mu/nu), zero curvature and zero Hessian symbolically.
  Connection in_normal_coords;
  /// Same connection pulled back to the input coordinates; tagged numeric
  /// unless Q was the identity.
  Connection in_input_coords;
  /// Normal-form polynomial with the dyadic coefficients actually used.
  Polynomial normal_polynomial;
  int pivot;  // j0, the nu index divided by
};
FlatQuadratic construct_quadratic_flat(const QuadraticForm& q);

struct HessianCheck {
  bool ok;
  bool symbolic;        // true: canonical zero test; false: sampled
  double max_residual;  // sampled mode
};
/// Symbolic zero check of hessian_under(f, conn) - target; numeric-tagged
/// connections are checked at sampled points instead.
HessianCheck verify_hessian_target(const Polynomial& f, const Connection& conn,
                                   const std::vector<std::vector<RatExpr>>& target,
                                   int samples = 1000, unsigned seed = 0);
HessianCheck verify_hessian_target(const Polynomial& f, const Connection& conn);

std::vector<std::vector<RatExpr>> zero_target(int n);

}  // namespace gcx
