#include "gcx/connection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "gcx/error.hpp"
#include "gcx/linalg.hpp"
#include "gcx/parser.hpp"
#include "gcx/rng.hpp"

namespace gcx {

using nlohmann::json;

void Connection::set_gamma(int i, int j, int k, RatExpr value) {
  if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
    throw Error(ErrorKind::IndexOutOfRange, "christoffel index out of range");
  gamma_[idx(j, i, k)] = value;
  gamma_[idx(i, j, k)] = std::move(value);
}

bool Connection::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (!(gamma(i, j, k) - gamma(j, i, k)).is_zero()) return false;
  return true;
}

bool Connection::is_zero() const {
  for (const auto& g : gamma_)
    if (!g.is_zero()) return false;
  return true;
}

std::string Connection::to_json(int indent) const {
  json j;
  j["n"] = n_;
  j["numeric"] = numeric_;
  json entries = json::object();
  auto names = default_names(n_);
  for (int i = 0; i < n_; ++i)
    for (int jj = i; jj < n_; ++jj)
      for (int k = 0; k < n_; ++k) {
        const RatExpr& g = gamma(i, jj, k);
        if (g.is_zero()) continue;
        std::string key = std::to_string(i + 1) + "," + std::to_string(jj + 1) + "," +
                          std::to_string(k + 1);
        entries[key] = g.to_string(names);
      }
  j["gamma"] = std::move(entries);
  return indent >= 0 ? j.dump(indent) : j.dump();
}

Connection Connection::from_json(const std::string& text) {
  json j = json::parse(text);
  int n = j.at("n").get<int>();
  if (n <= 0) throw Error(ErrorKind::BadInput, "connection dimension must be positive");
  Connection conn(n);
  conn.numeric_ = j.value("numeric", false);
  auto names = default_names(n);
  for (auto& [key, value] : j.at("gamma").items()) {
    int i = 0, jj = 0, k = 0;
    if (std::sscanf(key.c_str(), "%d,%d,%d", &i, &jj, &k) != 3)
      throw Error(ErrorKind::BadInput, "bad christoffel key: " + key);
    if (i < 1 || jj < 1 || k < 1 || i > n || jj > n || k > n)
      throw Error(ErrorKind::BadInput, "christoffel key out of range: " + key);
    conn.set_gamma(i - 1, jj - 1, k - 1, parse_ratexpr(value.get<std::string>(), names));
  }
  return conn;
}

std::vector<std::vector<RatExpr>> zero_target(int n) {
  return std::vector<std::vector<RatExpr>>(n, std::vector<RatExpr>(n, RatExpr::zero(n)));
}

std::vector<std::vector<RatExpr>> hessian_under(const Polynomial& f, const Connection& conn) {
  int n = f.nvars();
  if (n != conn.dim())
    throw Error(ErrorKind::DimensionMismatch, "function/connection dimension mismatch");
  std::vector<RatExpr> grad;
  grad.reserve(n);
  for (int i = 0; i < n; ++i) grad.push_back(RatExpr(f.derivative(i)));
  auto out = zero_target(n);
  for (int i = 0; i < n; ++i) {
    Polynomial fi = f.derivative(i);
    for (int j = i; j < n; ++j) {
      RatExpr h = RatExpr(fi.derivative(j));
      for (int k = 0; k < n; ++k) {
        const RatExpr& g = conn.gamma(i, j, k);
        if (g.is_zero() || grad[k].is_zero()) continue;
        h -= g * grad[k];
      }
      out[i][j] = h;
      out[j][i] = std::move(h);
    }
  }
  return out;
}

Connection construct_no_critical(const Polynomial& f,
                                 const std::vector<std::vector<RatExpr>>& target,
                                 bool verify) {
  int n = f.nvars();
  if (verify) {
    auto decided = has_no_critical_point(f);
    if (decided.has_value() && !*decided)
      throw Error(ErrorKind::CriticalPointDetected,
                  "function has a critical point; the construction would be singular");
  }
  std::vector<Polynomial> grad = gradient(f);
  Polynomial norm2(n);
  for (const auto& g : grad) norm2 += g * g;
  if (norm2.is_zero())
    throw Error(ErrorKind::CriticalPointDetected, "gradient vanishes identically");
  Connection conn(n);
  for (int i = 0; i < n; ++i) {
    Polynomial fi = f.derivative(i);
    for (int j = i; j < n; ++j) {
      Polynomial fij = fi.derivative(j);
      RatExpr coeff = (RatExpr(fij) - target[i][j]) / RatExpr(norm2);
      if (coeff.is_zero()) continue;
      for (int k = 0; k < n; ++k) {
        if (grad[k].is_zero()) continue;
        conn.set_gamma(i, j, k, coeff * RatExpr(grad[k]));
      }
    }
  }
  return conn;
}

Connection construct_no_critical(const Polynomial& f, bool verify) {
  return construct_no_critical(f, zero_target(f.nvars()), verify);
}

double NormalForm::reconstruction_error(const QuadraticForm& q, int samples) const {
  SplitMix64 rng(12345);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> y(n);
    for (auto& c : y) c = 2.0 * rng.uniform_pm1();
    // x = Q^T (y - v)
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x[i] += Q[j][i] * (y[j] - v[j]);
    double fx = to_double(q.c);
    for (int i = 0; i < n; ++i) {
      fx += to_double(q.b[i]) * x[i];
      for (int j = 0; j < n; ++j) fx += 0.5 * to_double(q.A[i][j]) * x[i] * x[j];
    }
    double nf = kappa;
    for (int i = 0; i < r; ++i) nf += mu[i] * y[i] * y[i];
    for (int j = r; j < n; ++j) nf += nu[j] * y[j];
    worst = std::max(worst, std::fabs(fx - nf));
  }
  return worst;
}

NormalForm quadratic_normal_form(const QuadraticForm& q) {
  int n = q.n();
  {
    RatMat aug = q.A;
    for (int i = 0; i < n; ++i) aug[i].push_back(q.b[i]);
    if (rank_fraction_free(aug) <= rank_fraction_free(q.A))
      throw Error(ErrorKind::HasCriticalPoint, "quadratic has a critical point");
  }
  NormalForm nf;
  nf.n = n;

  bool diagonal = true;
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      scale = std::max(scale, std::fabs(to_double(q.A[i][j])));
      if (i != j && sign(q.A[i][j]) != 0) diagonal = false;
    }
  if (scale == 0.0) scale = 1.0;
  const double eig_tol = 1e-10 * scale;

  std::vector<double> lambda(n);
  if (diagonal) {
    nf.q_is_identity = true;
    nf.Q.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      nf.Q[i][i] = 1.0;
      lambda[i] = to_double(q.A[i][i]);
    }
  } else {
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = to_double(q.A[i][j]);
    SymmetricEigen eig = jacobi_eigen(a);
    nf.Q = eig.rot;
    lambda = eig.values;
  }

  // order: nonzero eigenvalues first
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    bool za = std::fabs(lambda[a]) <= eig_tol, zb = std::fabs(lambda[b]) <= eig_tol;
    return za < zb;
  });
  std::vector<std::vector<double>> Qs(n);
  std::vector<double> ls(n);
  for (int i = 0; i < n; ++i) {
    Qs[i] = nf.Q[order[i]];
    ls[i] = lambda[order[i]];
  }
  nf.Q = std::move(Qs);
  if (!std::is_sorted(order.begin(), order.end())) nf.q_is_identity = false;

  int r = 0;
  while (r < n && std::fabs(ls[r]) > eig_tol) ++r;
  nf.r = r;

  // b' = Q b
  std::vector<double> bp(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bp[i] += nf.Q[i][j] * to_double(q.b[j]);

  nf.mu.resize(r);
  nf.v.assign(n, 0.0);
  nf.nu.assign(n, 0.0);
  nf.kappa = to_double(q.c);
  for (int i = 0; i < r; ++i) {
    nf.mu[i] = ls[i] / 2.0;
    nf.v[i] = bp[i] / ls[i];
    nf.kappa -= bp[i] * bp[i] / (2.0 * ls[i]);
  }
  for (int j = r; j < n; ++j) nf.nu[j] = bp[j];

  bool some_nu = false;
  for (int j = r; j < n; ++j) some_nu |= (nf.nu[j] != 0.0);
  if (!some_nu)
    throw Error(ErrorKind::NumericalFailure,
                "no linear direction survived the eigendecomposition");
  return nf;
}

FlatQuadratic construct_quadratic_flat(const QuadraticForm& q) {
  FlatQuadratic out;
  out.nf = quadratic_normal_form(q);
  const NormalForm& nf = out.nf;
  int n = nf.n, r = nf.r;

  int j0 = r;
  for (int j = r + 1; j < n; ++j)
    if (std::fabs(nf.nu[j]) > std::fabs(nf.nu[j0])) j0 = j;
  out.pivot = j0;

  // exact dyadic copies of the floating normal form
  std::vector<Rational> mu_r(r), nu_r(n);
  for (int i = 0; i < r; ++i) mu_r[i] = rational_from_double(nf.mu[i]);
  for (int j = r; j < n; ++j) nu_r[j] = rational_from_double(nf.nu[j]);

  Polynomial F(n);
  for (int i = 0; i < r; ++i) {
    ExponentVec e(n, 0);
    e[i] = 2;
    F.add_term(e, mu_r[i]);
  }
  for (int j = r; j < n; ++j) {
    if (sign(nu_r[j]) == 0) continue;
    ExponentVec e(n, 0);
    e[j] = 1;
    F.add_term(e, nu_r[j]);
  }
  F.add_term(ExponentVec(n, 0), rational_from_double(nf.kappa));
  out.normal_polynomial = F;

  Connection flat(n);
  for (int p = 0; p < r; ++p) {
    Rational g = Rational(2) * mu_r[p] / nu_r[j0];
    flat.set_gamma(p, p, j0, RatExpr::constant(n, g));
  }
  out.in_normal_coords = flat;

  if (nf.q_is_identity) {
    // exact pullback: constants survive, only the coordinate shift changes,
    // which leaves Christoffel symbols untouched
    out.in_input_coords = flat;
  } else {
    Connection pulled(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int p = 0; p < r; ++p) {
            double g = to_double(Rational(2) * mu_r[p] / nu_r[j0]);
            acc += nf.Q[j0][k] * nf.Q[p][i] * nf.Q[p][j] * g;
          }
          if (acc != 0.0)
            pulled.set_gamma(i, j, k, RatExpr::constant(n, rational_from_double(acc)));
        }
    pulled.set_numeric(true);
    out.in_input_coords = pulled;
  }
  return out;
}

HessianCheck verify_hessian_target(const Polynomial& f, const Connection& conn,
                                   const std::vector<std::vector<RatExpr>>& target,
                                   int samples, unsigned seed) {
  int n = f.nvars();
  auto h = hessian_under(f, conn);
  if (!conn.numeric()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(h[i][j] - target[i][j]).is_zero()) return {false, true, 0.0};
    return {true, true, 0.0};
  }
  SplitMix64 rng(seed ^ 0x5bd1e995u);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(n);
    for (auto& c : x) c = 2.0 * rng.uniform_pm1();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double d = h[i][j].denominator_at(x);
        if (std::fabs(d) < 1e-9) continue;  // next to a pole
        worst = std::max(worst,
                         std::fabs(h[i][j].evaluate(x) - target[i][j].evaluate(x)));
      }
  }
  return {worst <= 1e-8, false, worst};
}

HessianCheck verify_hessian_target(const Polynomial& f, const Connection& conn) {
  return verify_hessian_target(f, conn, zero_target(f.nvars()));
}

}  // namespace gcx
