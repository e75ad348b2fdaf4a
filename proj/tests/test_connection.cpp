#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcx/connection.hpp"
#include "gcx/error.hpp"
#include "gcx/parser.hpp"
#include "gcx/rng.hpp"

using namespace gcx;

namespace {

const std::vector<std::string> kX{"x1"};
const std::vector<std::string> kX2{"x1", "x2"};

Connection worked_example() {
  Connection conn(2);
  conn.set_gamma(0, 0, 0, parse_ratexpr("(4*x1)/(1 + 4*x1^2)", kX2));
  conn.set_gamma(0, 0, 1, parse_ratexpr("(2)/(1 + 4*x1^2)", kX2));
  conn.set_gamma(1, 1, 0, parse_ratexpr("1", kX2));
  conn.set_gamma(1, 1, 1, parse_ratexpr("-2*x1", kX2));
  return conn;
}

}  // namespace

TEST_CASE("hessian under a connection") {
  Polynomial f = parse_expression("x1^2*x2^2 + x1", kX2);
  auto h0 = hessian_under(f, Connection::zero(2));
  auto he = euclidean_hessian(f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(h0[i][j].equals(RatExpr(he[i][j])));

  // constant symbol cancels the curvature of x1^2 + x2 entirely
  Polynomial q = parse_expression("x1^2 + x2", kX2);
  Connection c(2);
  c.set_gamma(0, 0, 1, RatExpr::constant(2, Rational(2)));
  for (auto& row : hessian_under(q, c))
    for (auto& entry : row) CHECK(entry.is_zero());

  // the rational worked example does too
  for (auto& row : hessian_under(q, worked_example()))
    for (auto& entry : row) CHECK(entry.is_zero());

  CHECK_THROWS_AS(hessian_under(parse_expression("x1", kX), Connection::zero(2)), Error);
}

TEST_CASE("gamma construction for critical-point-free functions") {
  // 1-D linear: second derivative vanishes, so the symbol is zero
  Connection lin = construct_no_critical(parse_expression("x1", kX));
  CHECK(lin.is_zero());

  Connection cubic = construct_no_critical(parse_expression("x1^3 + x1", kX));
  CHECK(cubic.gamma(0, 0, 0).equals(parse_ratexpr("(6*x1)/(3*x1^2 + 1)", kX)));

  Connection quad = construct_no_critical(parse_expression("x1^2 + x2", kX2));
  CHECK(quad.gamma(0, 0, 0).equals(parse_ratexpr("(4*x1)/(4*x1^2 + 1)", kX2)));
  CHECK(quad.gamma(0, 0, 1).equals(parse_ratexpr("(2)/(4*x1^2 + 1)", kX2)));
  CHECK(quad.gamma(0, 1, 0).is_zero());
  CHECK(quad.gamma(1, 1, 1).is_zero());

  CHECK_THROWS_AS(construct_no_critical(parse_expression("x1^2", kX)), Error);
}

TEST_CASE("construction meets its hessian postcondition symbolically") {
  SplitMix64 rng(4);
  for (int iter = 0; iter < 60; ++iter) {
    // derivative = positive constant + even-power bumps keeps it rootless
    Polynomial f(1);
    f.add_term({1}, rational(1 + rng.uniform_int(0, 4)));
    int extra = static_cast<int>(rng.uniform_int(0, 2));
    for (int t = 0; t < extra; ++t) {
      unsigned odd = 3 + 2 * static_cast<unsigned>(rng.uniform_int(0, 2));
      f.add_term({odd}, rational(rng.uniform_int(1, 4)));
    }
    Connection conn = construct_no_critical(f);
    CHECK(verify_hessian_target(f, conn).ok);
    CHECK(conn.is_symmetric());

    // nonzero constant symmetric target
    auto target = zero_target(1);
    target[0][0] = RatExpr::constant(1, rational(rng.uniform_int(-3, 3)));
    Connection conn2 = construct_no_critical(f, target);
    CHECK(verify_hessian_target(f, conn2, target).ok);
  }

  // a multivariate instance with an explicit target
  Polynomial g = parse_expression("x1^2 + x1*x2 + x2", kX2);
  auto target = zero_target(2);
  target[0][0] = RatExpr::constant(2, Rational(1));
  target[0][1] = target[1][0] = RatExpr::constant(2, rational(1, 2));
  Connection conn = construct_no_critical(g, target, false);
  CHECK(verify_hessian_target(g, conn, target).ok);
}

TEST_CASE("quadratic normal form") {
  QuadraticForm q = to_quadratic_form(parse_expression("x1^2 + x2", kX2));
  NormalForm nf = quadratic_normal_form(q);
  CHECK(nf.r == 1);
  CHECK(nf.q_is_identity);
  CHECK(nf.mu[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nf.nu[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nf.kappa == doctest::Approx(0.0));
  CHECK(nf.reconstruction_error(q) < 1e-8);

  QuadraticForm lin = to_quadratic_form(parse_expression("x1", kX2));
  NormalForm nflin = quadratic_normal_form(lin);
  CHECK(nflin.r == 0);
  CHECK(std::fabs(nflin.nu[0]) + std::fabs(nflin.nu[1]) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal form refuses quadratics with critical points") {
  // A = [[0,1],[1,0]] is invertible, so rank([A|b]) == rank(A) no matter the
  // linear part and the constructor must refuse
  QuadraticForm sw = to_quadratic_form(parse_expression("x1*x2 + x1 + x2", kX2));
  CHECK_THROWS_AS(quadratic_normal_form(sw), Error);

  // rank-1 direction with a surviving linear part works
  QuadraticForm ok = to_quadratic_form(
      parse_expression("x1^2 + 2*x1*x2 + x2^2 + x1", kX2));  // A = 2[[1,1],[1,1]]
  NormalForm nf = quadratic_normal_form(ok);
  CHECK(nf.r == 1);
  CHECK(!nf.q_is_identity);
  CHECK(nf.reconstruction_error(ok) < 1e-8);
  // mu is the nonzero eigenvalue of A over two
  CHECK(nf.mu[0] == doctest::Approx(2.0).epsilon(1e-10));
  double qtq = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double dot = 0.0;
      for (int p = 0; p < 2; ++p) dot += nf.Q[p][i] * nf.Q[p][j];
      qtq = std::max(qtq, std::fabs(dot - (i == j ? 1.0 : 0.0)));
    }
  CHECK(qtq < 1e-10);
}

TEST_CASE("flat connection for quadratics") {
  FlatQuadratic flat = construct_quadratic_flat(
      to_quadratic_form(parse_expression("x1^2 + x2", kX2)));
  CHECK(flat.in_normal_coords.gamma(0, 0, 1).equals(RatExpr::constant(2, Rational(2))));
  CHECK(flat.in_normal_coords.gamma(0, 0, 0).is_zero());
  CHECK(!flat.in_input_coords.numeric());
  CHECK(verify_hessian_target(parse_expression("x1^2 + x2", kX2),
                              flat.in_input_coords).ok);

  FlatQuadratic lin = construct_quadratic_flat(to_quadratic_form(parse_expression("x2", kX2)));
  CHECK(lin.in_normal_coords.is_zero());

  FlatQuadratic neg = construct_quadratic_flat(
      to_quadratic_form(parse_expression("2*x1^2 - x2", kX2)));
  CHECK(neg.in_normal_coords.gamma(0, 0, 1).equals(RatExpr::constant(2, Rational(-4))));

  // normal-form polynomial is annihilated symbolically
  CHECK(verify_hessian_target(neg.normal_polynomial, neg.in_normal_coords).ok);

  // rotated instance: pullback is numeric, verified by sampling
  Polynomial rot = parse_expression("x1^2 + 2*x1*x2 + x2^2 + x1 - x2", kX2);
  FlatQuadratic fr = construct_quadratic_flat(to_quadratic_form(rot));
  CHECK(fr.in_input_coords.numeric());
  HessianCheck check = verify_hessian_target(rot, fr.in_input_coords);
  CHECK(!check.symbolic);
  CHECK(check.ok);
  CHECK(check.max_residual <= 1e-8);
  CHECK(verify_hessian_target(fr.normal_polynomial, fr.in_normal_coords).ok);
}

TEST_CASE("verify reports failures with residuals") {
  Polynomial f = parse_expression("x1^2", kX);
  HessianCheck check = verify_hessian_target(f, Connection::zero(1));
  CHECK(!check.ok);
  auto h = hessian_under(f, Connection::zero(1));
  CHECK(h[0][0].equals(RatExpr::constant(1, Rational(2))));
}

TEST_CASE("connection serialization round trip") {
  Connection conn = worked_example();
  std::string text = conn.to_json(2);
  Connection back = Connection::from_json(text);
  CHECK(back.dim() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(back.gamma(i, j, k).equals(conn.gamma(i, j, k)));
  CHECK(!back.numeric());

  Connection num = Connection::zero(1);
  num.set_numeric(true);
  CHECK(Connection::from_json(num.to_json()).numeric());

  CHECK_THROWS_AS(Connection::from_json("{\"n\":0,\"gamma\":{}}"), Error);
}
