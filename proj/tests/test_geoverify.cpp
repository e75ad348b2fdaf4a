#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcx/connection.hpp"
#include "gcx/error.hpp"
#include "gcx/geoverify.hpp"
#include "gcx/parser.hpp"

using namespace gcx;

namespace {

const std::vector<std::string> kX{"x1"};
const std::vector<std::string> kX2{"x1", "x2"};

double endpoint_error(const GeodesicPath& p, const std::vector<double>& expected) {
  double err = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    err = std::max(err, std::fabs(p.positions.back()[i] - expected[i]));
  return err;
}

}  // namespace

TEST_CASE("zero connection geodesics are straight lines") {
  GeodesicPath p =
      integrate_geodesic(Connection::zero(1), {0.0}, {1.0}, 1.0, 100);
  CHECK(endpoint_error(p, {1.0}) <= 1e-12);

  GeodesicPath p2 =
      integrate_geodesic(Connection::zero(2), {1.0, -2.0}, {0.5, 2.0}, 1.0, 100);
  CHECK(endpoint_error(p2, {1.5, 0.0}) <= 1e-12);
}

TEST_CASE("constructed connection makes the function affine along geodesics") {
  Polynomial f = parse_expression("x1^3 + x1", kX);
  Connection conn = construct_no_critical(f);
  GeodesicPath p = integrate_geodesic(conn, {0.0}, {1.0}, 1.0, 200);
  ConvexityReport conv = convexity_along(f, p, 1e-7);
  CHECK(conv.convex);
  // affine within second-difference noise from both sides
  CHECK(std::fabs(conv.min_second_difference) < 1e-7);
  ConvexityReport neg = convexity_along(-f, p, 1e-7);
  CHECK(neg.convex);

  FlatQuadratic flat = construct_quadratic_flat(
      to_quadratic_form(parse_expression("x1^2 + x2", kX2)));
  Polynomial q = parse_expression("x1^2 + x2", kX2);
  GeodesicPath pq = integrate_geodesic(flat.in_input_coords, {0.3, -1.0}, {1.0, 0.5}, 1.0, 200);
  CHECK(convexity_along(q, pq, 1e-7).convex);
  CHECK(std::fabs(convexity_along(q, pq, 1e-7).min_second_difference) < 1e-7);
}

TEST_CASE("convexity along straight lines matches plain convexity") {
  Polynomial sq = parse_expression("x1^2", kX);
  GeodesicPath line = integrate_geodesic(Connection::zero(1), {-1.0}, {1.0}, 2.0, 200);
  CHECK(convexity_along(sq, line, 1e-7).convex);

  Polynomial cube = parse_expression("x1^3", kX);
  GeodesicPath left = integrate_geodesic(Connection::zero(1), {-2.0}, {1.0}, 1.0, 200);
  ConvexityReport rep = convexity_along(cube, left, 1e-7);
  CHECK(!rep.convex);
  CHECK(rep.min_second_difference < 0.0);
}

TEST_CASE("rk4 shows fourth-order error decay on the benchmark symbol") {
  // Gamma = 6x/(3x^2+1), the certificate for x^3 + x
  Polynomial f = parse_expression("x1^3 + x1", kX);
  Connection conn = construct_no_critical(f);
  auto endpoint = [&](int steps) {
    return integrate_geodesic(conn, {0.0}, {1.0}, 1.0, steps).positions.back()[0];
  };
  double reference = endpoint(2000);  // 10x finer than the finest probe
  double e1 = std::fabs(endpoint(50) - reference);
  double e2 = std::fabs(endpoint(100) - reference);
  double ratio = e1 / e2;
  CHECK(ratio > 10.0);
  CHECK(ratio < 26.0);
}

TEST_CASE("pole handling aborts honestly") {
  // the certificate symbol for x^2 blows up at the critical point 0
  Polynomial f = parse_expression("x1^2", kX);
  Connection conn = construct_no_critical(f, false);  // caller-asserted
  CHECK_THROWS_AS(integrate_geodesic(conn, {1.0}, {-10.0}, 1.0, 200), Error);
}

TEST_CASE("hessian psd sampling") {
  PsdSampleReport ok = sample_hessian_psd(parse_expression("x1^2 + x2^2", kX2),
                                          Connection::zero(2), -1, 1, 500, 1e-7, 3);
  CHECK(ok.violations == 0);

  Polynomial f = parse_expression("x1^3 + x1", kX);
  PsdSampleReport affine =
      sample_hessian_psd(f, construct_no_critical(f), -2, 2, 500, 1e-7, 3);
  CHECK(affine.violations == 0);

  PsdSampleReport bad = sample_hessian_psd(parse_expression("x1^2*x2^2", kX2),
                                           Connection::zero(2), -1, 1, 500, 1e-7, 3);
  CHECK(bad.violations > 0);
  CHECK(bad.worst_eigenvalue < 0.0);
}

TEST_CASE("sampling kernels are deterministic and mode-independent") {
  Polynomial f = parse_expression("x1^2 + x2^2", kX2);
  auto a = sample_hessian_psd(f, Connection::zero(2), -1, 1, 400, 1e-7, 11, false);
  auto b = sample_hessian_psd(f, Connection::zero(2), -1, 1, 400, 1e-7, 11, true);
  CHECK(a.violations == b.violations);
  CHECK(a.skipped_near_pole == b.skipped_near_pole);
  CHECK(a.worst_eigenvalue == b.worst_eigenvalue);

  Polynomial g = parse_expression("x1^3 + x1", kX);
  Connection conn = construct_no_critical(g);
  CHECK(check_geodesics_convex(g, conn, 40, 1.0, 100, 1e-7, 5, false) ==
        check_geodesics_convex(g, conn, 40, 1.0, 100, 1e-7, 5, true));
}

TEST_CASE("pullback geodesics match normal-form geodesics") {
  Polynomial rot = parse_expression("x1^2 + 2*x1*x2 + x2^2 + x1 - x2", kX2);
  FlatQuadratic fr = construct_quadratic_flat(to_quadratic_form(rot));
  const NormalForm& nf = fr.nf;

  // y = Q x + v maps input-coordinate states to normal-form states
  std::vector<double> x0{0.2, -0.4}, v0{1.0, 0.3};
  std::vector<double> y0(2, 0.0), w0(2, 0.0);
  for (int i = 0; i < 2; ++i) {
    y0[i] = nf.v[i];
    for (int j = 0; j < 2; ++j) {
      y0[i] += nf.Q[i][j] * x0[j];
      w0[i] += nf.Q[i][j] * v0[j];
    }
  }
  GeodesicPath px = integrate_geodesic(fr.in_input_coords, x0, v0, 1.0, 200);
  GeodesicPath py = integrate_geodesic(fr.in_normal_coords, y0, w0, 1.0, 200);
  for (std::size_t s = 0; s < px.positions.size(); s += 20) {
    for (int i = 0; i < 2; ++i) {
      double mapped = nf.v[i];
      for (int j = 0; j < 2; ++j) mapped += nf.Q[i][j] * px.positions[s][j];
      CHECK(std::fabs(mapped - py.positions[s][i]) < 1e-7);
    }
  }
}
