#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcx/linalg.hpp"
#include "gcx/rng.hpp"

using namespace gcx;

namespace {

RatMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMat m;
  for (auto& r : rows) {
    RatVec row;
    for (long v : r) row.push_back(Rational(v));
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("fraction-free rank") {
  CHECK(rank_fraction_free(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(rank_fraction_free(mat({{1, 0}, {0, 1}})) == 2);
  CHECK(rank_fraction_free(mat({{2, 0, 0}, {0, 0, 1}})) == 2);
  CHECK(rank_fraction_free(mat({{0, 0}, {0, 0}})) == 0);
  // rationals with denominators
  RatMat m = {{rational(1, 2), rational(1, 3)}, {rational(3, 2), Rational(1)}};
  CHECK(rank_fraction_free(m) == 2);
}

TEST_CASE("linear solve and nullspace") {
  auto x = solve_linear(mat({{2, 0}, {0, 0}}), {Rational(4), Rational(0)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK(!solve_linear(mat({{1, 1}, {1, 1}}), {Rational(0), Rational(1)}).has_value());

  auto ns = nullspace(mat({{1, 1, 0}}));
  CHECK(ns.size() == 2);
  for (auto& v : ns) CHECK(v[0] + v[1] == 0);
}

TEST_CASE("determinant and characteristic minor sums") {
  CHECK(determinant(mat({{2, 1}, {1, 2}})) == 3);
  CHECK(determinant(mat({{1, 2}, {2, 4}})) == 0);

  auto e = charpoly_minor_sums(mat({{1, 2}, {2, 1}}));
  CHECK(e[0] == 2);   // trace
  CHECK(e[1] == -3);  // det

  auto e3 = charpoly_minor_sums(mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}));
  CHECK(e3[0] == 10);
  CHECK(e3[1] == 31);  // 6 + 10 + 15
  CHECK(e3[2] == 30);
}

TEST_CASE("exact psd and inertia") {
  CHECK(is_psd(mat({{2, 0}, {0, 0}})));
  CHECK(is_psd(mat({{2, 1}, {1, 2}})));
  CHECK(!is_psd(mat({{1, 2}, {2, 1}})));
  CHECK(!is_psd(mat({{-2, 0}, {0, 2}})));
  CHECK(is_positive_definite(mat({{2, 1}, {1, 2}})));
  CHECK(!is_positive_definite(mat({{2, 0}, {0, 0}})));

  Inertia in = inertia(mat({{-2, 0}, {0, 3}}));
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 0);

  Inertia zero_block = inertia(mat({{0, 0}, {0, 5}}));
  CHECK(zero_block.zero == 1);
  CHECK(zero_block.positive == 1);

  // eigenvalue multiset {2,-1,-1}: chi = t^3 - 0 t^2 - 3 t - 2... sign pattern
  Inertia rep = inertia(mat({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK(rep.positive == 1);
  CHECK(rep.negative == 2);
}

TEST_CASE("rational span tracker") {
  RatSpan span(3);
  CHECK(span.insert({Rational(1), Rational(0), Rational(0)}));
  CHECK(span.insert({Rational(1), Rational(1), Rational(0)}));
  CHECK(!span.insert({Rational(3), Rational(2), Rational(0)}));
  CHECK(span.dim() == 2);
  CHECK(span.contains({Rational(5), Rational(-1), Rational(0)}));
  CHECK(!span.contains({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("jacobi eigensolver") {
  SplitMix64 rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + static_cast<int>(rng.uniform_int(0, 3));
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a[i][j] = a[j][i] = rng.uniform_pm1();
    SymmetricEigen eig = jacobi_eigen(a);
    // rot A rot^T == diag(values) and rot rot^T == I
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double rart = 0.0, rrt = 0.0;
        for (int p = 0; p < n; ++p) {
          rrt += eig.rot[i][p] * eig.rot[j][p];
          for (int q = 0; q < n; ++q) rart += eig.rot[i][p] * a[p][q] * eig.rot[j][q];
        }
        double expected = (i == j) ? eig.values[i] : 0.0;
        CHECK(std::fabs(rart - expected) < 1e-9);
        CHECK(std::fabs(rrt - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}
