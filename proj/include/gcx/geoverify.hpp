#pragma once

#include <cstdint>
#include <vector>

#include "gcx/connection.hpp"

namespace gcx {

struct GeodesicPath {
  std::vector<double> times;
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
};

/// Classical RK4 on the first-order reduction of xdd^k = -Gamma^k_ij xd^i xd^j.
/// PoleEncountered when a Gamma denominator drops below 1e-12 along the path;
/// NonFinite when the state leaves the representable range.
GeodesicPath integrate_geodesic(const Connection& conn, const std::vector<double>& x0,
                                const std::vector<double>& v0, double T, int steps);

struct ConvexityReport {
  bool convex;
  double min_second_difference;
};

/// Centered second differences of f along the path, tested against
/// -tol * max(1, max|f|).
ConvexityReport convexity_along(const Polynomial& f, const GeodesicPath& path, double tol);

struct PsdSampleReport {
  int violations = 0;
  int skipped_near_pole = 0;
  double worst_eigenvalue = 0.0;
};

/// Evaluates the symbolic Hessian under `conn` at N seeded-uniform points in
/// [box_lo, box_hi]^n; counts points whose smallest eigenvalue falls below
/// -tol * |H|. Points within 1e-9 of a Gamma pole are skipped and counted.
/// The sampling loop is OpenMP-parallel with per-point seeds; set
/// `parallel = false` for the serial reference.
PsdSampleReport sample_hessian_psd(const Polynomial& f, const Connection& conn,
                                   double box_lo, double box_hi, int N, double tol,
                                   std::uint64_t seed, bool parallel = true);

/// Batch certificate check: integrates `count` seeded random geodesics and
/// tests convexity of f along each; returns the number of failures.
/// OpenMP-parallel over geodesics with deterministic per-task seeds.
int check_geodesics_convex(const Polynomial& f, const Connection& conn, int count,
                           double T, int steps, double tol, std::uint64_t seed,
                           bool parallel = true);

}  // namespace gcx
