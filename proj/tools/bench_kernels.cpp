// Throughput comparison of the OpenMP Monte Carlo kernels against their
// serial reference paths. Identical results are asserted on every row.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "gcx/classify.hpp"
#include "gcx/connection.hpp"
#include "gcx/density.hpp"
#include "gcx/geoverify.hpp"
#include "gcx/parser.hpp"

using namespace gcx;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class Fn>
double time_ms(Fn&& fn) {
  double t0 = now_ms();
  fn();
  return now_ms() - t0;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%-5.2f %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "results match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long trials = argc > 1 ? std::atol(argv[1]) : 20000;
  std::printf("threads: %d, trials: %ld\n", omp_get_max_threads(), trials);
  std::printf("%-28s %13s %13s   %-6s\n", "kernel", "serial", "openmp", "speedup");

  {
    DensityReport a, b;
    double ts = time_ms([&] { a = sample_univariate(15, 1.0, trials, 7, false); });
    double tp = time_ms([&] { b = sample_univariate(15, 1.0, trials, 7, true); });
    row("density univariate d=15", ts, tp, a.hits == b.hits);
  }
  {
    DensityReport a, b;
    double ts = time_ms([&] { a = sample_quadratic(3, 1.0, trials, 7, false); });
    double tp = time_ms([&] { b = sample_quadratic(3, 1.0, trials, 7, true); });
    row("density quadratic n=3", ts, tp, a.hits == b.hits);
  }
  {
    DensityReport a, b;
    double ts = time_ms([&] { a = psd_ball_fraction(3, trials, 7, false); });
    double tp = time_ms([&] { b = psd_ball_fraction(3, trials, 7, true); });
    row("psd ball n=3", ts, tp, a.hits == b.hits);
  }
  {
    Polynomial f = parse_expression("x^3 + x", {"x"});
    Connection conn = construct_no_critical(f);
    PsdSampleReport a, b;
    double ts = time_ms([&] { a = sample_hessian_psd(f, conn, -2, 2, static_cast<int>(trials), 1e-7, 7, false); });
    double tp = time_ms([&] { b = sample_hessian_psd(f, conn, -2, 2, static_cast<int>(trials), 1e-7, 7, true); });
    row("hessian psd sampling", ts, tp, a.violations == b.violations && a.skipped_near_pole == b.skipped_near_pole);
  }
  {
    Polynomial f = parse_expression("x^3 + x", {"x"});
    Connection conn = construct_no_critical(f);
    int a = 0, b = 0;
    int count = static_cast<int>(trials / 100) + 10;
    double ts = time_ms([&] { a = check_geodesics_convex(f, conn, count, 1.0, 200, 1e-7, 7, false); });
    double tp = time_ms([&] { b = check_geodesics_convex(f, conn, count, 1.0, 200, 1e-7, 7, true); });
    row("geodesic batch", ts, tp, a == b);
  }
  return 0;
}
