// Serial reference path against the OpenMP path for the main sweeps.
//
//   qstancu_bench [--threads k] [--repeat r]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qstancu/bivariate.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/rates.hpp"

using namespace qstancu;

namespace {

double seconds(const std::function<void()>& fn, int repeat) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

void report(const char* name, double ts, double tp, double diff) {
  std::printf("%-34s %10.4f %10.4f %8.2fx %10.2e\n", name, ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  int repeat = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--threads")) set_parallel_threads(std::atoi(argv[i + 1]));
    else if (!std::strcmp(argv[i], "--repeat")) repeat = std::max(1, std::atoi(argv[i + 1]));
    else {
      std::fprintf(stderr, "usage: %s [--threads k] [--repeat r]\n", argv[0]);
      return 2;
    }
  }
  std::printf("threads %d, best of %d\n", parallel_threads(), repeat);
  std::printf("%-34s %10s %10s %9s %10s\n", "kernel", "serial s", "openmp s", "speedup", "max diff");

  const Field1D frac = [](double t) { return t / (1 + t); };
  const auto xs = uniform_grid(2, 0.01);

  {
    const OperatorSpec spec(200, QParam(200.0 / 201), {1, 2});
    std::vector<double> s, p;
    const double ts = seconds([&] { s = sweep_kantorovich(spec, frac, xs, Exec::serial); }, repeat);
    const double tp = seconds([&] { p = sweep_kantorovich(spec, frac, xs, Exec::parallel); }, repeat);
    report("kantorovich n=200, 201 points", ts, tp, max_diff(s, p));
  }
  {
    const OperatorSpec spec(200, QParam(200.0 / 201), {1, 2});
    std::vector<double> s, p;
    const double ts = seconds([&] { s = sweep_discrete(spec, frac, xs, Exec::serial); }, repeat);
    const double tp = seconds([&] { p = sweep_discrete(spec, frac, xs, Exec::parallel); }, repeat);
    report("discrete n=200, 201 points", ts, tp, max_diff(s, p));
  }
  {
    const BivariateSpec bs(OperatorSpec(10, QParam(10.0 / 11), {1, 2}),
                           OperatorSpec(10, QParam(10.0 / 11), {1, 2}));
    const Field2D f = [](double x, double y) { return x / (1 + x) + y / (1 + y); };
    std::vector<Point2> pts;
    for (double x : uniform_grid(2, 1.0)) {
      for (double y : uniform_grid(2, 1.0)) pts.push_back({x, y});
    }
    std::vector<double> s, p;
    const double ts = seconds([&] { s = sweep_bivariate(bs, f, pts, Exec::serial); }, 1);
    const double tp = seconds([&] { p = sweep_bivariate(bs, f, pts, Exec::parallel); }, repeat);
    report("bivariate n=10x10, 9 points", ts, tp, max_diff(s, p));
  }
  {
    std::vector<double> v(1'000'000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.001 * static_cast<double>(i) * (1 + 1e-6 * i));
    double s = 0, p = 0;
    const double ts = seconds([&] { s = window_oscillation(v, 200, Exec::serial); }, repeat);
    const double tp = seconds([&] { p = window_oscillation(v, 200, Exec::parallel); }, repeat);
    report("window oscillation 1e6, w=200", ts, tp, std::fabs(s - p));
  }
  {
    const Field1D wave = [](double t) { return std::sin(5 * t) * std::exp(-t); };
    double s = 0, p = 0;
    const double ts = seconds([&] { s = modulus_of_continuity(wave, 0.5, 4, 0.0005, Exec::serial).omega; }, repeat);
    const double tp = seconds([&] { p = modulus_of_continuity(wave, 0.5, 4, 0.0005, Exec::parallel).omega; }, repeat);
    report("modulus h=5e-4, delta=0.5", ts, tp, std::fabs(s - p));
  }
  return 0;
}
