#pragma once

// Data-parallel sweeps. Each kernel has two execution paths:
//
//   Exec::serial    the reference path: evaluates every point from scratch
//                   with the definitional routines in operators.hpp.
//   Exec::parallel  OpenMP path. The Kantorovich cell integrals do not depend
//                   on x, so they are tabulated once per (spec, f) and shared
//                   by every grid point; neighbouring cells also share one
//                   Jackson series because a_{k+1} = q b_k.
//
// The two paths agree to within the series truncation tolerance; the unit
// tests hold them to that.

#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "qstancu/field.hpp"
#include "qstancu/operators.hpp"

namespace qstancu {

enum class Exec { serial, parallel };

/// Sets the OpenMP team size used by Exec::parallel (0 keeps the runtime default).
void set_parallel_threads(int threads);
int parallel_threads();

/// Runs body(i) for i in [0, count), in parallel when asked. The first
/// exception thrown by any iteration is rethrown on the calling thread.
template <class Body>
void for_each_index(std::int64_t count, Exec exec, const Body& body);

/// Table of Kantorovich cell integrals J_k for one (spec, f).
class KantorovichCells {
 public:
  KantorovichCells(const OperatorSpec& spec, Field1D f);

  /// Computes J_k for every k with needed[k] set (and not yet computed).
  void prepare(const std::vector<char>& needed, Exec exec);

  /// J_k; prepare() must have covered k.
  double operator[](std::size_t k) const { return cells_[k]; }
  std::size_t size() const { return cells_.size(); }

 private:
  // sum_j q^j f(q^{1-k} b_k q^j); k = -1 uses b_{-1} = alpha / (q D).
  double upper_series(std::int64_t k) const;
  double upper_end(std::int64_t k) const;

  const OperatorSpec& spec_;
  Field1D f_;
  std::vector<double> cells_;
  std::vector<char> ready_;
};

std::vector<double> sweep_discrete(const OperatorSpec& spec, const Field1D& f,
                                   std::span<const double> xs, Exec exec);

std::vector<double> sweep_kantorovich(const OperatorSpec& spec, const Field1D& f,
                                      std::span<const double> xs, Exec exec);

struct Point2 {
  double x = 0;
  double y = 0;
};

/// Tensor Kantorovich operator at each point.
std::vector<double> sweep_bivariate(const BivariateSpec& bspec, const Field2D& f,
                                    std::span<const Point2> pts, Exec exec);

/// max |v[j] - v[i]| over 0 < j - i <= window on a sampled grid.
double window_oscillation(std::span<const double> values, std::int64_t window, Exec exec);

/// Bivariate analogue on a row-major (rows x cols) grid: max |v(i',j') - v(i,j)|
/// over |i' - i| <= window_rows and |j' - j| <= window_cols.
double window_oscillation_2d(std::span<const double> values, std::int64_t rows,
                             std::int64_t cols, std::int64_t window_rows,
                             std::int64_t window_cols, Exec exec);

// ---------------------------------------------------------------------------

template <class Body>
void for_each_index(std::int64_t count, Exec exec, const Body& body) {
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace qstancu
