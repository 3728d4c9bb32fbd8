#include "qstancu/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "qstancu/bivariate.hpp"
#include "qstancu/errors.hpp"
#include "qstancu/qcalc.hpp"

namespace qstancu {

void set_parallel_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int parallel_threads() { return omp_get_max_threads(); }

namespace {

std::vector<char> needed_mask(const std::vector<BasisWeights>& ws) {
  std::vector<char> mask;
  for (const auto& bw : ws) {
    if (bw.w.size() > mask.size()) mask.resize(bw.w.size(), 0);
    for (std::size_t k = 0; k < bw.w.size(); ++k) {
      if (bw.w[k] != 0.0) mask[k] = 1;
    }
  }
  return mask;
}

// Upper ends and argument scales of the cells, indexed from k = -1.
struct AxisGeometry {
  explicit AxisGeometry(const OperatorSpec& spec) : spec(spec) {}

  double upper(std::int64_t k) const {
    if (k < 0) {
      const double qv = spec.q().value();
      return spec.params().alpha / (qv * spec.denominator());
    }
    return spec.cell_upper(k);
  }
  double scale(std::int64_t k) const { return spec.cell_scale(k); }
  double lower(std::int64_t k) const { return spec.cell_lower(k); }

  const OperatorSpec& spec;
};

}  // namespace

// ---------------------------------------------------------------------------
// Univariate cells

KantorovichCells::KantorovichCells(const OperatorSpec& spec, Field1D f)
    : spec_(spec), f_(std::move(f)) {}

double KantorovichCells::upper_end(std::int64_t k) const { return AxisGeometry(spec_).upper(k); }

double KantorovichCells::upper_series(std::int64_t k) const {
  const double s = spec_.cell_scale(k);
  const double c = upper_end(k);
  if (c == 0.0) return 0.0;
  auto g = [this, s](double t) { return f_(s * t); };
  return detail::jackson_series(g, c, spec_.q().value(), spec_.policy().series_tol);
}

void KantorovichCells::prepare(const std::vector<char>& needed, Exec exec) {
  if (needed.size() > cells_.size()) {
    cells_.resize(needed.size(), 0.0);
    ready_.resize(needed.size(), 0);
  }
  std::vector<std::int64_t> todo;
  for (std::size_t k = 0; k < needed.size(); ++k) {
    if (needed[k] && !ready_[k]) todo.push_back(static_cast<std::int64_t>(k));
  }
  if (todo.empty()) return;

  if (f_.is_polynomial()) {
    for_each_index(static_cast<std::int64_t>(todo.size()), exec, [&](std::int64_t i) {
      cells_[todo[i]] = kantorovich_cell_integral(spec_, f_, todo[i]);
    });
  } else {
    if (spec_.q().classical()) throw DomainError("Jackson series needs q < 1");
    // Upper series for every needed k and its predecessor.
    std::vector<std::int64_t> series_ids;
    for (std::int64_t k : todo) {
      if (series_ids.empty() || series_ids.back() != k - 1) series_ids.push_back(k - 1);
      series_ids.push_back(k);
    }
    std::vector<double> series(series_ids.size());
    for_each_index(static_cast<std::int64_t>(series_ids.size()), exec,
                   [&](std::int64_t i) { series[i] = upper_series(series_ids[i]); });
    auto lookup = [&](std::int64_t k) {
      auto it = std::lower_bound(series_ids.begin(), series_ids.end(), k);
      return series[static_cast<std::size_t>(it - series_ids.begin())];
    };
    const double qv = spec_.q().value();
    for (std::int64_t k : todo) {
      const double b = spec_.cell_upper(k);
      const double a = spec_.cell_lower(k);
      double cell = b * lookup(k);
      if (a != 0.0) cell -= a * lookup(k - 1);
      cells_[k] = (1.0 - qv) * cell;
    }
  }
  for (std::int64_t k : todo) ready_[k] = 1;
}

// ---------------------------------------------------------------------------
// Univariate sweeps

std::vector<double> sweep_discrete(const OperatorSpec& spec, const Field1D& f,
                                   std::span<const double> xs, Exec exec) {
  std::vector<double> out(xs.size());
  for_each_index(static_cast<std::int64_t>(xs.size()), exec,
                 [&](std::int64_t i) { out[i] = eval_discrete(spec, f, xs[i]); });
  return out;
}

std::vector<double> sweep_kantorovich(const OperatorSpec& spec, const Field1D& f,
                                      std::span<const double> xs, Exec exec) {
  std::vector<double> out(xs.size());
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_kantorovich(spec, f, xs[i]);
    return out;
  }
  std::vector<BasisWeights> ws(xs.size());
  for_each_index(static_cast<std::int64_t>(xs.size()), exec,
                 [&](std::int64_t i) { ws[i] = spec.weights(xs[i]); });
  KantorovichCells cells(spec, f);
  cells.prepare(needed_mask(ws), exec);
  const double denom = spec.denominator();
  for_each_index(static_cast<std::int64_t>(xs.size()), exec, [&](std::int64_t i) {
    double acc = 0.0;
    const auto& w = ws[i].w;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] != 0.0) acc += w[k] * cells[k];
    }
    out[i] = denom * acc;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Bivariate sweep

namespace {

// Cell integrals over [a1,b1] x [a2,b2] built from one-corner double series
//   V(k1,k2) = sum_i q1^i sum_j q2^j f(s1 c1 q1^i, s2 c2 q2^j)
// with c = upper end of the k-th cell (k = -1 allowed).
class BivariateCells {
 public:
  BivariateCells(const BivariateSpec& bspec, const Field2D& f)
      : gx_(bspec.x_axis), gy_(bspec.y_axis), f_(f) {}

  void build(const std::vector<char>& need_x, const std::vector<char>& need_y, Exec exec) {
    rows_ = static_cast<std::int64_t>(need_x.size());
    cols_ = static_cast<std::int64_t>(need_y.size());
    if (gx_.spec.q().classical() || gy_.spec.q().classical()) {
      throw DomainError("bivariate Jackson series needs q < 1 on both axes");
    }
    // Series ids run from -1, stored at offset +1.
    std::vector<char> sx(rows_ + 1, 0), sy(cols_ + 1, 0);
    for (std::int64_t k = 0; k < rows_; ++k) {
      if (need_x[k]) sx[k] = sx[k + 1] = 1;
    }
    for (std::int64_t k = 0; k < cols_; ++k) {
      if (need_y[k]) sy[k] = sy[k + 1] = 1;
    }
    series_.assign(static_cast<std::size_t>((rows_ + 1) * (cols_ + 1)), 0.0);
    std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
    for (std::int64_t i = 0; i <= rows_; ++i) {
      if (!sx[i]) continue;
      for (std::int64_t j = 0; j <= cols_; ++j) {
        if (sy[j]) jobs.emplace_back(i - 1, j - 1);
      }
    }
    for_each_index(static_cast<std::int64_t>(jobs.size()), exec, [&](std::int64_t t) {
      const auto [k1, k2] = jobs[t];
      series_[index(k1, k2)] = corner_series(k1, k2);
    });

    cells_.assign(static_cast<std::size_t>(rows_ * cols_), 0.0);
    const double q1 = gx_.spec.q().value();
    const double q2 = gy_.spec.q().value();
    for_each_index(rows_, exec, [&](std::int64_t k1) {
      if (!need_x[k1]) return;
      const double b1 = gx_.spec.cell_upper(k1);
      const double a1 = gx_.spec.cell_lower(k1);
      for (std::int64_t k2 = 0; k2 < cols_; ++k2) {
        if (!need_y[k2]) continue;
        const double b2 = gy_.spec.cell_upper(k2);
        const double a2 = gy_.spec.cell_lower(k2);
        double v = b1 * b2 * series_[index(k1, k2)];
        if (a1 != 0.0) v -= a1 * b2 * series_[index(k1 - 1, k2)];
        if (a2 != 0.0) v -= b1 * a2 * series_[index(k1, k2 - 1)];
        if (a1 != 0.0 && a2 != 0.0) v += a1 * a2 * series_[index(k1 - 1, k2 - 1)];
        cells_[k1 * cols_ + k2] = (1.0 - q1) * (1.0 - q2) * v;
      }
    });
  }

  double cell(std::int64_t k1, std::int64_t k2) const { return cells_[k1 * cols_ + k2]; }

 private:
  std::size_t index(std::int64_t k1, std::int64_t k2) const {
    return static_cast<std::size_t>((k1 + 1) * (cols_ + 1) + (k2 + 1));
  }

  double corner_series(std::int64_t k1, std::int64_t k2) const {
    const double c1 = gx_.upper(k1);
    const double c2 = gy_.upper(k2);
    if (c1 == 0.0 || c2 == 0.0) return 0.0;
    const double s1 = gx_.scale(k1);
    const double s2 = gy_.scale(k2);
    const double q1 = gx_.spec.q().value();
    const double q2 = gy_.spec.q().value();
    const double tol1 = gx_.spec.policy().series_tol;
    const double tol2 = gy_.spec.policy().series_tol;
    // The outer test sees the inner one-endpoint integral, as the iterated
    // Jackson integral would.
    auto outer = [&](double t) {
      auto inner = [&](double u) { return f_(s1 * t, s2 * u); };
      return (1.0 - q2) * c2 * detail::jackson_series(inner, c2, q2, tol2);
    };
    return detail::jackson_series(outer, c1, q1, tol1) / ((1.0 - q2) * c2);
  }

  AxisGeometry gx_;
  AxisGeometry gy_;
  const Field2D& f_;
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> series_;
  std::vector<double> cells_;
};

}  // namespace

std::vector<double> sweep_bivariate(const BivariateSpec& bspec, const Field2D& f,
                                    std::span<const Point2> pts, Exec exec) {
  std::vector<double> out(pts.size());
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out[i] = eval_bivariate(bspec, f, pts[i].x, pts[i].y);
    }
    return out;
  }
  const auto n = static_cast<std::int64_t>(pts.size());
  std::vector<BasisWeights> wx(pts.size()), wy(pts.size());
  for_each_index(n, exec, [&](std::int64_t i) {
    wx[i] = bspec.x_axis.weights(pts[i].x);
    wy[i] = bspec.y_axis.weights(pts[i].y);
  });
  BivariateCells cells(bspec, f);
  cells.build(needed_mask(wx), needed_mask(wy), exec);
  const double denom = bspec.x_axis.denominator() * bspec.y_axis.denominator();
  for_each_index(n, exec, [&](std::int64_t i) {
    double acc = 0.0;
    const auto& w1 = wx[i].w;
    const auto& w2 = wy[i].w;
    for (std::size_t k1 = 0; k1 < w1.size(); ++k1) {
      if (w1[k1] == 0.0) continue;
      double row = 0.0;
      for (std::size_t k2 = 0; k2 < w2.size(); ++k2) {
        if (w2[k2] != 0.0) {
          row += w2[k2] * cells.cell(static_cast<std::int64_t>(k1), static_cast<std::int64_t>(k2));
        }
      }
      acc += w1[k1] * row;
    }
    out[i] = denom * acc;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Grid oscillation

double window_oscillation(std::span<const double> values, std::int64_t window, Exec exec) {
  const auto g = static_cast<std::int64_t>(values.size());
  if (window <= 0 || g < 2) return 0.0;
  if (exec == Exec::serial) {
    double best = 0.0;
    for (std::int64_t i = 0; i < g; ++i) {
      for (std::int64_t j = i + 1; j <= std::min(g - 1, i + window); ++j) {
        best = std::max(best, std::fabs(values[j] - values[i]));
      }
    }
    return best;
  }
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::int64_t i = 0; i < g; ++i) {
    const std::int64_t hi = std::min(g - 1, i + window);
    for (std::int64_t j = i + 1; j <= hi; ++j) {
      best = std::max(best, std::fabs(values[j] - values[i]));
    }
  }
  return best;
}

double window_oscillation_2d(std::span<const double> values, std::int64_t rows,
                             std::int64_t cols, std::int64_t window_rows,
                             std::int64_t window_cols, Exec exec) {
  auto at = [&](std::int64_t i, std::int64_t j) { return values[i * cols + j]; };
  // Pairs are unordered, so the partner row runs forward only.
  auto row_best = [&](std::int64_t i) {
    double best = 0.0;
    const std::int64_t ihi = std::min(rows - 1, i + window_rows);
    for (std::int64_t j = 0; j < cols; ++j) {
      const double v = at(i, j);
      const std::int64_t jlo = std::max<std::int64_t>(0, j - window_cols);
      const std::int64_t jhi = std::min(cols - 1, j + window_cols);
      for (std::int64_t i2 = i; i2 <= ihi; ++i2) {
        for (std::int64_t j2 = jlo; j2 <= jhi; ++j2) {
          best = std::max(best, std::fabs(at(i2, j2) - v));
        }
      }
    }
    return best;
  };
  double best = 0.0;
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < rows; ++i) best = std::max(best, row_best(i));
    return best;
  }
#pragma omp parallel for reduction(max : best) schedule(dynamic)
  for (std::int64_t i = 0; i < rows; ++i) best = std::max(best, row_best(i));
  return best;
}

}  // namespace qstancu
