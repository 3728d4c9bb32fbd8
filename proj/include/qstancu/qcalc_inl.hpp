#pragma once

#include <cmath>
#include <string>

#include "qstancu/errors.hpp"

namespace qstancu::detail {

template <class G>
double jackson_series(const G& g, double c, double q, double series_tol) {
  const std::int64_t cap = jackson_term_cap(q, series_tol);
  double sum = 0.0;
  double qj = 1.0;
  for (std::int64_t j = 0; j <= cap; ++j) {
    const double v = g(c * qj);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite sample at t = " + std::to_string(c * qj));
    }
    sum += qj * v;
    if (qj * (1.0 + std::fabs(v)) < series_tol) break;
    qj *= q;
  }
  return sum;
}

}  // namespace qstancu::detail
