#pragma once

// Closed-form images of e0, e1, e2 under the discrete and Kantorovich
// operators (m(n) = n + 1), their q = 1 forms, and the tensor version.

#include <cstdint>

#include "qstancu/operators.hpp"
#include "qstancu/qcalc.hpp"

namespace qstancu {

struct MomentSet {
  double m0 = 1.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double alpha_n = 0.0;  // L((t - x); x)
  double delta_n = 0.0;  // L((t - x)^2; x)
};

MomentSet discrete_moments(std::int64_t n, QParam q, const StancuParams& p, double x);

/// delta_n comes from m2 - 2x m1 + x^2 for |x| <= 10 and from the grouped
/// quadratic in x beyond that.
MomentSet kantorovich_moments(std::int64_t n, QParam q, const StancuParams& p, double x);

/// The grouped form  A x^2 + B x + C  of the Kantorovich second central moment.
double kantorovich_delta_grouped(std::int64_t n, QParam q, const StancuParams& p, double x);

/// Kantorovich moments at q = 1.
MomentSet classical_moments(std::int64_t n, const StancuParams& p, double x);

struct BivariateMoments {
  double m0 = 1.0;
  double m1x = 0.0;    // image of x
  double m1y = 0.0;    // image of y
  double m2sum = 0.0;  // image of x^2 + y^2
};

BivariateMoments bivariate_moments(std::int64_t n1, std::int64_t n2, QParam q1, QParam q2,
                                   const StancuParams& p, double x, double y);

}  // namespace qstancu
