#pragma once

// Modulus of continuity on a grid and the two pointwise error bounds for the
// Kantorovich operator:
//   |L*(f; x) - f(x)| <= 2 omega(f; sqrt(delta_n(x)))
//   |L*(f; x) - f(x)| <= M delta_n(x)^{a/2}          for f in Lip_M(a)

#include <cstdint>
#include <span>
#include <vector>

#include "qstancu/field.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/operators.hpp"

namespace qstancu {

struct ModulusEstimate {
  double delta = 0.0;
  double omega = 0.0;
  double grid_step = 0.0;
};

/// Lip_M(a): |f(t) - f(s)| <= M |t - s|^a.
struct LipschitzSpec {
  double M = 1.0;
  double a = 1.0;

  void validate() const;
};

/// Outcome of one bound check. lhs and rhs are unpadded; holds compares
/// lhs <= rhs + slack.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// Uniform grid {0, h, ..., A} with h <= step chosen to divide A.
std::vector<double> uniform_grid(double A, double step);

/// max |f(t) - f(x)| over grid pairs with |t - x| <= delta on [0, A].
/// Needs 0 < step <= delta when delta > 0. A lower bound of the true modulus.
ModulusEstimate modulus_of_continuity(const Field1D& f, double delta, double A, double step,
                                      Exec exec = Exec::parallel);

/// max |f(x_{i+1}) - f(x_i)| / h on the grid; used for the grid correction.
double grid_lipschitz_estimate(const Field1D& f, double A, double step);

/// Second central moment of the Kantorovich operator, grouped as a quadratic in x.
double delta_n_of_x(std::int64_t n, QParam q, const StancuParams& p, double x);

/// Samples 10^4 pairs (seeded) on [0, A] and throws LipschitzViolation with a
/// witness if any breaks |f(t) - f(s)| <= M |t - s|^a.
void verify_lipschitz(const Field1D& f, const LipschitzSpec& lip, double A, std::uint64_t seed,
                      int samples = 10000);

/// Modulus bound at one point; the modulus is taken on [0, A] with grid step
/// min(step, sqrt(delta_n(x))). slack = 10 series_tol + 2 Lip_est h.
BoundCheck check_modulus_bound(const Field1D& f, const OperatorSpec& spec, double x, double A,
                               double step);

/// Same, for a batch of points sharing one operator sweep.
std::vector<BoundCheck> check_modulus_bounds(const Field1D& f, const OperatorSpec& spec,
                                             std::span<const double> xs, double A, double step,
                                             Exec exec = Exec::parallel);

/// Lipschitz bound at one point, after verify_lipschitz on [0, A].
BoundCheck check_lipschitz_bound(const Field1D& f, const LipschitzSpec& lip,
                                 const OperatorSpec& spec, double x, double A = 4.0,
                                 std::uint64_t seed = 1);

std::vector<BoundCheck> check_lipschitz_bounds(const Field1D& f, const LipschitzSpec& lip,
                                               const OperatorSpec& spec,
                                               std::span<const double> xs, double A,
                                               std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace qstancu
