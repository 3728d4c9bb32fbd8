#pragma once

// Tensor-product Kantorovich operator on [0, inf)^2 and its two pointwise
// error bounds:
//   |L*(f; x, y) - f(x, y)| <= 4 omega(f; sqrt(delta_n1(x)), sqrt(delta_n2(y)))
//   |L*(f; x, y) - f(x, y)| <= M delta_n1(x)^{a1/2} delta_n2(y)^{a2/2}

#include <cstdint>
#include <span>
#include <vector>

#include "qstancu/field.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/operators.hpp"
#include "qstancu/rates.hpp"

namespace qstancu {

struct BivariateModulus {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double omega = 0.0;
  double grid_step = 0.0;
};

/// Mixed Hoelder class: |f(x',y') - f(x',y) - f(x,y') + f(x,y)| <= M |x'-x|^a1 |y'-y|^a2.
struct ProductHolderSpec {
  double M = 1.0;
  double a1 = 1.0;
  double a2 = 1.0;

  void validate() const;
};

/// Iterated Jackson integral of f(q1^{1-k1} t, q2^{1-k2} s) over the (k1, k2) cell.
double bivariate_cell_integral(const BivariateSpec& bspec, const Field2D& f, std::int64_t k1,
                               std::int64_t k2);

/// Reference evaluation at one point: the full double sum over (k1, k2).
double eval_bivariate(const BivariateSpec& bspec, const Field2D& f, double x, double y);

/// sup |f(x',y') - f(x,y)| over grid pairs with |x'-x| <= delta1, |y'-y| <= delta2
/// on [0, A]^2. Needs 0 < step <= min(delta1, delta2) when both are positive.
BivariateModulus bivariate_modulus(const Field2D& f, double delta1, double delta2, double A,
                                   double step, Exec exec = Exec::parallel);

/// max over grid neighbours of the difference quotient along x and along y.
struct GridLipschitz2D {
  double along_x = 0.0;
  double along_y = 0.0;
};
GridLipschitz2D grid_lipschitz_estimate_2d(const Field2D& f, double A, double step);

std::vector<BoundCheck> check_bivariate_modulus_bounds(const Field2D& f,
                                                       const BivariateSpec& bspec,
                                                       std::span<const Point2> pts, double A,
                                                       double step,
                                                       Exec exec = Exec::parallel);

BoundCheck check_bivariate_modulus_bound(const Field2D& f, const BivariateSpec& bspec, double x,
                                         double y, double A, double step);

/// Seeded sampling of the mixed Hoelder condition on [0, A]^2; throws
/// LipschitzViolation with a witness on failure.
void verify_product_holder(const Field2D& f, const ProductHolderSpec& spec, double A,
                           std::uint64_t seed, int samples = 10000);

std::vector<BoundCheck> check_bivariate_lipschitz_bounds(const Field2D& f,
                                                         const ProductHolderSpec& lip,
                                                         const BivariateSpec& bspec,
                                                         std::span<const Point2> pts, double A,
                                                         std::uint64_t seed,
                                                         Exec exec = Exec::parallel);

BoundCheck check_bivariate_lipschitz_bound(const Field2D& f, const ProductHolderSpec& lip,
                                           const BivariateSpec& bspec, double x, double y,
                                           double A = 2.0, std::uint64_t seed = 1);

}  // namespace qstancu
