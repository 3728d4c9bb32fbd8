#include "qstancu/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qstancu/errors.hpp"

namespace qstancu {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t window_for(double delta, double h) {
  return static_cast<std::int64_t>(std::floor(delta / h * (1.0 + 1e-12)));
}

}  // namespace

void ProductHolderSpec::validate() const {
  if (!(M > 0.0)) throw DomainError("Hoelder constant M must be positive");
  if (!(a1 > 0.0 && a1 <= 1.0 && a2 > 0.0 && a2 <= 1.0)) {
    throw DomainError("Hoelder exponents must lie in (0, 1]");
  }
}

double bivariate_cell_integral(const BivariateSpec& bspec, const Field2D& f, std::int64_t k1,
                               std::int64_t k2) {
  const OperatorSpec& sx = bspec.x_axis;
  const OperatorSpec& sy = bspec.y_axis;
  const double a1 = sx.cell_lower(k1), b1 = sx.cell_upper(k1), s1 = sx.cell_scale(k1);
  const double a2 = sy.cell_lower(k2), b2 = sy.cell_upper(k2), s2 = sy.cell_scale(k2);
  const Field1D inner_integral([&](double t) {
    const Field1D row([&f, s1, s2, t](double u) { return f(s1 * t, s2 * u); });
    return jackson_integral(row, a2, b2, sy.q(), sy.policy());
  });
  return jackson_integral(inner_integral, a1, b1, sx.q(), sx.policy());
}

double eval_bivariate(const BivariateSpec& bspec, const Field2D& f, double x, double y) {
  const BasisWeights wx = bspec.x_axis.weights(x);
  const BasisWeights wy = bspec.y_axis.weights(y);
  double acc = 0.0;
  for (std::size_t k1 = 0; k1 < wx.w.size(); ++k1) {
    if (wx.w[k1] == 0.0) continue;
    double row = 0.0;
    for (std::size_t k2 = 0; k2 < wy.w.size(); ++k2) {
      if (wy.w[k2] == 0.0) continue;
      row += wy.w[k2] * bivariate_cell_integral(bspec, f, static_cast<std::int64_t>(k1),
                                                static_cast<std::int64_t>(k2));
    }
    acc += wx.w[k1] * row;
  }
  return bspec.x_axis.denominator() * bspec.y_axis.denominator() * acc;
}

BivariateModulus bivariate_modulus(const Field2D& f, double delta1, double delta2, double A,
                                   double step, Exec exec) {
  if (delta1 < 0.0 || delta2 < 0.0) throw DomainError("modulus arguments must be nonnegative");
  if (delta1 > 0.0 && delta2 > 0.0 && !(step > 0.0 && step <= std::min(delta1, delta2))) {
    throw DomainError("bivariate modulus grid needs 0 < step <= min(delta1, delta2)");
  }
  BivariateModulus out;
  out.delta1 = delta1;
  out.delta2 = delta2;
  const std::vector<double> grid = uniform_grid(A, step);
  const auto g = static_cast<std::int64_t>(grid.size());
  const double h = grid[1] - grid[0];
  out.grid_step = h;
  std::vector<double> vals(grid.size() * grid.size());
  for (std::int64_t i = 0; i < g; ++i) {
    for (std::int64_t j = 0; j < g; ++j) vals[i * g + j] = f(grid[i], grid[j]);
  }
  out.omega = window_oscillation_2d(vals, g, g, window_for(delta1, h), window_for(delta2, h), exec);
  return out;
}

GridLipschitz2D grid_lipschitz_estimate_2d(const Field2D& f, double A, double step) {
  const std::vector<double> grid = uniform_grid(A, step);
  GridLipschitz2D out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double v = f(grid[i], grid[j]);
      if (i + 1 < grid.size()) {
        out.along_x = std::max(out.along_x,
                               std::fabs(f(grid[i + 1], grid[j]) - v) / (grid[i + 1] - grid[i]));
      }
      if (j + 1 < grid.size()) {
        out.along_y = std::max(out.along_y,
                               std::fabs(f(grid[i], grid[j + 1]) - v) / (grid[j + 1] - grid[j]));
      }
    }
  }
  return out;
}

std::vector<BoundCheck> check_bivariate_modulus_bounds(const Field2D& f,
                                                       const BivariateSpec& bspec,
                                                       std::span<const Point2> pts, double A,
                                                       double step, Exec exec) {
  const std::vector<double> values = sweep_bivariate(bspec, f, pts, exec);
  const OperatorSpec& sx = bspec.x_axis;
  const OperatorSpec& sy = bspec.y_axis;
  const double tol = std::max(sx.policy().series_tol, sy.policy().series_tol);
  std::vector<BoundCheck> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r1 = std::sqrt(std::max(0.0, delta_n_of_x(sx.n(), sx.q(), sx.params(), pts[i].x)));
    const double r2 = std::sqrt(std::max(0.0, delta_n_of_x(sy.n(), sy.q(), sy.params(), pts[i].y)));
    BoundCheck& c = out[i];
    c.lhs = std::fabs(values[i] - f(pts[i].x, pts[i].y));
    const double h = std::min({step, r1, r2});
    if (h > 0.0) {
      const BivariateModulus om = bivariate_modulus(f, r1, r2, A, h, exec);
      const GridLipschitz2D lip = grid_lipschitz_estimate_2d(f, A, om.grid_step);
      c.rhs = 4.0 * om.omega;
      c.slack = 10.0 * tol + 4.0 * (lip.along_x + lip.along_y) * om.grid_step;
    } else {
      c.slack = 10.0 * tol;
    }
    c.holds = c.lhs <= c.rhs + c.slack;
  }
  return out;
}

BoundCheck check_bivariate_modulus_bound(const Field2D& f, const BivariateSpec& bspec, double x,
                                         double y, double A, double step) {
  const Point2 pts[] = {{x, y}};
  return check_bivariate_modulus_bounds(f, bspec, pts, A, step, Exec::serial).front();
}

void verify_product_holder(const Field2D& f, const ProductHolderSpec& spec, double A,
                           std::uint64_t seed, int samples) {
  spec.validate();
  std::mt19937_64 rng(seed);
  auto draw_pair = [&](int i, double& u, double& v) {
    u = A * unit_draw(rng);
    if (i % 2 == 0) {
      v = A * unit_draw(rng);
    } else {
      const double sep = A * std::pow(10.0, -6.0 * unit_draw(rng));
      v = unit_draw(rng) < 0.5 ? std::max(0.0, u - sep) : std::min(A, u + sep);
    }
  };
  for (int i = 0; i < samples; ++i) {
    double x, x2, y, y2;
    draw_pair(i, x, x2);
    draw_pair(i, y, y2);
    const double lhs = std::fabs(f(x2, y2) - f(x2, y) - f(x, y2) + f(x, y));
    const double rhs = spec.M * std::pow(std::fabs(x2 - x), spec.a1) *
                       std::pow(std::fabs(y2 - y), spec.a2);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "mixed Hoelder condition violated at (" << x << ", " << y << "), (" << x2 << ", "
          << y2 << "): " << lhs << " > " << rhs;
      throw LipschitzViolation(msg.str());
    }
  }
}

std::vector<BoundCheck> check_bivariate_lipschitz_bounds(const Field2D& f,
                                                         const ProductHolderSpec& lip,
                                                         const BivariateSpec& bspec,
                                                         std::span<const Point2> pts, double A,
                                                         std::uint64_t seed, Exec exec) {
  verify_product_holder(f, lip, A, seed);
  const std::vector<double> values = sweep_bivariate(bspec, f, pts, exec);
  const OperatorSpec& sx = bspec.x_axis;
  const OperatorSpec& sy = bspec.y_axis;
  const double tol = std::max(sx.policy().series_tol, sy.policy().series_tol);
  std::vector<BoundCheck> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d1 = std::max(0.0, delta_n_of_x(sx.n(), sx.q(), sx.params(), pts[i].x));
    const double d2 = std::max(0.0, delta_n_of_x(sy.n(), sy.q(), sy.params(), pts[i].y));
    BoundCheck& c = out[i];
    c.lhs = std::fabs(values[i] - f(pts[i].x, pts[i].y));
    c.rhs = lip.M * std::pow(d1, lip.a1 / 2.0) * std::pow(d2, lip.a2 / 2.0);
    c.slack = 10.0 * tol;
    c.holds = c.lhs <= c.rhs + c.slack;
  }
  return out;
}

BoundCheck check_bivariate_lipschitz_bound(const Field2D& f, const ProductHolderSpec& lip,
                                           const BivariateSpec& bspec, double x, double y,
                                           double A, std::uint64_t seed) {
  const Point2 pts[] = {{x, y}};
  return check_bivariate_lipschitz_bounds(f, lip, bspec, pts, A, seed, Exec::serial).front();
}

}  // namespace qstancu
