#include "qstancu/rates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qstancu/errors.hpp"
#include "qstancu/moments.hpp"

namespace qstancu {

namespace {

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t window_for(double delta, double h) {
  return static_cast<std::int64_t>(std::floor(delta / h * (1.0 + 1e-12)));
}

}  // namespace

void LipschitzSpec::validate() const {
  if (!(M > 0.0)) throw DomainError("Lipschitz constant M must be positive");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("Lipschitz exponent must lie in (0, 1]");
}

std::vector<double> uniform_grid(double A, double step) {
  if (!(A > 0.0) || !(step > 0.0)) throw DomainError("grid needs A > 0 and step > 0");
  const auto cells = static_cast<std::int64_t>(std::ceil(A / step * (1.0 - 1e-12)));
  std::vector<double> g(static_cast<std::size_t>(cells) + 1);
  for (std::int64_t i = 0; i <= cells; ++i) g[i] = A * static_cast<double>(i) / cells;
  return g;
}

ModulusEstimate modulus_of_continuity(const Field1D& f, double delta, double A, double step,
                                      Exec exec) {
  if (delta < 0.0) throw DomainError("modulus argument must be nonnegative");
  if (delta > 0.0 && !(step > 0.0 && step <= delta)) {
    throw DomainError("modulus grid needs 0 < step <= delta");
  }
  ModulusEstimate out;
  out.delta = delta;
  if (delta == 0.0) {
    out.grid_step = step;
    return out;
  }
  const std::vector<double> grid = uniform_grid(A, step);
  const double h = grid.size() > 1 ? grid[1] - grid[0] : step;
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
  out.grid_step = h;
  out.omega = window_oscillation(vals, window_for(delta, h), exec);
  return out;
}

double grid_lipschitz_estimate(const Field1D& f, double A, double step) {
  const std::vector<double> grid = uniform_grid(A, step);
  double best = 0.0;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    best = std::max(best, std::fabs(v - prev) / (grid[i] - grid[i - 1]));
    prev = v;
  }
  return best;
}

double delta_n_of_x(std::int64_t n, QParam q, const StancuParams& p, double x) {
  if (x < 0.0) throw DomainError("delta_n needs x >= 0");
  return kantorovich_delta_grouped(n, q, p, x);
}

void verify_lipschitz(const Field1D& f, const LipschitzSpec& lip, double A, std::uint64_t seed,
                      int samples) {
  lip.validate();
  std::mt19937_64 rng(seed);
  auto check = [&](double t, double s) {
    const double lhs = std::fabs(f(t) - f(s));
    const double rhs = lip.M * std::pow(std::fabs(t - s), lip.a);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Lip_M(a) violated with M=" << lip.M << " a=" << lip.a << ": |f(" << t << ") - f("
          << s << ")| = " << lhs << " > " << rhs;
      throw LipschitzViolation(msg.str());
    }
  };
  // Half the pairs are global, half local with log-uniform separation down to 1e-6 A.
  for (int i = 0; i < samples; ++i) {
    const double t = A * unit_draw(rng);
    if (i % 2 == 0) {
      check(t, A * unit_draw(rng));
    } else {
      const double sep = A * std::pow(10.0, -6.0 * unit_draw(rng));
      const double s = unit_draw(rng) < 0.5 ? std::max(0.0, t - sep) : std::min(A, t + sep);
      check(t, s);
    }
  }
}

std::vector<BoundCheck> check_modulus_bounds(const Field1D& f, const OperatorSpec& spec,
                                             std::span<const double> xs, double A, double step,
                                             Exec exec) {
  const std::vector<double> values = sweep_kantorovich(spec, f, xs, exec);
  std::vector<BoundCheck> out(xs.size());
  const double tol = spec.policy().series_tol;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double root = std::sqrt(std::max(0.0, delta_n_of_x(spec.n(), spec.q(), spec.params(), x)));
    BoundCheck& c = out[i];
    c.lhs = std::fabs(values[i] - f(x));
    if (root == 0.0) {
      c.rhs = 0.0;
      c.slack = 10.0 * tol;
    } else {
      const double h = std::min(step, root);
      const ModulusEstimate om = modulus_of_continuity(f, root, A, h, Exec::serial);
      c.rhs = 2.0 * om.omega;
      c.slack = 10.0 * tol + 2.0 * grid_lipschitz_estimate(f, A, om.grid_step) * om.grid_step;
    }
    c.holds = c.lhs <= c.rhs + c.slack;
  }
  return out;
}

BoundCheck check_modulus_bound(const Field1D& f, const OperatorSpec& spec, double x, double A,
                               double step) {
  const double xs[] = {x};
  return check_modulus_bounds(f, spec, xs, A, step, Exec::serial).front();
}

std::vector<BoundCheck> check_lipschitz_bounds(const Field1D& f, const LipschitzSpec& lip,
                                               const OperatorSpec& spec,
                                               std::span<const double> xs, double A,
                                               std::uint64_t seed, Exec exec) {
  verify_lipschitz(f, lip, A, seed);
  const std::vector<double> values = sweep_kantorovich(spec, f, xs, exec);
  std::vector<BoundCheck> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = std::max(0.0, delta_n_of_x(spec.n(), spec.q(), spec.params(), xs[i]));
    BoundCheck& c = out[i];
    c.lhs = std::fabs(values[i] - f(xs[i]));
    c.rhs = lip.M * std::pow(d, lip.a / 2.0);
    c.slack = 10.0 * spec.policy().series_tol;
    c.holds = c.lhs <= c.rhs + c.slack;
  }
  return out;
}

BoundCheck check_lipschitz_bound(const Field1D& f, const LipschitzSpec& lip,
                                 const OperatorSpec& spec, double x, double A,
                                 std::uint64_t seed) {
  const double xs[] = {x};
  return check_lipschitz_bounds(f, lip, spec, xs, A, seed, Exec::serial).front();
}

}  // namespace qstancu
