#include <cmath>
#include <random>

#include "doctest.h"
#include "qstancu/errors.hpp"
#include "qstancu/moments.hpp"
#include "qstancu/rates.hpp"

using namespace qstancu;
using doctest::Approx;

namespace {
const Field1D e0 = [](double) { return 1.0; };
const Field1D e1 = [](double t) { return t; };
const Field1D e2 = [](double t) { return t * t; };
const Field1D frac = [](double t) { return t / (1 + t); };
const Field1D min1 = [](double t) { return std::min(t, 1.0); };
const Field1D wave = [](double t) { return std::sin(3 * t) + 0.3 * t; };

double qn(std::int64_t n) { return static_cast<double>(n) / static_cast<double>(n + 1); }
}  // namespace

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(2, 0.03);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[1] - g[0] <= 0.03);
  CHECK_THROWS_AS(uniform_grid(2, 0), DomainError);
}

TEST_CASE("modulus of continuity examples") {
  CHECK(modulus_of_continuity(e1, 0.3, 2, 0.01).omega == Approx(0.3).epsilon(1e-12));
  CHECK(modulus_of_continuity(e0, 0.7, 2, 0.01).omega == 0.0);
  CHECK(modulus_of_continuity(e2, 0.2, 2, 0.01).omega == Approx(0.76).epsilon(1e-12));
  CHECK(modulus_of_continuity(e2, 0.0, 2, 0.01).omega == 0.0);
  CHECK(modulus_of_continuity(min1, 0.25, 3, 0.01).omega == Approx(0.25).epsilon(1e-12));
}

TEST_CASE("modulus properties") {
  for (const Field1D* f : {&frac, &min1, &wave, &e2}) {
    const double h = 0.005;
    const double lip = grid_lipschitz_estimate(*f, 4, h);
    double prev = 0;
    for (double d : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
      const double w = modulus_of_continuity(*f, d, 4, h).omega;
      CHECK(w >= prev);
      prev = w;
      const double w2 = modulus_of_continuity(*f, 2 * d, 4, h).omega;
      CHECK(w2 <= 2 * w + 4 * lip * h);
    }
  }
}

TEST_CASE("modulus inequality for pairs of points") {
  // |f(t) - f(x)| <= omega(delta) (1 + |t - x| / delta) + grid correction
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 4);
  for (const Field1D* f : {&frac, &min1, &wave}) {
    const double h = 0.005;
    const double lip = grid_lipschitz_estimate(*f, 4, h);
    for (double d : {0.05, 0.3}) {
      const double w = modulus_of_continuity(*f, d, 4, h).omega;
      for (int i = 0; i < 300; ++i) {
        const double t = U(rng), x = U(rng);
        const double corr = 2 * lip * h * (1 + std::fabs(t - x) / d);
        CHECK(std::fabs((*f)(t) - (*f)(x)) <= w * (1 + std::fabs(t - x) / d) + corr);
      }
    }
  }
}

TEST_CASE("second central moment") {
  CHECK(delta_n_of_x(10, QParam(0.9), {0, 0}, 0) == Approx(0.0070458).epsilon(1e-5));
  for (double x : {0.0, 0.5, 3.0}) {
    CHECK(delta_n_of_x(20, QParam(0.8), {1, 2}, x) ==
          Approx(kantorovich_moments(20, QParam(0.8), {1, 2}, x).delta_n).epsilon(1e-12));
  }
  const double r = classical_moments(2000, {0, 0}, 1).delta_n / classical_moments(1000, {0, 0}, 1).delta_n;
  CHECK(r >= 0.4);
  CHECK(r <= 0.6);

  const double d10 = delta_n_of_x(10, QParam(qn(10)), {0, 0}, 1);
  const double d100 = delta_n_of_x(100, QParam(qn(100)), {0, 0}, 1);
  const double d1000 = delta_n_of_x(1000, QParam(qn(1000)), {0, 0}, 1);
  CHECK(d10 > d100);
  CHECK(d100 > d1000);
}

TEST_CASE("Lipschitz membership sampling") {
  CHECK_NOTHROW(verify_lipschitz(e1, {1, 1}, 4, 1));
  CHECK_NOTHROW(verify_lipschitz([](double t) { return std::sqrt(t); }, {1, 0.5}, 4, 1));
  CHECK_THROWS_AS(verify_lipschitz([](double t) { return std::sqrt(t); }, {1, 1}, 4, 1),
                  LipschitzViolation);
  CHECK_THROWS_AS(verify_lipschitz(e2, {1, 1}, 4, 1), LipschitzViolation);
  CHECK_THROWS_AS(LipschitzSpec({0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(LipschitzSpec({1, 1.5}).validate(), DomainError);
}

TEST_CASE("modulus bound") {
  {
    const OperatorSpec spec(30, QParam(0.9), {1, 2});
    const BoundCheck b = check_modulus_bound(e0, spec, 1.3, 4, 0.01);
    CHECK(b.lhs <= 1e-10);
    CHECK(b.holds);
  }
  {
    const OperatorSpec spec(20, QParam(0.9), {1, 2});
    CHECK(check_modulus_bound(frac, spec, 1, 4, 0.01).holds);
  }
  {
    const OperatorSpec spec(10, QParam(0.8), {0, 0});
    const MomentSet m = kantorovich_moments(10, QParam(0.8), {0, 0}, 0.5);
    const BoundCheck b = check_modulus_bound(e1, spec, 0.5, 4, 0.01);
    CHECK(b.lhs == Approx(std::fabs(m.alpha_n)).epsilon(1e-10));
    // The grid modulus of e1 is delta rounded down to the grid.
    CHECK(b.rhs <= 2 * std::sqrt(m.delta_n) + 1e-12);
    CHECK(b.rhs >= 2 * std::sqrt(m.delta_n) - 2 * 0.01);
    CHECK(b.holds);
    CHECK(b.lhs <= b.rhs);
  }
  SUBCASE("batch matches single points") {
    const OperatorSpec spec(15, QParam(0.85), {0.5, 1});
    const std::vector<double> xs{0, 0.3, 1.1, 1.9};
    const auto batch = check_modulus_bounds(wave, spec, xs, 4, 0.01);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const BoundCheck one = check_modulus_bound(wave, spec, xs[i], 4, 0.01);
      CHECK(batch[i].lhs == Approx(one.lhs).epsilon(1e-10));
      CHECK(batch[i].rhs == Approx(one.rhs).epsilon(1e-12));
      CHECK(batch[i].holds);
    }
  }
}

TEST_CASE("Lipschitz bound") {
  const OperatorSpec spec(20, QParam(0.9), {0, 0});
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    const BoundCheck b = check_lipschitz_bound(e1, {1, 1}, spec, x);
    CHECK(b.rhs == Approx(std::sqrt(delta_n_of_x(20, QParam(0.9), {0, 0}, x))).epsilon(1e-12));
    CHECK(b.holds);
    const BoundCheck c = check_lipschitz_bound(e0, {2, 0.3}, spec, x);
    CHECK(c.lhs <= 1e-10);
    CHECK(c.holds);
  }
  CHECK(check_lipschitz_bound([](double t) { return std::sqrt(t); }, {1, 0.5}, spec, 1).holds);
  CHECK_THROWS_AS(check_lipschitz_bound([](double t) { return std::sqrt(t); }, {1, 1}, spec, 1),
                  LipschitzViolation);
}
