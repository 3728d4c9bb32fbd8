#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qstancu/errors.hpp"
#include "qstancu/qcalc.hpp"

using namespace qstancu;
using doctest::Approx;

namespace {
const Field1D e0 = [](double) { return 1.0; };
const Field1D e1 = [](double t) { return t; };
const Field1D e2 = [](double t) { return t * t; };
}  // namespace

TEST_CASE("QParam range") {
  CHECK_THROWS_AS(QParam(0.0), DomainError);
  CHECK_THROWS_AS(QParam(1.5), DomainError);
  CHECK_THROWS_AS(QParam(std::nan("")), DomainError);
  CHECK(QParam(1.0).classical());
  CHECK_FALSE(QParam(0.999).classical());
}

TEST_CASE("truncation policy validation") {
  TruncationPolicy p;
  CHECK_NOTHROW(p.validate());
  p.weight_mass_tol = 1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.series_tol = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.k_max = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("q-integers") {
  CHECK(q_integer(0, QParam(0.5)) == 0.0);
  CHECK(q_integer(3, QParam(0.5)) == Approx(1.75).epsilon(1e-15));
  CHECK(q_integer(7, QParam(1.0)) == 7.0);
  for (double q : {0.1, 0.5, 0.9, 0.999, 1 - 1e-13}) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      const double lhs = q_integer(n, QParam(q));
      const double rhs = q_integer(n - 1, QParam(q)) + std::pow(q, static_cast<double>(n - 1));
      CHECK(std::fabs(lhs - rhs) <= 1e-14 * lhs);
    }
  }
}

TEST_CASE("q-factorials and binomials") {
  CHECK(q_factorial(0, QParam(0.9)) == 1.0);
  CHECK(q_factorial(2, QParam(0.5)) == Approx(1.5));
  CHECK(q_factorial(5, QParam(1.0)) == Approx(120.0));
  CHECK(q_binomial(4, 0, QParam(0.7)) == 1.0);
  CHECK(q_binomial(4, 2, QParam(0.5)) == Approx(2.1875).epsilon(1e-14));
  CHECK(q_binomial(5, 2, QParam(1.0)) == Approx(10.0));
  CHECK_THROWS_AS(q_binomial(3, 4, QParam(0.5)), DomainError);

  SUBCASE("against the division-free recursion") {
    for (double q : {0.3, 0.8, 0.97}) {
      for (std::int64_t n = 0; n <= 18; ++n) {
        CHECK(q_factorial(n, QParam(q)) == Approx(oracle::qfact(n, q)).epsilon(1e-13));
        for (std::int64_t k = 0; k <= n; ++k) {
          CHECK(q_binomial(n, k, QParam(q)) == Approx(oracle::qbinom(n, k, q)).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("q-Pascal identity, including the log-space branch") {
    for (double q : {0.5, 0.95, 0.999}) {
      for (std::int64_t n : {2, 10, 40, 61, 62, 90, 150}) {
        for (std::int64_t k = 1; k < n; k += std::max<std::int64_t>(1, n / 7)) {
          const double lhs = q_binomial(n, k, QParam(q));
          const double rhs = q_binomial(n - 1, k - 1, QParam(q)) +
                             std::pow(q, static_cast<double>(k)) * q_binomial(n - 1, k, QParam(q));
          CHECK(std::fabs(lhs - rhs) <= 1e-12 * lhs);
        }
      }
    }
  }
}

TEST_CASE("q-Pochhammer") {
  CHECK(q_pochhammer(2, 0, QParam(0.5)) == 1.0);
  CHECK(q_pochhammer(1, 2, QParam(0.5)) == Approx(3.0));
  CHECK(q_pochhammer(1, 3, QParam(1.0)) == Approx(8.0));
  CHECK(q_pochhammer(0.7, 9, QParam(0.6)) == Approx(oracle::poch(0.7, 9, 0.6)).epsilon(1e-14));
}

TEST_CASE("q-derivatives") {
  CHECK(q_derivative(e2, 2, QParam(0.5)) == Approx(3.0));
  CHECK(q_derivative(e1, 0.3, QParam(0.8)) == Approx(1.0));
  CHECK(q_derivative(e0, 1, QParam(0.5)) == 0.0);
  CHECK_THROWS_AS(q_derivative(e1, 0.0, QParam(0.5)), DomainError);
  CHECK_THROWS_AS(q_derivative(e1, 1.0, QParam(1.0)), DomainError);

  CHECK(q_derivative_iterated(e2, 2, 1, QParam(0.5)) == Approx(1.5));
  CHECK(std::fabs(q_derivative_iterated(e2, 3, 1, QParam(0.5))) < 1e-12);
  CHECK(q_derivative_iterated(e2, 0, 1.3, QParam(0.5)) == Approx(1.69));

  // D_q 1/(1+x)_q^n = -[n]_q / (1+x)_q^{n+1}; at n = 2, x = 1, q = 1/2 this is -0.4.
  const double q = 0.5;
  const Field1D phi2 = [q](double x) { return 1.0 / ((1 + x) * (1 + q * x)); };
  CHECK(q_derivative_iterated(phi2, 1, 1, QParam(q)) == Approx(-0.4).epsilon(1e-14));
  CHECK(q_derivative_iterated(phi2, 1, 1, QParam(q)) ==
        Approx(-oracle::qint(2, q) / oracle::poch(1, 3, q)));
}

TEST_CASE("Jackson integrals from zero") {
  CHECK(jackson_integral_0(e1, 1, QParam(0.5)) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(jackson_integral_0(e0, 2, QParam(0.9)) == Approx(2.0).epsilon(1e-11));
  CHECK(jackson_integral_0(e2, 1, QParam(0.8)) == Approx(1 / 2.44).epsilon(1e-11));
  CHECK(jackson_integral_0(e2, 0, QParam(0.8)) == 0.0);
  CHECK_THROWS_AS(jackson_integral_0(e1, -1, QParam(0.5)), DomainError);
  CHECK_THROWS_AS(jackson_integral_0(e1, 1, QParam(1.0)), DomainError);

  const TruncationPolicy pol;
  for (double q : {0.2, 0.5, 0.9, 0.99}) {
    for (double c : {0.3, 1.0, 2.5}) {
      for (int m = 0; m <= 3; ++m) {
        const Field1D em = [m](double t) { return std::pow(t, m); };
        const double series = jackson_integral_0(em, c, QParam(q), pol);
        const double closed = std::pow(c, m + 1) / oracle::qint(m + 1, q);
        CHECK(std::fabs(series - closed) <= 10 * pol.series_tol * std::max(1.0, closed));
        CHECK(jackson_monomial_0(m, c, QParam(q)) == Approx(closed).epsilon(1e-14));
      }
    }
  }
  CHECK(jackson_monomial_0(2, 3, QParam(1.0)) == Approx(9.0));
}

TEST_CASE("Jackson integrals over intervals") {
  CHECK(jackson_integral(e0, 0.5, 1, QParam(0.5)) == Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(jackson_integral(e0, 1, 0.5, QParam(0.5)), DomainError);

  // First Kantorovich cell for n = 4, alpha = 1, beta = 2, q = 0.9: length 1 / ([4] + 2).
  const double q = 0.9, alpha = 1, beta = 2;
  const double D = oracle::qint(4, q) + beta;
  {
    const double a = q * (0 + alpha / q) / D, b = (1 + alpha) / D;
    CHECK(jackson_integral(e0, a, b, QParam(q)) == Approx(1 / D).epsilon(1e-11));
    CHECK(1 / D == Approx(0.183857).epsilon(1e-6));
  }
  {
    const std::int64_t k = 1;
    const double qk = q;
    const double a = q * (oracle::qint(k, q) + alpha) / D;
    const double b = (oracle::qint(k + 1, q) + qk * alpha) / D;
    const double q2 = 1 + q;
    const double expected = (q2 * oracle::qint(k, q) + qk * (1 + 2 * alpha)) / (q2 * D * D);
    CHECK(jackson_integral(e1, a, b, QParam(q)) == Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("non-finite integrand is reported") {
  const Field1D bad = [](double t) { return 1.0 / (t - 0.5); };
  CHECK_THROWS_AS(jackson_integral_0(bad, 1, QParam(0.5)), EvaluationError);
}

TEST_CASE("classical limit of the primitives") {
  const QParam q(1 - 1e-8);
  for (std::int64_t n = 1; n <= 20; ++n) {
    CHECK(q_integer(n, q) == Approx(static_cast<double>(n)).epsilon(1e-5));
    CHECK(q_factorial(n, q) == Approx(std::tgamma(static_cast<double>(n) + 1)).epsilon(1e-5));
    for (std::int64_t k = 0; k <= n; k += 3) {
      const double c = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
      CHECK(q_binomial(n, k, q) == Approx(c).epsilon(1e-5));
    }
    CHECK(q_pochhammer(0.4, n, q) == Approx(std::pow(1.4, static_cast<double>(n))).epsilon(1e-5));
  }
  for (int m = 0; m <= 3; ++m) {
    CHECK(jackson_monomial_0(m, 1.7, q) == Approx(std::pow(1.7, m + 1) / (m + 1)).epsilon(1e-5));
  }
  // The series route needs about 1e7 terms at this distance from 1.
  const QParam q6(1 - 1e-6);
  CHECK(jackson_integral_0(e2, 1.5, q6) == Approx(1.125).epsilon(1e-5));
  CHECK(jackson_integral(e1, 0.5, 1.5, q6) == Approx(1.0).epsilon(1e-5));
}

TEST_CASE("q-Cauchy-Schwarz for |t - x|") {
  CHECK(q_schwarz_check(0, 0, 1, QParam(0.5)));
  CHECK(q_schwarz_check(1, 0.2, 0.5, QParam(0.5)));
  CHECK_THROWS_AS(q_schwarz_check(0.5, 0.5, 0.9, QParam(0.5)), DomainError);
  CHECK_THROWS_AS(q_schwarz_check(0.5, 0.1, 0.0, QParam(0.5)), DomainError);

  SUBCASE("holds when the interval is a Jackson measure") {
    // From 0, or with a = q^m b, the integral is a positive combination of point masses.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0, 1);
    int violations = 0;
    for (int i = 0; i < 500; ++i) {
      const double q = 0.05 + 0.94 * U(rng), b = 0.01 + 4.99 * U(rng), x = 6 * U(rng);
      const int m = 2 + static_cast<int>(4 * U(rng));
      if (!q_schwarz_check(x, 0, b, QParam(q))) ++violations;
      if (!q_schwarz_check(x, std::pow(q, m) * b, b, QParam(q))) ++violations;
      // With m = 1 there is a single node and both sides coincide.
      const SchwarzCheck one = q_schwarz_evaluate(x, q * b, b, QParam(q));
      CHECK(std::fabs(one.lhs - one.rhs) <= 1e-9);
    }
    CHECK(violations == 0);
  }

  SUBCASE("can fail for a general interval") {
    // Over [0.4, 1] at q = 1/2 the Jackson functional is signed. By hand:
    // lhs = 1/3 - 29/150 = 0.14, rhs = sqrt(0.032321 * 0.6) = 0.139335.
    const SchwarzCheck r = q_schwarz_evaluate(0.75, 0.4, 1, QParam(0.5));
    CHECK(r.lhs == Approx(0.14).epsilon(1e-10));
    CHECK(r.rhs == Approx(0.139335).epsilon(1e-5));
    CHECK_FALSE(r.holds);
  }
}
