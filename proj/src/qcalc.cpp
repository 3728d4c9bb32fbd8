#include "qstancu/qcalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qstancu/errors.hpp"

namespace qstancu {

namespace {

constexpr std::int64_t kDirectProductLimit = 60;
constexpr double kNearOne = 1e-12;

}  // namespace

QParam::QParam(double q) : q_(q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("q must lie in (0, 1], got " + std::to_string(q));
  }
}

void TruncationPolicy::validate() const {
  if (!(series_tol > 0.0)) throw DomainError("series_tol must be positive");
  if (!(weight_mass_tol > 0.0 && weight_mass_tol < 1.0)) {
    throw DomainError("weight_mass_tol must lie in (0, 1)");
  }
  if (k_max < 1) throw DomainError("k_max must be at least 1");
}

Field1D Field1D::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  Field1D f([c = coeffs](double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  });
  f.coeffs_ = std::move(coeffs);
  return f;
}

Field1D Field1D::monomial(int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  return polynomial(std::move(c));
}

double q_integer(std::int64_t n, QParam q) {
  if (n <= 0) return 0.0;
  const double qv = q.value();
  if (q.classical()) return static_cast<double>(n);
  if (1.0 - qv < kNearOne) {
    double sum = 0.0;
    double p = 1.0;
    for (std::int64_t j = 0; j < n; ++j) {
      sum += p;
      p *= qv;
    }
    return sum;
  }
  // 1 - q^n without cancellation
  return -std::expm1(static_cast<double>(n) * std::log(qv)) / (1.0 - qv);
}

double q_factorial(std::int64_t n, QParam q) {
  if (n <= kDirectProductLimit) {
    double p = 1.0;
    for (std::int64_t k = 2; k <= n; ++k) p *= q_integer(k, q);
    return p;
  }
  double logp = 0.0;
  for (std::int64_t k = 2; k <= n; ++k) logp += std::log(q_integer(k, q));
  return std::exp(logp);
}

double q_binomial(std::int64_t n, std::int64_t k, QParam q) {
  if (k < 0 || n < 0 || k > n) {
    throw DomainError("q_binomial needs 0 <= k <= n (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  const std::int64_t r = std::min(k, n - k);
  if (n <= kDirectProductLimit) {
    double p = 1.0;
    for (std::int64_t i = 1; i <= r; ++i) {
      p *= q_integer(n - r + i, q) / q_integer(i, q);
    }
    return p;
  }
  double logp = 0.0;
  for (std::int64_t i = 1; i <= r; ++i) {
    logp += std::log(q_integer(n - r + i, q)) - std::log(q_integer(i, q));
  }
  return std::exp(logp);
}

double q_pochhammer(double x, std::int64_t n, QParam q) {
  double p = 1.0;
  double qi = 1.0;
  for (std::int64_t i = 0; i < n; ++i) {
    p *= 1.0 + qi * x;
    qi *= q.value();
  }
  return p;
}

double q_derivative(const Field1D& f, double x, QParam q) {
  if (x == 0.0) throw DomainError("q-derivative at x = 0 needs a limit formula");
  if (q.classical()) throw DomainError("q-derivative with q = 1 is an ordinary derivative");
  const double qv = q.value();
  return (f(x) - f(qv * x)) / ((1.0 - qv) * x);
}

double q_derivative_iterated(const Field1D& f, int k, double x, QParam q) {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  if (!(x > 0.0)) throw DomainError("iterated q-derivative needs x > 0");
  if (q.classical()) throw DomainError("iterated q-derivative needs q < 1");
  const double qv = q.value();

  // g[j] holds the current derivative level sampled at q^j x.
  std::vector<double> g(static_cast<std::size_t>(k) + 1);
  std::vector<double> pts(g.size());
  double p = x;
  for (std::size_t j = 0; j < g.size(); ++j) {
    pts[j] = p;
    g[j] = f(p);
    p *= qv;
  }
  for (int level = 1; level <= k; ++level) {
    for (std::size_t j = 0; j + static_cast<std::size_t>(level) < g.size(); ++j) {
      g[j] = (g[j] - g[j + 1]) / ((1.0 - qv) * pts[j]);
    }
  }
  return g[0];
}

namespace detail {

std::int64_t jackson_term_cap(double q, double series_tol) {
  return 10 * static_cast<std::int64_t>(std::ceil(std::log(series_tol) / std::log(q)));
}

}  // namespace detail

double jackson_integral_0(const Field1D& f, double c, QParam q, const TruncationPolicy& pol) {
  if (c < 0.0) throw DomainError("Jackson integral endpoint must be nonnegative");
  if (q.classical()) throw DomainError("Jackson series needs q < 1");
  if (c == 0.0) return 0.0;
  const double qv = q.value();
  return (1.0 - qv) * c * detail::jackson_series(f, c, qv, pol.series_tol);
}

double jackson_integral(const Field1D& f, double a, double b, QParam q,
                        const TruncationPolicy& pol) {
  if (a < 0.0) throw DomainError("Jackson interval must start at a >= 0");
  if (a > b) throw DomainError("Jackson interval needs a <= b");
  const double upper = jackson_integral_0(f, b, q, pol);
  if (a == 0.0) return upper;
  return upper - jackson_integral_0(f, a, q, pol);
}

double jackson_monomial_0(int m, double c, QParam q) {
  return std::pow(c, m + 1) / q_integer(m + 1, q);
}

SchwarzCheck q_schwarz_evaluate(double x, double a, double b, QParam q,
                                const TruncationPolicy& pol) {
  if (!(b > 0.0)) throw DomainError("q-Schwarz check needs b > 0");
  if (a < 0.0 || a > q.value() * b) {
    throw DomainError("q-Schwarz check needs 0 <= a <= q b");
  }
  const Field1D abs_dev([x](double t) { return std::fabs(t - x); });
  const Field1D sq_dev([x](double t) { return (t - x) * (t - x); });
  const Field1D one([](double) { return 1.0; });

  SchwarzCheck out;
  out.lhs = jackson_integral(abs_dev, a, b, q, pol);
  const double second = jackson_integral(sq_dev, a, b, q, pol);
  const double mass = jackson_integral(one, a, b, q, pol);
  // The interval functional is signed, so either factor may come out negative.
  out.rhs = std::sqrt(std::max(second, 0.0)) * std::sqrt(std::max(mass, 0.0));
  out.holds = out.lhs <= out.rhs + 10.0 * pol.series_tol;
  return out;
}

bool q_schwarz_check(double x, double a, double b, QParam q, const TruncationPolicy& pol) {
  return q_schwarz_evaluate(x, a, b, q, pol).holds;
}

}  // namespace qstancu
