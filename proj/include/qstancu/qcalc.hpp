#pragma once

// q-calculus primitives: q-integers, factorials, binomials, the q-Pochhammer
// product, q-derivatives and truncated Jackson integrals.

#include <cstdint>

#include "qstancu/field.hpp"

namespace qstancu {

/// Deformation parameter q in (0, 1]. q == 1 is the classical limit.
class QParam {
 public:
  explicit QParam(double q);

  double value() const { return q_; }
  bool classical() const { return q_ == 1.0; }

  friend bool operator==(QParam, QParam) = default;

 private:
  double q_;
};

/// Stopping rules for the infinite sums.
struct TruncationPolicy {
  double series_tol = 1e-12;       // absolute tail bound for geometric-type series
  double weight_mass_tol = 1e-12;  // bound on the (1 + t^2)-weighted basis tail
  int k_max = 10000;               // hard cap on basis terms

  /// Throws DomainError unless 0 < series_tol, 0 < weight_mass_tol < 1, k_max >= 1.
  void validate() const;
};

double q_integer(std::int64_t n, QParam q);
double q_factorial(std::int64_t n, QParam q);

/// Gaussian binomial [n; k]_q. Throws DomainError when k > n.
double q_binomial(std::int64_t n, std::int64_t k, QParam q);

/// (1 + x)_q^n = (1 + x)(1 + q x) ... (1 + q^{n-1} x).
double q_pochhammer(double x, std::int64_t n, QParam q);

/// (f(x) - f(qx)) / ((1 - q) x). Throws DomainError for x == 0 or q == 1.
double q_derivative(const Field1D& f, double x, QParam q);

/// k-fold q-derivative at x > 0, evaluated on the grid {q^j x : j <= k}.
double q_derivative_iterated(const Field1D& f, int k, double x, QParam q);

/// (1 - q) c sum_j f(c q^j) q^j for c >= 0 and q < 1.
double jackson_integral_0(const Field1D& f, double c, QParam q,
                          const TruncationPolicy& pol = {});

/// Jackson integral over [a, b] as the difference of two one-endpoint integrals.
double jackson_integral(const Field1D& f, double a, double b, QParam q,
                        const TruncationPolicy& pol = {});

/// Exact q-integral of t^m over [0, c]: c^{m+1} / [m+1]_q. Valid for q == 1.
double jackson_monomial_0(int m, double c, QParam q);

struct SchwarzCheck {
  double lhs = 0;  // integral of |t - x|
  double rhs = 0;  // sqrt(integral |t - x|^2) * sqrt(integral 1)
  bool holds = false;
};

/// q-Cauchy-Schwarz for t -> |t - x| over [a, b]. Requires b > 0 and
/// 0 <= a <= q b; otherwise DomainError. holds allows 10 series_tol of slack.
SchwarzCheck q_schwarz_evaluate(double x, double a, double b, QParam q,
                                const TruncationPolicy& pol = {});
bool q_schwarz_check(double x, double a, double b, QParam q,
                     const TruncationPolicy& pol = {});

namespace detail {

/// Number of terms after which a Jackson series is cut regardless of the
/// tail test: 10 * ceil(log(tol) / log(q)).
std::int64_t jackson_term_cap(double q, double series_tol);

/// sum_j q^j g(c q^j), stopping at the first j with q^j (1 + |g|) < tol
/// (that term included). Throws EvaluationError on a non-finite sample.
template <class G>
double jackson_series(const G& g, double c, double q, double series_tol);

}  // namespace detail
}  // namespace qstancu

#include "qstancu/qcalc_inl.hpp"
