#pragma once

// Stancu-type q-Baskakov operator and its Kantorovich variant.
//
// With phi_n(x) = 1 / (1 + x)_q^n the basis weight
//   q^{k(k-1)/2} D_q^k phi_n(x) (-x)^k / [k]_q!
// has the closed form [n+k-1; k]_q q^{k(k-1)/2} x^k / (1 + x)_q^{n+k}, and
// D_q phi_n = -[n]_q phi_{n+1}, so m(n) = n + 1.

#include <cstdint>
#include <vector>

#include "qstancu/field.hpp"
#include "qstancu/qcalc.hpp"

namespace qstancu {

/// Stancu shift/normalisation pair, 0 <= alpha <= beta.
struct StancuParams {
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const;
};

/// Basis weights w_0 .. w_{K-1} for one (n, q, x).
struct BasisWeights {
  std::vector<double> w;
  double mass = 0.0;  // sum of w
};

/// The phi_n family generating the operator. Only the q-Baskakov family
/// phi_n(x) = 1/(1+x)_q^n is provided.
class BasisFamily {
 public:
  static BasisFamily q_baskakov() { return {}; }

  std::int64_t m_of(std::int64_t n) const { return n + 1; }

  /// phi_n(x).
  double phi(std::int64_t n, double x, QParam q) const;

  /// Single weight, via the term-ratio recurrence from w_0.
  double weight(std::int64_t n, std::int64_t k, double x, QParam q) const;

  /// Ratio w_{k+1} / w_k. Decreasing in k.
  double ratio(std::int64_t n, std::int64_t k, double x, QParam q) const;

  /// Sweeps k upward from 0 until a geometric bound on the remaining mass,
  /// weighted by (1 + t)^2 over the nodes t still to come, drops below
  /// weight_mass_tol. The plain mass is then within weight_mass_tol of 1.
  /// Throws TruncationError if k_max is reached first.
  BasisWeights weights(std::int64_t n, double x, QParam q, const TruncationPolicy& pol) const;
};

/// Everything that fixes one operator instance.
class OperatorSpec {
 public:
  OperatorSpec(std::int64_t n, QParam q, StancuParams params, TruncationPolicy pol = {},
               BasisFamily family = BasisFamily::q_baskakov());

  std::int64_t n() const { return n_; }
  QParam q() const { return q_; }
  const StancuParams& params() const { return params_; }
  const TruncationPolicy& policy() const { return pol_; }
  const BasisFamily& family() const { return family_; }

  /// [n]_q + beta.
  double denominator() const { return denom_; }

  /// ([k]_q + q^{k-1} alpha) / (q^{k-1} ([n]_q + beta)).
  double discrete_node(std::int64_t k) const;

  /// Lower end q([k]_q + q^{k-1} alpha)/([n]_q + beta) of the k-th cell.
  double cell_lower(std::int64_t k) const;
  /// Upper end ([k+1]_q + q^k alpha)/([n]_q + beta) of the k-th cell.
  double cell_upper(std::int64_t k) const;
  /// q^{1-k}, the argument scale inside the k-th cell.
  double cell_scale(std::int64_t k) const;

  BasisWeights weights(double x) const { return family_.weights(n_, x, q_, pol_); }

 private:
  std::int64_t n_;
  QParam q_;
  StancuParams params_;
  TruncationPolicy pol_;
  BasisFamily family_;
  double denom_;
};

/// Tensor pair of axis operators sharing (alpha, beta).
struct BivariateSpec {
  BivariateSpec(OperatorSpec x_axis, OperatorSpec y_axis);

  OperatorSpec x_axis;
  OperatorSpec y_axis;
};

double baskakov_weight(std::int64_t n, std::int64_t k, double x, QParam q);

/// Jackson integral of t -> f(q^{1-k} t) over the k-th cell. Polynomial
/// fields use the exact monomial q-integrals (also valid at q == 1).
double kantorovich_cell_integral(const OperatorSpec& spec, const Field1D& f, std::int64_t k);

/// sum_k w_k f(node_k). Reference evaluation, one point at a time.
double eval_discrete(const OperatorSpec& spec, const Field1D& f, double x);

/// ([n]_q + beta) sum_k w_k J_k. Reference evaluation, one point at a time.
double eval_kantorovich(const OperatorSpec& spec, const Field1D& f, double x);

}  // namespace qstancu
