#include "qstancu/operators.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qstancu/errors.hpp"

namespace qstancu {

namespace {

// Walks w_0, w_1, ... by the term ratio. The weight is held as
// mantissa * exp(log_scale) so that w_0 = 1/(1+x)_q^n may underflow for
// large n without losing the later, significant terms.
class WeightRecurrence {
 public:
  WeightRecurrence(std::int64_t n, double x, QParam q) : x_(x), q_(q.value()) {
    const double poch = q_pochhammer(x, n, q);
    if (std::isfinite(poch) && poch < 1e280) {
      mant_ = 1.0 / poch;
    } else {
      double log_poch = 0.0;
      double qi = 1.0;
      for (std::int64_t i = 0; i < n; ++i) {
        log_poch += std::log1p(qi * x);
        qi *= q_;
      }
      mant_ = 1.0;
      log_scale_ = -log_poch;
      scale_ = std::exp(log_scale_);
    }
    qn_ = std::pow(q_, static_cast<double>(n));
    qnk_ = qn_;
    int_nk_ = q_integer(n, q);
    int_k1_ = 1.0;
  }

  double current() const { return mant_ * scale_; }

  /// w_{k+1}/w_k for the current k.
  double ratio() const { return qk_ * int_nk_ * x_ / (int_k1_ * (1.0 + qnk_ * x_)); }

  void advance() {
    mant_ *= ratio();
    if (mant_ > 1e100 || (mant_ < 1e-100 && mant_ > 0.0)) {
      log_scale_ += std::log(mant_);
      mant_ = 1.0;
      scale_ = std::exp(log_scale_);
    }
    // [n+k+1] = [n+k] + q^{n+k}, [k+2] = [k+1] + q^{k+1}
    int_nk_ += qnk_;
    qk_ *= q_;
    qnk_ *= q_;
    int_k1_ += qk_;
  }

 private:
  double x_;
  double q_;
  double mant_ = 1.0;
  double log_scale_ = 0.0;
  double scale_ = 1.0;
  double qn_ = 1.0;
  double qk_ = 1.0;      // q^k
  double qnk_ = 1.0;     // q^{n+k}
  double int_nk_ = 0.0;  // [n+k]_q
  double int_k1_ = 1.0;  // [k+1]_q
};

}  // namespace

void StancuParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= beta)) {
    throw DomainError("Stancu parameters need 0 <= alpha <= beta (alpha=" +
                      std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

double BasisFamily::phi(std::int64_t n, double x, QParam q) const {
  return 1.0 / q_pochhammer(x, n, q);
}

double BasisFamily::ratio(std::int64_t n, std::int64_t k, double x, QParam q) const {
  const double qv = q.value();
  const double qk = std::pow(qv, static_cast<double>(k));
  const double qnk = std::pow(qv, static_cast<double>(n + k));
  return qk * q_integer(n + k, q) * x / (q_integer(k + 1, q) * (1.0 + qnk * x));
}

double BasisFamily::weight(std::int64_t n, std::int64_t k, double x, QParam q) const {
  if (x < 0.0) throw DomainError("basis weight needs x >= 0");
  if (k < 0) throw DomainError("basis index must be nonnegative");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  WeightRecurrence rec(n, x, q);
  for (std::int64_t j = 0; j < k; ++j) rec.advance();
  return rec.current();
}

BasisWeights BasisFamily::weights(std::int64_t n, double x, QParam q,
                                  const TruncationPolicy& pol) const {
  if (x < 0.0) throw DomainError("basis weights need x >= 0");
  BasisWeights out;
  if (x == 0.0) {
    out.w.push_back(1.0);
    out.mass = 1.0;
    return out;
  }
  const double tol = pol.weight_mass_tol;
  const double qv = q.value();
  const double int_n = q_integer(n, q);
  // Every node and scaled cell point of index k lies below
  // t_k = q^{-k} ((k+1)/[n] + 1), because alpha <= beta <= [n] + beta. The tail is
  // cut on sum_{j>k} w_j (1 + t_j)^2, so quadratically growing integrands are
  // covered too; the envelope ratio is at most q^{-2} ((k+2)/(k+1))^2.
  double inv_qk = 1.0;
  WeightRecurrence rec(n, x, q);
  for (std::int64_t k = 0;; ++k) {
    if (k >= pol.k_max) {
      throw TruncationError("weight mass " + std::to_string(out.mass) +
                            " not reached within k_max = " + std::to_string(pol.k_max) +
                            " (x = " + std::to_string(x) + ")");
    }
    const double wk = rec.current();
    out.w.push_back(wk);
    out.mass += wk;
    const double kk = static_cast<double>(k);
    const double growth = (kk + 2.0) / (kk + 1.0) / qv;
    const double r = rec.ratio() * growth * growth;
    if (r < 1.0) {
      const double envelope = 1.0 + inv_qk * ((kk + 1.0) / int_n + 1.0);
      // Ratios decrease in k, so past this point the tail is geometrically bounded.
      if (wk == 0.0 || wk * envelope * envelope * r / (1.0 - r) < tol) break;
    }
    inv_qk /= qv;
    rec.advance();
  }
  return out;
}

double baskakov_weight(std::int64_t n, std::int64_t k, double x, QParam q) {
  return BasisFamily::q_baskakov().weight(n, k, x, q);
}

OperatorSpec::OperatorSpec(std::int64_t n, QParam q, StancuParams params, TruncationPolicy pol,
                           BasisFamily family)
    : n_(n), q_(q), params_(params), pol_(pol), family_(family) {
  if (n < 1) throw DomainError("operator index n must be at least 1");
  params_.validate();
  pol_.validate();
  denom_ = q_integer(n, q) + params_.beta;
}

BivariateSpec::BivariateSpec(OperatorSpec x, OperatorSpec y)
    : x_axis(std::move(x)), y_axis(std::move(y)) {
  if (x_axis.params().alpha != y_axis.params().alpha ||
      x_axis.params().beta != y_axis.params().beta) {
    throw DomainError("both axes of a bivariate operator must share (alpha, beta)");
  }
}

double OperatorSpec::discrete_node(std::int64_t k) const {
  // [k]/(q^{k-1} D) + alpha/D
  const double inv_qk1 = std::pow(q_.value(), static_cast<double>(1 - k));
  return (q_integer(k, q_) * inv_qk1 + params_.alpha) / denom_;
}

double OperatorSpec::cell_lower(std::int64_t k) const {
  const double qv = q_.value();
  return qv * (q_integer(k, q_) + std::pow(qv, static_cast<double>(k - 1)) * params_.alpha) /
         denom_;
}

double OperatorSpec::cell_upper(std::int64_t k) const {
  const double qv = q_.value();
  return (q_integer(k + 1, q_) + std::pow(qv, static_cast<double>(k)) * params_.alpha) / denom_;
}

double OperatorSpec::cell_scale(std::int64_t k) const {
  return std::pow(q_.value(), static_cast<double>(1 - k));
}

double kantorovich_cell_integral(const OperatorSpec& spec, const Field1D& f, std::int64_t k) {
  const double a = spec.cell_lower(k);
  const double b = spec.cell_upper(k);
  const double s = spec.cell_scale(k);
  if (f.is_polynomial()) {
    const auto& c = f.coefficients();
    double acc = 0.0;
    double sm = 1.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] != 0.0) {
        const int mi = static_cast<int>(m);
        acc += c[m] * sm *
               (jackson_monomial_0(mi, b, spec.q()) - jackson_monomial_0(mi, a, spec.q()));
      }
      sm *= s;
    }
    return acc;
  }
  const Field1D scaled([&f, s](double t) { return f(s * t); });
  return jackson_integral(scaled, a, b, spec.q(), spec.policy());
}

double eval_discrete(const OperatorSpec& spec, const Field1D& f, double x) {
  const BasisWeights bw = spec.weights(x);
  double acc = 0.0;
  for (std::size_t k = 0; k < bw.w.size(); ++k) {
    if (bw.w[k] == 0.0) continue;
    const double node = spec.discrete_node(static_cast<std::int64_t>(k));
    const double v = f(node);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite sample at node " + std::to_string(node));
    }
    acc += bw.w[k] * v;
  }
  return acc;
}

double eval_kantorovich(const OperatorSpec& spec, const Field1D& f, double x) {
  const BasisWeights bw = spec.weights(x);
  double acc = 0.0;
  for (std::size_t k = 0; k < bw.w.size(); ++k) {
    if (bw.w[k] == 0.0) continue;
    acc += bw.w[k] * kantorovich_cell_integral(spec, f, static_cast<std::int64_t>(k));
  }
  return spec.denominator() * acc;
}

}  // namespace qstancu
