#include "qstancu/moments.hpp"

#include <cmath>

#include "qstancu/errors.hpp"

namespace qstancu {

namespace {

constexpr double kGroupedBeyond = 10.0;

struct Quadratic {
  double a2, a1, a0;
  double at(double x) const { return (a2 * x + a1) * x + a0; }
};

// Kantorovich e2 image as a quadratic in x.
Quadratic kantorovich_m2(std::int64_t n, QParam q, const StancuParams& p) {
  const double qv = q.value();
  const double nq = q_integer(n, q);
  const double mq = q_integer(n + 1, q);
  const double d = nq + p.beta;
  const double q2 = q_integer(2, q);
  const double q3 = q_integer(3, q);
  const double al = p.alpha;
  return {nq * mq / (qv * d * d),
          nq * (q3 + qv * ((1.0 + 3.0 * al) * q2 + 1.0)) / (q3 * d * d),
          qv * qv * (1.0 + 3.0 * al + 3.0 * al * al) / (q3 * d * d)};
}

}  // namespace

MomentSet discrete_moments(std::int64_t n, QParam q, const StancuParams& p, double x) {
  if (x < 0.0) throw DomainError("moments need x >= 0");
  const double nq = q_integer(n, q);
  const double mq = q_integer(n + 1, q);
  const double d = nq + p.beta;
  MomentSet m;
  m.m1 = nq * x / d + p.alpha / d;
  m.m2 = nq * mq * x * x / (q.value() * d * d) + nq * (2.0 * p.alpha + 1.0) * x / (d * d) +
         p.alpha * p.alpha / (d * d);
  m.alpha_n = m.m1 - x;
  m.delta_n = m.m2 - 2.0 * x * m.m1 + x * x;
  return m;
}

double kantorovich_delta_grouped(std::int64_t n, QParam q, const StancuParams& p, double x) {
  const double qv = q.value();
  const double nq = q_integer(n, q);
  const double d = nq + p.beta;
  const Quadratic e2 = kantorovich_m2(n, q, p);
  const double shift = qv * (1.0 + 2.0 * p.alpha) / (q_integer(2, q) * d);
  const Quadratic grouped{e2.a2 + 1.0 - 2.0 * nq / d, e2.a1 - 2.0 * shift, e2.a0};
  return grouped.at(x);
}

MomentSet kantorovich_moments(std::int64_t n, QParam q, const StancuParams& p, double x) {
  if (x < 0.0) throw DomainError("moments need x >= 0");
  const double qv = q.value();
  const double nq = q_integer(n, q);
  const double d = nq + p.beta;
  const double shift = qv * (1.0 + 2.0 * p.alpha) / (q_integer(2, q) * d);
  MomentSet m;
  m.m1 = nq * x / d + shift;
  m.m2 = kantorovich_m2(n, q, p).at(x);
  m.alpha_n = (nq / d - 1.0) * x + shift;
  m.delta_n = std::fabs(x) > kGroupedBeyond ? kantorovich_delta_grouped(n, q, p, x)
                                            : m.m2 - 2.0 * x * m.m1 + x * x;
  return m;
}

MomentSet classical_moments(std::int64_t n, const StancuParams& p, double x) {
  if (x < 0.0) throw DomainError("moments need x >= 0");
  const double nd = static_cast<double>(n);
  const double mn = nd + 1.0;
  const double d = nd + p.beta;
  const double al = p.alpha;
  const double c0 = (1.0 + 3.0 * al + 3.0 * al * al) / (3.0 * d * d);
  MomentSet m;
  m.m1 = nd * x / d + (1.0 + 2.0 * al) / (2.0 * d);
  m.m2 = nd * mn * x * x / (d * d) + 2.0 * nd * (al + 1.0) * x / (d * d) + c0;
  m.alpha_n = (nd / d - 1.0) * x + (1.0 + 2.0 * al) / (2.0 * d);
  m.delta_n = (nd * mn / (d * d) + 1.0 - 2.0 * nd / d) * x * x +
              (2.0 * nd * (1.0 + al) / (d * d) - (1.0 + 2.0 * al) / d) * x + c0;
  return m;
}

BivariateMoments bivariate_moments(std::int64_t n1, std::int64_t n2, QParam q1, QParam q2,
                                   const StancuParams& p, double x, double y) {
  const MomentSet mx = kantorovich_moments(n1, q1, p, x);
  const MomentSet my = kantorovich_moments(n2, q2, p, y);
  return {1.0, mx.m1, my.m1, mx.m2 + my.m2};
}

}  // namespace qstancu
