// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qstancu/bivariate.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/moments.hpp"
#include "qstancu/operators.hpp"
#include "qstancu/qcalc.hpp"
#include "qstancu/rates.hpp"
#include "qstancu/statconv.hpp"

using namespace qstancu;

namespace {

const double kQs[] = {0.5, 0.9, 0.99};
const std::int64_t kNs[] = {5, 10, 50};
const StancuParams kParams[] = {{0, 0}, {1, 2}, {2, 5}};
const double kXs[] = {0, 0.25, 0.5, 1, 2};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double qint(std::int64_t n, double q) {
  double s = 0, p = 1;
  for (std::int64_t j = 0; j < n; ++j, p *= q) s += p;
  return s;
}

double seq_q(std::int64_t n) { return static_cast<double>(n) / static_cast<double>(n + 1); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Criterion 1: direct sums of e0, e1, e2 against the discrete and Kantorovich closed forms.
Outcome moment_equivalence() {
  const Field1D e0 = [](double) { return 1.0; };
  const Field1D e1 = [](double t) { return t; };
  const Field1D e2 = [](double t) { return t * t; };
  double worst = 0;
  for (double qv : kQs) {
    for (std::int64_t n : kNs) {
      for (const auto& p : kParams) {
        const OperatorSpec spec(n, QParam(qv), p);
        const std::vector<double> d[] = {sweep_discrete(spec, e0, kXs, Exec::parallel),
                                         sweep_discrete(spec, e1, kXs, Exec::parallel),
                                         sweep_discrete(spec, e2, kXs, Exec::parallel)};
        const std::vector<double> k[] = {sweep_kantorovich(spec, e0, kXs, Exec::parallel),
                                         sweep_kantorovich(spec, e1, kXs, Exec::parallel),
                                         sweep_kantorovich(spec, e2, kXs, Exec::parallel)};
        for (std::size_t i = 0; i < std::size(kXs); ++i) {
          const MomentSet md = discrete_moments(n, QParam(qv), p, kXs[i]);
          const MomentSet mk = kantorovich_moments(n, QParam(qv), p, kXs[i]);
          worst = std::max({worst, std::fabs(d[0][i] - md.m0), std::fabs(d[1][i] - md.m1),
                            std::fabs(d[2][i] - md.m2), std::fabs(k[0][i] - mk.m0),
                            std::fabs(k[1][i] - mk.m1), std::fabs(k[2][i] - mk.m2)});
        }
      }
    }
  }
  return {worst <= 1e-8, fmt("max abs err %.3e (tol 1e-8)", worst)};
}

// Criterion 2: Jackson integrals of 1, t, t^2 over the k-th cell.
Outcome cell_integrals() {
  double worst = 0;
  for (double qv : kQs) {
    for (std::int64_t n : kNs) {
      for (const auto& p : kParams) {
        const QParam q(qv);
        const double D = qint(n, qv) + p.beta;
        for (std::int64_t k = 0; k <= 10; ++k) {
          const double qk = std::pow(qv, k), qk1 = std::pow(qv, k - 1);
          const double kk = qint(k, qv), k1 = qint(k + 1, qv);
          const double a = qv * (kk + qk1 * p.alpha) / D;
          const double b = (k1 + qk * p.alpha) / D;
          const double q2 = 1 + qv, q3 = 1 + qv + qv * qv;
          const double c0 = 1 / D;
          const double c1 = (q2 * kk + qk * (1 + 2 * p.alpha)) / (q2 * D * D);
          const double c2 = (q3 * kk * kk + qk * kk * ((1 + 3 * p.alpha) * q2 + 1) +
                             (1 + 3 * p.alpha + 3 * p.alpha * p.alpha) * qk * qk) /
                            (q3 * D * D * D);
          const double j0 = jackson_integral([](double) { return 1.0; }, a, b, q);
          const double j1 = jackson_integral([](double t) { return t; }, a, b, q);
          const double j2 = jackson_integral([](double t) { return t * t; }, a, b, q);
          worst = std::max({worst, std::fabs(j0 - c0), std::fabs(j1 - c1), std::fabs(j2 - c2)});
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("max abs err %.3e (tol 1e-10)", worst)};
}

// Criterion 3: truncated weight sums.
Outcome partition_of_unity() {
  double worst = 0;
  const double xs[] = {0, 0.25, 0.5, 1, 2, 5};
  for (double qv : kQs) {
    for (std::int64_t n : kNs) {
      for (const auto& p : kParams) {
        const OperatorSpec spec(n, QParam(qv), p);
        for (double x : xs) {
          const BasisWeights w = spec.weights(x);
          double s = 0;
          for (double v : w.w) s += v;
          worst = std::max(worst, std::fabs(s - 1));
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("max |sum w - 1| %.3e (tol 1e-10)", worst)};
}

// Criterion 4: operator moments at q = 1 - 1e-6 against the q = 1 formulas.
Outcome classical_limit() {
  const QParam q(1 - 1e-6);
  const Field1D e[] = {Field1D::monomial(0), Field1D::monomial(1), Field1D::monomial(2)};
  double worst = 0;
  for (std::int64_t n : kNs) {
    for (const auto& p : kParams) {
      const OperatorSpec spec(n, q, p);
      std::vector<double> v[3];
      for (int m = 0; m < 3; ++m) v[m] = sweep_kantorovich(spec, e[m], kXs, Exec::parallel);
      for (std::size_t i = 0; i < std::size(kXs); ++i) {
        const MomentSet c = classical_moments(n, p, kXs[i]);
        const double ref[] = {c.m0, c.m1, c.m2};
        for (int m = 0; m < 3; ++m) {
          worst = std::max(worst, std::fabs(v[m][i] - ref[m]) / std::fabs(ref[m]));
        }
      }
    }
  }
  return {worst <= 1e-4, fmt("max rel err %.3e (tol 1e-4)", worst)};
}

std::vector<double> grid_0_2() {
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(0.02 * i);
  return xs;
}

// Criterion 5: modulus bound along the plain q-sequence.
Outcome modulus_bound() {
  const std::vector<double> xs = grid_0_2();
  const std::pair<const char*, Field1D> fs[] = {
      {"x/(1+x)", [](double t) { return t / (1 + t); }},
      {"e1", [](double t) { return t; }},
      {"min(x,1)", [](double t) { return std::min(t, 1.0); }}};
  Outcome out;
  int violations = 0;
  for (const auto& [name, f] : fs) {
    std::vector<double> lhs10, lhs100;
    for (std::int64_t n : {10, 20, 50, 100}) {
      const OperatorSpec spec(n, QParam(seq_q(n)), {});
      const auto checks = check_modulus_bounds(f, spec, xs, 4.0, 0.01);
      for (const auto& c : checks) violations += c.holds ? 0 : 1;
      if (n == 10 || n == 100) {
        auto& dst = n == 10 ? lhs10 : lhs100;
        for (const auto& c : checks) dst.push_back(c.lhs);
      }
    }
    std::size_t better = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) better += lhs100[i] <= lhs10[i] ? 1 : 0;
    const double frac = static_cast<double>(better) / xs.size();
    if (frac < 0.95) out.pass = false;
    out.detail += std::string(name) + fmt(": improved %.3f; ", frac);
  }
  if (violations) out.pass = false;
  out.detail += fmt("violations %.0f", violations);
  return out;
}

// Criterion 6: Lipschitz bound.
Outcome lipschitz_bound() {
  const std::vector<double> xs = grid_0_2();
  struct Case {
    Field1D f;
    LipschitzSpec lip;
  };
  const Case cases[] = {{[](double t) { return t; }, {1, 1}},
                        {[](double t) { return std::sqrt(t); }, {1, 0.5}}};
  int violations = 0;
  double worst_ratio = 0;
  for (const auto& c : cases) {
    for (std::int64_t n : {10, 20, 50, 100}) {
      const OperatorSpec spec(n, QParam(seq_q(n)), {});
      for (const auto& b : check_lipschitz_bounds(c.f, c.lip, spec, xs, 4.0, 1)) {
        violations += b.holds ? 0 : 1;
        if (b.rhs > 0) worst_ratio = std::max(worst_ratio, b.lhs / b.rhs);
      }
    }
  }
  return {violations == 0, fmt("violations %.0f, max lhs/rhs %.4f", violations, worst_ratio)};
}

// Criterion 7: statistical convergence along the square-exceptional sequence.
Outcome statistical_convergence() {
  const QSequence seq = make_admissible_qseq("square-exceptional");
  const Field1D f = [](double t) { return t / (1 + t); };
  ExperimentOptions opt;
  opt.A = 2.0;
  opt.step = 0.01;
  opt.n_max = 2000;
  const ConvergenceReport rep = statistical_convergence_experiment(f, seq, {}, opt);
  const auto& pts = rep.curves.front().points;
  auto density_at = [&](std::int64_t N) {
    for (const auto& p : pts) {
      if (p.N == N) return p.density;
    }
    return -1.0;
  };
  const double d200 = density_at(200), d2000 = density_at(2000);
  Outcome out{d2000 >= 0 && d2000 <= 0.15 && d2000 <= d200, ""};
  out.detail = fmt("density(200)=%.4f density(2000)=%.4f", d200, d2000);
  const StancuParams p{};
  for (std::int64_t n : {100, 400, 900}) {
    const std::vector<double> grid = uniform_grid(opt.A, opt.step);
    const double es = sup_error(seq, p, f, grid, n);
    const double en = sup_error(seq, p, f, grid, n + 1);
    if (!(es >= 5 * en)) out.pass = false;
    out.detail += fmt("; E(%.0f)/E(n+1)=%.2f", n, es / en);
  }
  return out;
}

// Criterion 8: weighted convergence of e2.
Outcome weighted_convergence() {
  const QSequence seq = make_admissible_qseq("square-exceptional");
  const Field1D f = Field1D::monomial(2);
  ExperimentOptions opt;
  opt.A = 5.0;
  opt.step = 0.01;
  opt.n_max = 1000;
  const ConvergenceReport rep = weighted_convergence_experiment(f, seq, {}, opt);
  double d100 = -1, d1000 = -1;
  for (const auto& p : rep.curves.front().points) {
    if (p.N == 100) d100 = p.density;
    if (p.N == 1000) d1000 = p.density;
  }
  const QSequence plain = make_admissible_qseq("plain");
  const std::vector<double> grid = uniform_grid(opt.A, opt.step);
  const double e10 = weighted_error(plain, {}, f, grid, 10);
  const double e100 = weighted_error(plain, {}, f, grid, 100);
  const double e1000 = weighted_error(plain, {}, f, grid, 1000);
  const bool pass = d100 >= 0 && d1000 >= 0 && d1000 <= d100 && e100 < e10 && e1000 < e100;
  return {pass, fmt("density(100)=%.4f density(1000)=%.4f", d100, d1000) +
                    fmt("; plain errors %.3e %.3e %.3e", e10, e100, e1000)};
}

// Criterion 9: bivariate moments and both bivariate bounds.
Outcome bivariate() {
  const StancuParams p{1, 2};
  const Point2 pts5[] = {{0, 0}, {0.5, 1}, {1, 0.25}, {2, 2}, {1.5, 0.5}};
  const std::pair<std::int64_t, std::int64_t> sizes[] = {{10, 10}, {10, 20}};
  const Field2D e00 = [](double, double) { return 1.0; };
  const Field2D ex = [](double x, double) { return x; };
  const Field2D ey = [](double, double y) { return y; };
  const Field2D e2 = [](double x, double y) { return x * x + y * y; };
  double worst_moment = 0;
  int mod_viol = 0, lip_viol = 0;
  std::vector<Point2> grid;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) grid.push_back({0.2 * i, 0.2 * j});
  }
  const Field2D fsum = [](double x, double y) { return x / (1 + x) + y / (1 + y); };
  const Field2D froot = [](double x, double y) { return std::sqrt(x) * std::sqrt(y); };
  for (const auto& [n1, n2] : sizes) {
    const QParam q1(seq_q(n1)), q2(seq_q(n2));
    const BivariateSpec bs(OperatorSpec(n1, q1, p), OperatorSpec(n2, q2, p));
    const auto v0 = sweep_bivariate(bs, e00, pts5, Exec::parallel);
    const auto vx = sweep_bivariate(bs, ex, pts5, Exec::parallel);
    const auto vy = sweep_bivariate(bs, ey, pts5, Exec::parallel);
    const auto v2 = sweep_bivariate(bs, e2, pts5, Exec::parallel);
    for (std::size_t i = 0; i < std::size(pts5); ++i) {
      const BivariateMoments m = bivariate_moments(n1, n2, q1, q2, p, pts5[i].x, pts5[i].y);
      worst_moment = std::max({worst_moment, std::fabs(v0[i] - m.m0), std::fabs(vx[i] - m.m1x),
                               std::fabs(vy[i] - m.m1y), std::fabs(v2[i] - m.m2sum)});
    }
    for (const auto& c : check_bivariate_modulus_bounds(fsum, bs, grid, 3.0, 0.05)) {
      mod_viol += c.holds ? 0 : 1;
    }
    for (const auto& c : check_bivariate_lipschitz_bounds(froot, {1, 0.5, 0.5}, bs, grid, 2.0, 1)) {
      lip_viol += c.holds ? 0 : 1;
    }
  }
  return {worst_moment <= 1e-8 && mod_viol == 0 && lip_viol == 0,
          fmt("moment err %.3e; modulus violations %.0f; hoelder violations %.0f", worst_moment,
              mod_viol, lip_viol)};
}

// Criterion 10: q-Cauchy-Schwarz on random admissible intervals.
Outcome cauchy_schwarz() {
  std::mt19937_64 rng(1);
  auto u = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const TruncationPolicy pol{};
  int violations = 0;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double q = u(0.05, 0.99);
    const double b = u(0.01, 5.0);
    const double a = u(0.0, q * b);
    const double x = u(0.0, 6.0);
    const SchwarzCheck c = q_schwarz_evaluate(x, a, b, QParam(q), pol);
    if (c.lhs > c.rhs + 10 * pol.series_tol) {
      ++violations;
      worst = std::max(worst, c.lhs - c.rhs);
    }
  }
  return {violations == 0, fmt("violations %.0f of 1000, max excess %.3e", violations, worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 moment oracle equivalence", moment_equivalence},
      {"2 cell integrals", cell_integrals},
      {"3 partition of unity", partition_of_unity},
      {"4 classical limit", classical_limit},
      {"5 modulus bound", modulus_bound},
      {"6 lipschitz bound", lipschitz_bound},
      {"7 statistical convergence", statistical_convergence},
      {"8 weighted convergence", weighted_convergence},
      {"9 bivariate", bivariate},
      {"10 q-cauchy-schwarz", cauchy_schwarz},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
