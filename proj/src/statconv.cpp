#include "qstancu/statconv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qstancu/errors.hpp"
#include "qstancu/rates.hpp"

namespace qstancu {

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

IndexPredicate perfect_squares() { return {is_perfect_square, "perfect squares"}; }

IndexPredicate even_numbers() {
  return {[](std::int64_t n) { return n % 2 == 0; }, "even numbers"};
}

IndexPredicate empty_set() {
  return {[](std::int64_t) { return false; }, "empty"};
}

double natural_density(const IndexPredicate& pred, std::int64_t N) {
  if (N < 1) throw DomainError("natural density needs N >= 1");
  std::int64_t count = 0;
  for (std::int64_t j = 1; j <= N; ++j) {
    if (pred.contains(j)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(N);
}

double st_limit_estimate(const std::function<double(std::int64_t)>& seq, double L,
                         double epsilon, std::int64_t N) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const IndexPredicate off{[&](std::int64_t j) { return std::fabs(seq(j) - L) >= epsilon; },
                           "exception set"};
  return natural_density(off, N);
}

QSequence make_admissible_qseq(const std::string& kind) {
  auto main_branch = [](std::int64_t n) {
    return static_cast<double>(n) / static_cast<double>(n + 1);
  };
  if (kind == "plain") {
    return {main_branch, "plain", empty_set()};
  }
  if (kind == "square-exceptional") {
    return {[main_branch](std::int64_t n) { return is_perfect_square(n) ? 0.5 : main_branch(n); },
            "square-exceptional", perfect_squares()};
  }
  throw DomainError("unknown q-sequence kind '" + kind + "'");
}

OperatorSpec spec_along(const QSequence& seq, std::int64_t n, const StancuParams& params,
                        const TruncationPolicy& pol) {
  return OperatorSpec(n, QParam(seq.q(n)), params, pol);
}

double sup_error(const QSequence& seq, const StancuParams& params, const Field1D& f,
                 std::span<const double> grid, std::int64_t n, const TruncationPolicy& pol,
                 Exec exec) {
  if (grid.empty()) throw DomainError("sup_error needs a nonempty grid");
  const OperatorSpec spec = spec_along(seq, n, params, pol);
  const std::vector<double> vals = sweep_kantorovich(spec, f, grid, exec);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::fabs(vals[i] - f(grid[i])));
  }
  return worst;
}

double weighted_norm(const Field1D& f, std::span<const double> grid) {
  if (grid.empty()) throw DomainError("weighted_norm needs a nonempty grid");
  double worst = 0.0;
  for (double x : grid) worst = std::max(worst, std::fabs(f(x)) / (1.0 + x * x));
  return worst;
}

double weighted_error(const QSequence& seq, const StancuParams& params, const Field1D& f,
                      std::span<const double> grid, std::int64_t n, const TruncationPolicy& pol,
                      Exec exec) {
  if (grid.empty()) throw DomainError("weighted_error needs a nonempty grid");
  const OperatorSpec spec = spec_along(seq, n, params, pol);
  const std::vector<double> vals = sweep_kantorovich(spec, f, grid, exec);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::fabs(vals[i] - f(grid[i])) / (1.0 + grid[i] * grid[i]));
  }
  return worst;
}

IndexSample sample_indices(const QSequence& seq, std::int64_t n_max, std::int64_t dense_limit,
                           int samples_per_decade) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (samples_per_decade < 1) throw DomainError("samples_per_decade must be positive");
  IndexSample s;
  auto push = [&](std::int64_t n, std::int64_t w, bool exc) {
    s.n_values.push_back(n);
    s.weights.push_back(w);
    s.exceptional.push_back(exc ? 1 : 0);
  };
  const std::int64_t dense_end = std::min(dense_limit, n_max);
  for (std::int64_t n = 1; n <= dense_end; ++n) push(n, 1, seq.exceptional.contains(n));
  if (n_max <= dense_end) return s;

  // Log-spaced main-branch targets, each moved down to a non-exceptional index.
  std::vector<std::int64_t> targets;
  for (int i = 1;; ++i) {
    const double t = static_cast<double>(dense_end) *
                     std::pow(10.0, static_cast<double>(i) / samples_per_decade);
    auto n = static_cast<std::int64_t>(std::llround(t));
    if (n >= n_max) break;
    targets.push_back(n);
  }
  targets.push_back(n_max);
  std::vector<std::int64_t> mains;
  for (std::int64_t t : targets) {
    while (t > dense_end && seq.exceptional.contains(t)) --t;
    if (t > dense_end && (mains.empty() || t > mains.back())) mains.push_back(t);
  }

  std::int64_t prev = dense_end;
  for (std::int64_t m : mains) {
    std::int64_t regular = 0;
    for (std::int64_t j = prev + 1; j <= m; ++j) {
      if (seq.exceptional.contains(j)) {
        push(j, 1, true);
      } else {
        ++regular;
      }
    }
    push(m, regular, false);
    prev = m;
  }
  for (std::int64_t j = prev + 1; j <= n_max; ++j) push(j, 1, true);  // all exceptional
  return s;
}

std::vector<std::int64_t> density_checkpoints(const IndexSample& sample,
                                              std::int64_t dense_limit) {
  std::vector<std::int64_t> cps;
  if (sample.n_values.empty()) return cps;
  const std::int64_t n_max = sample.n_values.back();
  const std::int64_t dense_end = std::min(dense_limit, n_max);
  for (std::int64_t base = 10; base <= dense_end; base *= 10) {
    for (std::int64_t mult : {1, 2, 5}) {
      if (base * mult <= dense_end) cps.push_back(base * mult);
    }
  }
  if (cps.empty() || cps.back() != dense_end) cps.push_back(dense_end);
  for (std::size_t i = 0; i < sample.n_values.size(); ++i) {
    const std::int64_t n = sample.n_values[i];
    if (n > dense_end && !sample.exceptional[i]) cps.push_back(n);
  }
  if (cps.back() != n_max) cps.push_back(n_max);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

bool curve_verdict(const DensityCurve& curve) {
  const auto& p = curve.points;
  if (p.empty()) return false;
  const std::size_t m = p.size();
  for (std::size_t i = m >= 3 ? m - 2 : 1; i < m; ++i) {
    if (p[i].density > p[i - 1].density) return false;
  }
  return p.back().density < p.front().density || p.back().density == 0.0;
}

std::vector<DensityCurve> density_curves(const ConvergenceReport& rep,
                                         std::span<const double> epsilons,
                                         std::int64_t dense_limit) {
  IndexSample sample{rep.n_values, rep.weights, rep.exceptional};
  const std::vector<std::int64_t> cps = density_checkpoints(sample, dense_limit);
  std::vector<DensityCurve> curves;
  for (double eps : epsilons) {
    DensityCurve c;
    c.epsilon = eps;
    std::int64_t count = 0;
    std::size_t i = 0;
    for (std::int64_t N : cps) {
      while (i < rep.n_values.size() && rep.n_values[i] <= N) {
        if (rep.errors[i] >= eps) count += rep.weights[i];
        ++i;
      }
      c.points.push_back({N, static_cast<double>(count) / static_cast<double>(N)});
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

namespace {

template <class ErrorAt>
ConvergenceReport run_experiment(const QSequence& seq, const ExperimentOptions& opt,
                                 const ErrorAt& error_at) {
  if (opt.n_max < 10) throw DomainError("experiments need N_max >= 10");
  for (double eps : opt.epsilons) {
    if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  }
  const IndexSample sample = sample_indices(seq, opt.n_max, opt.dense_limit, opt.samples_per_decade);
  ConvergenceReport rep;
  rep.n_values = sample.n_values;
  rep.weights = sample.weights;
  rep.exceptional = sample.exceptional;
  rep.q_values.resize(rep.n_values.size());
  rep.errors.resize(rep.n_values.size());
  for (std::size_t i = 0; i < rep.n_values.size(); ++i) rep.q_values[i] = seq.q(rep.n_values[i]);

  // Largest n first: those jobs dominate the cost.
  std::vector<std::size_t> order(rep.n_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rep.n_values[a] > rep.n_values[b]; });
  for_each_index(static_cast<std::int64_t>(order.size()), opt.exec, [&](std::int64_t j) {
    const std::size_t i = order[j];
    rep.errors[i] = error_at(rep.n_values[i]);
  });

  rep.curves = density_curves(rep, opt.epsilons, opt.dense_limit);
  rep.verdict = std::all_of(rep.curves.begin(), rep.curves.end(), curve_verdict);
  return rep;
}

}  // namespace

ConvergenceReport statistical_convergence_experiment(const Field1D& f, const QSequence& seq,
                                                     const StancuParams& params,
                                                     const ExperimentOptions& opt) {
  const std::vector<double> grid = uniform_grid(opt.A, opt.step);
  return run_experiment(seq, opt, [&](std::int64_t n) {
    return sup_error(seq, params, f, grid, n, opt.pol, opt.exec);
  });
}

ConvergenceReport weighted_convergence_experiment(const Field1D& f, const QSequence& seq,
                                                  const StancuParams& params,
                                                  const ExperimentOptions& opt) {
  const std::vector<double> grid = uniform_grid(opt.A, opt.step);
  for (double x : grid) {
    if (std::fabs(f(x)) > 1e6 * (1.0 + x * x)) {
      throw DomainError("function leaves the weighted class at x = " + std::to_string(x));
    }
  }
  ConvergenceReport rep = run_experiment(seq, opt, [&](std::int64_t n) {
    return weighted_error(seq, params, f, grid, n, opt.pol, opt.exec);
  });
  rep.weighted_norm = true;
  return rep;
}

}  // namespace qstancu
