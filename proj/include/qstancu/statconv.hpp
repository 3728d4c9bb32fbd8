#pragma once

// Natural density, statistical limits and the finite-N experiments that
// track sup-norm (or weighted-norm) errors of the Kantorovich operator along
// a q-sequence.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qstancu/field.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/operators.hpp"

namespace qstancu {

struct IndexPredicate {
  std::function<bool(std::int64_t)> contains;
  std::string label;
};

IndexPredicate perfect_squares();
IndexPredicate even_numbers();
IndexPredicate empty_set();

bool is_perfect_square(std::int64_t n);

/// |{j <= N : pred(j)}| / N.
double natural_density(const IndexPredicate& pred, std::int64_t N);

/// Density at N of {j <= N : |seq(j) - L| >= epsilon}.
double st_limit_estimate(const std::function<double(std::int64_t)>& seq, double L,
                         double epsilon, std::int64_t N);

struct QSequence {
  std::function<double(std::int64_t)> q;
  std::string label;
  IndexPredicate exceptional;  // indices off the main branch
};

/// "plain":              q_n = 1 - 1/(n+1)
/// "square-exceptional": q_n = 1/2 on perfect squares, 1 - 1/(n+1) otherwise
/// Throws DomainError for any other kind.
QSequence make_admissible_qseq(const std::string& kind);

/// OperatorSpec for index n along a q-sequence.
OperatorSpec spec_along(const QSequence& seq, std::int64_t n, const StancuParams& params,
                        const TruncationPolicy& pol = {});

/// max over grid of |L*(f; q_n, x) - f(x)|.
double sup_error(const QSequence& seq, const StancuParams& params, const Field1D& f,
                 std::span<const double> grid, std::int64_t n, const TruncationPolicy& pol = {},
                 Exec exec = Exec::parallel);

/// max over grid of |f(x)| / (1 + x^2).
double weighted_norm(const Field1D& f, std::span<const double> grid);

/// max over grid of |L*(f; q_n, x) - f(x)| / (1 + x^2).
double weighted_error(const QSequence& seq, const StancuParams& params, const Field1D& f,
                      std::span<const double> grid, std::int64_t n,
                      const TruncationPolicy& pol = {}, Exec exec = Exec::parallel);

struct DensityPoint {
  std::int64_t N = 0;
  double density = 0.0;
};

struct DensityCurve {
  double epsilon = 0.0;
  std::vector<DensityPoint> points;
};

/// Sampled errors along the index range. weight[i] is the number of indices
/// in 1..N_max that the sample n_values[i] stands for.
struct ConvergenceReport {
  std::vector<std::int64_t> n_values;
  std::vector<double> q_values;
  std::vector<char> exceptional;
  std::vector<std::int64_t> weights;
  std::vector<double> errors;
  std::vector<DensityCurve> curves;
  bool weighted_norm = false;  // errors are grid weighted norms
  bool verdict = false;
};

struct ExperimentOptions {
  double A = 2.0;                  // domain [0, A] (X_max in weighted mode)
  double step = 0.01;              // x grid step
  std::int64_t n_max = 2000;
  std::int64_t dense_limit = 200;  // every n up to here is evaluated
  int samples_per_decade = 24;     // main-branch sampling above dense_limit
  std::vector<double> epsilons{0.05};
  TruncationPolicy pol{};
  Exec exec = Exec::parallel;
};

/// Indices evaluated by the experiments, with their representation weights.
struct IndexSample {
  std::vector<std::int64_t> n_values;
  std::vector<std::int64_t> weights;
  std::vector<char> exceptional;
};
IndexSample sample_indices(const QSequence& seq, std::int64_t n_max, std::int64_t dense_limit,
                           int samples_per_decade);

/// Density checkpoints used in the curves: 10, 20, 50, 100, 200, ... up to
/// dense_limit, then every main-branch sample above it (N_max always included).
std::vector<std::int64_t> density_checkpoints(const IndexSample& sample,
                                              std::int64_t dense_limit);

/// Curve non-increasing over its last three checkpoints with a net decrease.
bool curve_verdict(const DensityCurve& curve);

ConvergenceReport statistical_convergence_experiment(const Field1D& f, const QSequence& seq,
                                                     const StancuParams& params,
                                                     const ExperimentOptions& opt);

/// Throws DomainError when |f| exceeds 1e6 (1 + x^2) on the grid.
ConvergenceReport weighted_convergence_experiment(const Field1D& f, const QSequence& seq,
                                                  const StancuParams& params,
                                                  const ExperimentOptions& opt);

/// Recomputes the density curves of a report for the given epsilons.
std::vector<DensityCurve> density_curves(const ConvergenceReport& rep,
                                         std::span<const double> epsilons,
                                         std::int64_t dense_limit);

}  // namespace qstancu
