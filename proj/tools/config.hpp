#pragma once

// Experiment configuration: a JSON document with one optional section per
// command plus shared settings. Everything is validated while parsing;
// problems surface as ConfigError.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qstancu/bivariate.hpp"
#include "qstancu/operators.hpp"
#include "qstancu/qcalc.hpp"
#include "qstancu/rates.hpp"

namespace qstancu::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the q of operator n is chosen: a fixed value or an admissible sequence.
struct QChoice {
  std::optional<double> fixed;
  std::string sequence = "plain";
};

struct MomentsConfig {
  std::vector<std::int64_t> n{5, 10, 50};
  std::vector<double> q{0.5, 0.9, 0.99};
  std::vector<StancuParams> params{{0, 0}, {1, 2}, {2, 5}};
  std::vector<double> x{0, 0.25, 0.5, 1, 2};
  double tolerance = 1e-8;
};

struct ConvergeConfig {
  std::string f = "x_over_1px";
  std::string qseq = "square-exceptional";
  StancuParams params{};
  bool weighted = false;
  double A = 2.0;  // [0, A], or [0, X_max] in weighted mode
  double step = 0.01;
  std::int64_t n_max = 2000;
  std::int64_t dense_limit = 200;
  int samples_per_decade = 24;
  std::vector<double> epsilons{0.05};
};

struct RatesConfig {
  std::string f = "e1";
  std::vector<std::int64_t> n{10, 20, 50, 100};
  QChoice q{};
  StancuParams params{};
  double x_max = 2.0;
  double x_step = 0.02;
  bool modulus = true;
  double modulus_A = 4.0;
  double modulus_step = 0.01;
  std::optional<LipschitzSpec> lipschitz;
  double lipschitz_A = 4.0;
};

struct BivariateConfig {
  std::string f = "x_over_1px_sum";
  std::vector<std::pair<std::int64_t, std::int64_t>> n_pairs{{10, 10}, {10, 20}};
  QChoice q{};
  StancuParams params{1, 2};
  std::vector<Point2> moment_points{{0, 0}, {0.5, 1}, {1, 0.25}, {2, 2}, {1.5, 0.5}};
  double moment_tolerance = 1e-8;
  double grid_max = 2.0;
  double grid_step = 0.2;
  bool modulus = true;
  double modulus_A = 3.0;
  double modulus_step = 0.05;
  std::optional<ProductHolderSpec> holder;
  double holder_A = 2.0;
};

struct Config {
  std::uint64_t seed = 1;
  int threads = 0;  // 0 keeps the OpenMP default
  TruncationPolicy pol{};
  MomentsConfig moments;
  ConvergeConfig converge;
  RatesConfig rates;
  BivariateConfig bivariate;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace qstancu::cli
