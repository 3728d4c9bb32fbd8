#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <vector>

#include "functions.hpp"
#include "output.hpp"
#include "qstancu/errors.hpp"
#include "qstancu/kernels.hpp"
#include "qstancu/moments.hpp"
#include "qstancu/statconv.hpp"

namespace qstancu::cli {

namespace {

using Meta = std::vector<std::pair<std::string, std::string>>;

// Shortest %g rendering that reads back to the same double.
std::string short_real(double v) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + fmt(v[i]);
  return out;
}

std::string join_reals(const std::vector<double>& v) { return join(v, short_real); }

std::string join_ints(const std::vector<std::int64_t>& v) {
  return join(v, [](std::int64_t n) { return std::to_string(n); });
}

Meta common_meta(const std::string& command, const Config& cfg, std::uint64_t seed) {
  return {{"command", command},
          {"seed", std::to_string(seed)},
          {"series_tol", short_real(cfg.pol.series_tol)},
          {"weight_mass_tol", short_real(cfg.pol.weight_mass_tol)},
          {"k_max", std::to_string(cfg.pol.k_max)}};
}

std::string path_in(const RunOptions& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::uint64_t effective_seed(const Config& cfg, const RunOptions& opt) {
  return opt.seed.value_or(cfg.seed);
}

double q_for(const QChoice& c, std::int64_t n) {
  if (c.fixed) return *c.fixed;
  return make_admissible_qseq(c.sequence).q(n);
}

std::string q_meta(const QChoice& c) {
  return c.fixed ? short_real(*c.fixed) : "sequence:" + c.sequence;
}

std::string stamp(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_moments(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const MomentsConfig& c = cfg.moments;
  Meta meta = common_meta("moments", cfg, effective_seed(cfg, opt));
  meta.insert(meta.end(), {{"n", join_ints(c.n)},
                           {"q", join_reals(c.q)},
                           {"params", join(c.params, [](const StancuParams& p) {
                              return short_real(p.alpha) + ":" + short_real(p.beta);
                            })},
                           {"x", join_reals(c.x)},
                           {"tolerance", short_real(c.tolerance)}});
  CsvWriter csv(path_in(opt, "moments.csv"), meta,
                {"operator", "n", "q", "alpha", "beta", "x", "moment", "closed_form",
                 "direct_eval", "abs_err"});

  const char* ids[] = {"e0", "e1", "e2"};
  double worst = 0.0;
  std::size_t rows = 0;
  for (double qv : c.q) {
    const QParam q(qv);
    // At q = 1 the Jackson series is undefined; the monomial closed form is used instead.
    const Field1D fields[] = {
        q.classical() ? Field1D::monomial(0) : Field1D([](double) { return 1.0; }),
        q.classical() ? Field1D::monomial(1) : Field1D([](double t) { return t; }),
        q.classical() ? Field1D::monomial(2) : Field1D([](double t) { return t * t; })};
    for (std::int64_t n : c.n) {
      for (const StancuParams& p : c.params) {
        const OperatorSpec spec(n, q, p, cfg.pol);
        for (int m = 0; m < 3; ++m) {
          const auto disc = sweep_discrete(spec, fields[m], c.x, Exec::parallel);
          const auto kant = sweep_kantorovich(spec, fields[m], c.x, Exec::parallel);
          for (std::size_t i = 0; i < c.x.size(); ++i) {
            const MomentSet md = discrete_moments(n, q, p, c.x[i]);
            const MomentSet mk = q.classical() ? classical_moments(n, p, c.x[i])
                                               : kantorovich_moments(n, q, p, c.x[i]);
            const double cd[] = {md.m0, md.m1, md.m2};
            const double ck[] = {mk.m0, mk.m1, mk.m2};
            const double ed = std::fabs(disc[i] - cd[m]);
            const double ek = std::fabs(kant[i] - ck[m]);
            csv.row({std::string("discrete"), n, qv, p.alpha, p.beta, c.x[i], std::string(ids[m]),
                     cd[m], disc[i], ed});
            csv.row({std::string("kantorovich"), n, qv, p.alpha, p.beta, c.x[i],
                     std::string(ids[m]), ck[m], kant[i], ek});
            worst = std::max({worst, ed, ek});
            rows += 2;
          }
        }
      }
    }
  }
  const bool ok = worst <= c.tolerance;
  log << "moments: " << rows << " rows, max abs_err " << stamp(worst) << " (tolerance "
      << stamp(c.tolerance) << ") " << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kSuccess : kToleranceFailure;
}

// ---------------------------------------------------------------------------

int cmd_converge(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const ConvergeConfig& c = cfg.converge;
  const Field1D f = find_function_1d(c.f)->f;
  const QSequence seq = make_admissible_qseq(c.qseq);
  ExperimentOptions eo;
  eo.A = c.A;
  eo.step = c.step;
  eo.n_max = c.n_max;
  eo.dense_limit = c.dense_limit;
  eo.samples_per_decade = c.samples_per_decade;
  eo.epsilons = c.epsilons;
  eo.pol = cfg.pol;
  const ConvergenceReport rep = c.weighted ? weighted_convergence_experiment(f, seq, c.params, eo)
                                           : statistical_convergence_experiment(f, seq, c.params, eo);

  Meta meta = common_meta("converge", cfg, effective_seed(cfg, opt));
  meta.insert(meta.end(), {{"f", c.f},
                           {"qseq", c.qseq},
                           {"alpha", short_real(c.params.alpha)},
                           {"beta", short_real(c.params.beta)},
                           {"norm", c.weighted ? "weighted" : "sup"},
                           {c.weighted ? "x_max" : "A", short_real(c.A)},
                           {"step", short_real(c.step)},
                           {"n_max", std::to_string(c.n_max)},
                           {"dense_limit", std::to_string(c.dense_limit)},
                           {"samples_per_decade", std::to_string(c.samples_per_decade)},
                           {"epsilons", join_reals(c.epsilons)}});
  {
    CsvWriter csv(path_in(opt, "converge_errors.csv"), meta,
                  {"n", "q", "exceptional", "weight", "error"});
    for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
      csv.row({rep.n_values[i], rep.q_values[i], static_cast<bool>(rep.exceptional[i]),
               rep.weights[i], rep.errors[i]});
    }
  }
  {
    CsvWriter csv(path_in(opt, "converge_density.csv"), meta, {"epsilon", "N", "density"});
    for (const DensityCurve& curve : rep.curves) {
      for (const DensityPoint& p : curve.points) csv.row({curve.epsilon, p.N, p.density});
    }
  }

  PlotSeries main_branch{"main branch", {}, {}, false, "#1f77b4"};
  PlotSeries exceptional{"exceptional n", {}, {}, true, "#d62728"};
  bool all_positive = true;
  for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
    PlotSeries& s = rep.exceptional[i] ? exceptional : main_branch;
    s.x.push_back(static_cast<double>(rep.n_values[i]));
    s.y.push_back(rep.errors[i]);
    all_positive = all_positive && rep.errors[i] > 0.0;
  }
  const std::string norm = c.weighted ? "weighted error" : "sup error";
  write_svg_plot(path_in(opt, "converge.svg"),
                 {norm + " along " + c.qseq + " q_n, f = " + c.f, "n", "E_n", true, all_positive},
                 {main_branch, exceptional});
  std::vector<PlotSeries> density_series;
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b"};
  for (std::size_t i = 0; i < rep.curves.size(); ++i) {
    PlotSeries s{"eps = " + short_real(rep.curves[i].epsilon), {}, {}, false, colors[i % 5]};
    for (const DensityPoint& p : rep.curves[i].points) {
      s.x.push_back(static_cast<double>(p.N));
      s.y.push_back(p.density);
    }
    density_series.push_back(std::move(s));
  }
  write_svg_plot(path_in(opt, "converge_density.svg"),
                 {"exception-set density", "N", "density", true, false}, density_series);

  for (const DensityCurve& curve : rep.curves) {
    log << "converge: eps " << stamp(curve.epsilon) << " density " << stamp(curve.points.front().density)
        << " at N=" << curve.points.front().N << " -> " << stamp(curve.points.back().density)
        << " at N=" << curve.points.back().N << '\n';
  }
  log << "converge: " << rep.n_values.size() << " sampled indices, verdict "
      << (rep.verdict ? "true" : "false") << '\n';
  return rep.verdict ? kSuccess : kToleranceFailure;
}

// ---------------------------------------------------------------------------

int cmd_rates(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const RatesConfig& c = cfg.rates;
  const Field1D f = find_function_1d(c.f)->f;
  const std::uint64_t seed = effective_seed(cfg, opt);
  if (c.lipschitz) {
    try {
      verify_lipschitz(f, *c.lipschitz, c.lipschitz_A, seed);
    } catch (const LipschitzViolation& e) {
      log << "rates: declared class rejected: " << e.what() << '\n';
      return kHypothesisFailure;
    }
  }
  const std::vector<double> xs = uniform_grid(c.x_max, c.x_step);

  Meta meta = common_meta("rates", cfg, seed);
  meta.insert(meta.end(), {{"f", c.f},
                           {"n", join_ints(c.n)},
                           {"q", q_meta(c.q)},
                           {"alpha", short_real(c.params.alpha)},
                           {"beta", short_real(c.params.beta)},
                           {"x_max", short_real(c.x_max)},
                           {"x_step", short_real(c.x_step)}});
  if (c.modulus) {
    meta.insert(meta.end(), {{"modulus_A", short_real(c.modulus_A)},
                             {"modulus_step", short_real(c.modulus_step)}});
  }
  if (c.lipschitz) {
    meta.insert(meta.end(), {{"lipschitz_M", short_real(c.lipschitz->M)},
                             {"lipschitz_a", short_real(c.lipschitz->a)},
                             {"lipschitz_A", short_real(c.lipschitz_A)}});
  }
  CsvWriter csv(path_in(opt, "rates.csv"), meta,
                {"bound", "n", "q", "x", "lhs", "rhs", "slack", "holds"});

  std::size_t rows = 0, failures = 0;
  auto emit = [&](const char* bound, std::int64_t n, double q, const std::vector<BoundCheck>& bc) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      csv.row({std::string(bound), n, q, xs[i], bc[i].lhs, bc[i].rhs, bc[i].slack, bc[i].holds});
      ++rows;
      failures += bc[i].holds ? 0 : 1;
    }
  };
  for (std::int64_t n : c.n) {
    const double qv = q_for(c.q, n);
    const OperatorSpec spec(n, QParam(qv), c.params, cfg.pol);
    if (c.modulus) {
      emit("modulus", n, qv, check_modulus_bounds(f, spec, xs, c.modulus_A, c.modulus_step));
    }
    if (c.lipschitz) {
      emit("lipschitz", n, qv,
           check_lipschitz_bounds(f, *c.lipschitz, spec, xs, c.lipschitz_A, seed));
    }
  }
  log << "rates: " << rows << " rows, " << failures << " bound violations\n";
  return failures == 0 ? kSuccess : kToleranceFailure;
}

// ---------------------------------------------------------------------------

int cmd_bivariate(const Config& cfg, const RunOptions& opt, std::ostream& log) {
  const BivariateConfig& c = cfg.bivariate;
  const Builtin2D fn = *find_function_2d(c.f);
  const std::uint64_t seed = effective_seed(cfg, opt);
  if (c.holder) {
    try {
      verify_product_holder(fn.f, *c.holder, c.holder_A, seed);
    } catch (const LipschitzViolation& e) {
      log << "bivariate: declared class rejected: " << e.what() << '\n';
      return kHypothesisFailure;
    }
  }

  Meta meta = common_meta("bivariate", cfg, seed);
  meta.insert(meta.end(),
              {{"f", c.f},
               {"n_pairs", join(c.n_pairs,
                                [](const auto& p) {
                                  return std::to_string(p.first) + ":" + std::to_string(p.second);
                                })},
               {"q", q_meta(c.q)},
               {"alpha", short_real(c.params.alpha)},
               {"beta", short_real(c.params.beta)},
               {"moment_tolerance", short_real(c.moment_tolerance)},
               {"grid_max", short_real(c.grid_max)},
               {"grid_step", short_real(c.grid_step)}});
  if (c.modulus) {
    meta.insert(meta.end(), {{"modulus_A", short_real(c.modulus_A)},
                             {"modulus_step", short_real(c.modulus_step)}});
  }
  if (c.holder) {
    meta.insert(meta.end(), {{"holder_M", short_real(c.holder->M)},
                             {"holder_a1", short_real(c.holder->a1)},
                             {"holder_a2", short_real(c.holder->a2)},
                             {"holder_A", short_real(c.holder_A)}});
  }
  CsvWriter mcsv(path_in(opt, "bivariate_moments.csv"), meta,
                 {"n1", "n2", "q1", "q2", "x", "y", "moment", "closed_form", "direct_eval",
                  "abs_err"});
  CsvWriter bcsv(path_in(opt, "bivariate_bounds.csv"), meta,
                 {"n1", "n2", "q1", "q2", "x", "y", "bound", "lhs", "rhs", "slack", "holds",
                  "tensor_err"});

  const Field2D moment_fields[] = {[](double, double) { return 1.0; },
                                   [](double x, double) { return x; },
                                   [](double, double y) { return y; },
                                   [](double x, double y) { return x * x + y * y; }};
  const char* moment_ids[] = {"e0", "x", "y", "x2_plus_y2"};
  std::vector<Point2> grid;
  const std::vector<double> axis = uniform_grid(c.grid_max, c.grid_step);
  for (double x : axis) {
    for (double y : axis) grid.push_back({x, y});
  }

  double worst_moment = 0.0, worst_tensor = 0.0;
  std::size_t failures = 0;
  for (const auto& [n1, n2] : c.n_pairs) {
    const double q1 = q_for(c.q, n1), q2 = q_for(c.q, n2);
    const BivariateSpec bs(OperatorSpec(n1, QParam(q1), c.params, cfg.pol),
                           OperatorSpec(n2, QParam(q2), c.params, cfg.pol));
    for (int m = 0; m < 4; ++m) {
      const auto direct = sweep_bivariate(bs, moment_fields[m], c.moment_points, Exec::parallel);
      for (std::size_t i = 0; i < c.moment_points.size(); ++i) {
        const Point2& pt = c.moment_points[i];
        const BivariateMoments bm =
            bivariate_moments(n1, n2, QParam(q1), QParam(q2), c.params, pt.x, pt.y);
        const double closed[] = {bm.m0, bm.m1x, bm.m1y, bm.m2sum};
        const double err = std::fabs(direct[i] - closed[m]);
        worst_moment = std::max(worst_moment, err);
        mcsv.row({n1, n2, q1, q2, pt.x, pt.y, std::string(moment_ids[m]), closed[m], direct[i], err});
      }
    }

    // Tensor structure: for separable f the operator factorises over the axes.
    std::vector<Cell> tensor(grid.size(), std::string());
    if (fn.shape != Builtin2D::Shape::other) {
      const auto values = sweep_bivariate(bs, fn.f, grid, Exec::parallel);
      std::vector<double> xs, ys;
      for (const Point2& p : grid) xs.push_back(p.x), ys.push_back(p.y);
      const auto lx = sweep_kantorovich(bs.x_axis, *fn.g, xs, Exec::parallel);
      const auto ly = sweep_kantorovich(bs.y_axis, *fn.h, ys, Exec::parallel);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double expect =
            fn.shape == Builtin2D::Shape::product ? lx[i] * ly[i] : lx[i] + ly[i];
        const double err = std::fabs(values[i] - expect);
        worst_tensor = std::max(worst_tensor, err);
        tensor[i] = err;
      }
    }

    auto emit = [&](const char* bound, const std::vector<BoundCheck>& bc) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        bcsv.row({n1, n2, q1, q2, grid[i].x, grid[i].y, std::string(bound), bc[i].lhs, bc[i].rhs,
                  bc[i].slack, bc[i].holds, tensor[i]});
        failures += bc[i].holds ? 0 : 1;
      }
    };
    if (c.modulus) {
      emit("modulus", check_bivariate_modulus_bounds(fn.f, bs, grid, c.modulus_A, c.modulus_step));
    }
    if (c.holder) {
      emit("holder",
           check_bivariate_lipschitz_bounds(fn.f, *c.holder, bs, grid, c.holder_A, seed));
    }
  }
  const bool ok = worst_moment <= c.moment_tolerance && worst_tensor <= c.moment_tolerance &&
                  failures == 0;
  log << "bivariate: max moment abs_err " << stamp(worst_moment) << ", max tensor_err "
      << stamp(worst_tensor) << " (tolerance " << stamp(c.moment_tolerance) << "), " << failures
      << " bound violations\n";
  return ok ? kSuccess : kToleranceFailure;
}

// ---------------------------------------------------------------------------

int run(const std::string& command, const std::string& config_path, const RunOptions& opt,
        std::ostream& log, std::ostream& err) {
  using Cmd = int (*)(const Config&, const RunOptions&, std::ostream&);
  Cmd cmd = nullptr;
  if (command == "moments") cmd = cmd_moments;
  if (command == "converge") cmd = cmd_converge;
  if (command == "rates") cmd = cmd_rates;
  if (command == "bivariate") cmd = cmd_bivariate;
  if (!cmd) {
    err << "error: unknown command '" << command << "'\n";
    return kConfigError;
  }
  try {
    const Config cfg = load_config(config_path);
    const int threads = opt.threads.value_or(cfg.threads);
    if (threads < 0) throw ConfigError("threads must be nonnegative");
    set_parallel_threads(threads);
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + opt.out_dir + "'");
    return cmd(cfg, opt, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const LipschitzViolation& e) {
    err << "hypothesis error: " << e.what() << '\n';
    return kHypothesisFailure;
  } catch (const DomainError& e) {
    // Raised mid-run only by hypotheses on the data, e.g. leaving the weighted class.
    err << "hypothesis error: " << e.what() << '\n';
    return kHypothesisFailure;
  } catch (const TruncationError& e) {
    err << "config error: truncation budget exhausted: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace qstancu::cli
