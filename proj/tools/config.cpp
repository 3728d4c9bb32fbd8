#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "functions.hpp"
#include "json.hpp"
#include "qstancu/errors.hpp"
#include "qstancu/statconv.hpp"

namespace qstancu::cli {

namespace {

using nlohmann::json;

// A JSON object whose keys are checked against what the reader consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(key, "must be a number");
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_array() || v.empty()) fail(key, "must be a nonempty array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) fail(key, "must be a nonempty array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::int64_t> integers(const std::string& key, std::vector<std::int64_t> def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_array() || v.empty()) fail(key, "must be a nonempty array of integers");
    std::vector<std::int64_t> out;
    for (const json& e : v) {
      if (!e.is_number_integer()) fail(key, "must be a nonempty array of integers");
      out.push_back(e.get<std::int64_t>());
    }
    return out;
  }

  /// Array of fixed-length numeric tuples, e.g. [[0, 0], [1, 2]].
  std::vector<std::vector<double>> tuples(const std::string& key, std::size_t arity) {
    const json& v = j_.at(key);
    const std::string what = "must be a nonempty array of " + std::to_string(arity) + "-tuples";
    if (!v.is_array() || v.empty()) fail(key, what);
    std::vector<std::vector<double>> out;
    for (const json& e : v) {
      if (!e.is_array() || e.size() != arity) fail(key, what);
      std::vector<double> t;
      for (const json& c : e) {
        if (!c.is_number()) fail(key, what);
        t.push_back(c.get<double>());
      }
      out.push_back(std::move(t));
    }
    return out;
  }

  std::optional<Section> child(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return Section(j_.at(key), path_ + key + ".");
  }

  /// Rejects keys that no reader asked for.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail(key, "is not a recognised setting");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string name = key.empty() ? (path_.empty() ? "config" : path_) : path_ + key;
    throw ConfigError(name + " " + what);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, Section& s, const std::string& key, const std::string& what) {
  if (!ok) s.fail(key, what);
}

void check_q(double q, Section& s, const std::string& key) {
  check(q > 0.0 && q <= 1.0, s, key, "must lie in (0, 1]");
}

StancuParams read_params(Section& s, StancuParams def) {
  StancuParams p{s.number("alpha", def.alpha), s.number("beta", def.beta)};
  check(p.alpha >= 0.0 && p.alpha <= p.beta, s, "alpha", "and beta must satisfy 0 <= alpha <= beta");
  return p;
}

void check_indices(const std::vector<std::int64_t>& ns, Section& s, const std::string& key) {
  for (std::int64_t n : ns) check(n >= 1, s, key, "entries must be at least 1");
}

void check_grid(double max, double step, Section& s, const std::string& max_key,
                const std::string& step_key) {
  check(max > 0.0, s, max_key, "must be positive");
  check(step > 0.0 && step <= max, s, step_key, "must lie in (0, " + max_key + "]");
}

QChoice read_qchoice(Section& s, const QChoice& def) {
  QChoice c = def;
  if (s.has("q")) {
    c.fixed = s.number("q", 0.0);
    check_q(*c.fixed, s, "q");
    check(!s.has("qseq"), s, "qseq", "cannot be combined with a fixed q");
  } else {
    c.sequence = s.string("qseq", def.sequence);
    try {
      make_admissible_qseq(c.sequence);
    } catch (const DomainError&) {
      s.fail("qseq", "must be \"plain\" or \"square-exceptional\"");
    }
  }
  return c;
}

std::string read_function_1d(Section& s, const std::string& def) {
  const std::string name = s.string("f", def);
  if (!find_function_1d(name)) {
    std::string list;
    for (const auto& n : function_names_1d()) list += (list.empty() ? "" : ", ") + n;
    s.fail("f", "names no built-in function (known: " + list + ")");
  }
  return name;
}

std::string read_function_2d(Section& s, const std::string& def) {
  const std::string name = s.string("f", def);
  if (!find_function_2d(name)) {
    std::string list;
    for (const auto& n : function_names_2d()) list += (list.empty() ? "" : ", ") + n;
    s.fail("f", "names no built-in function (known: " + list + ")");
  }
  return name;
}

MomentsConfig read_moments(Section& s) {
  MomentsConfig c;
  c.n = s.integers("n", c.n);
  check_indices(c.n, s, "n");
  c.q = s.numbers("q", c.q);
  for (double q : c.q) check_q(q, s, "q");
  if (s.has("params")) {
    c.params.clear();
    for (const auto& t : s.tuples("params", 2)) {
      check(t[0] >= 0.0 && t[0] <= t[1], s, "params", "entries must satisfy 0 <= alpha <= beta");
      c.params.push_back({t[0], t[1]});
    }
  }
  c.x = s.numbers("x", c.x);
  for (double x : c.x) check(x >= 0.0, s, "x", "entries must be nonnegative");
  c.tolerance = s.number("tolerance", c.tolerance);
  check(c.tolerance > 0.0, s, "tolerance", "must be positive");
  s.finish();
  return c;
}

ConvergeConfig read_converge(Section& s) {
  ConvergeConfig c;
  c.f = read_function_1d(s, c.f);
  c.qseq = s.string("qseq", c.qseq);
  try {
    make_admissible_qseq(c.qseq);
  } catch (const DomainError&) {
    s.fail("qseq", "must be \"plain\" or \"square-exceptional\"");
  }
  c.params = read_params(s, c.params);
  c.weighted = s.boolean("weighted", c.weighted);
  check(!(s.has("A") && s.has("x_max")), s, "x_max", "cannot be combined with A");
  c.A = s.has("x_max") ? s.number("x_max", c.A) : s.number("A", c.A);
  c.step = s.number("step", c.step);
  check_grid(c.A, c.step, s, "A", "step");
  c.n_max = s.integer("n_max", c.n_max);
  check(c.n_max >= 10, s, "n_max", "must be at least 10");
  c.dense_limit = s.integer("dense_limit", c.dense_limit);
  check(c.dense_limit >= 10, s, "dense_limit", "must be at least 10");
  c.samples_per_decade = static_cast<int>(s.integer("samples_per_decade", c.samples_per_decade));
  check(c.samples_per_decade >= 1, s, "samples_per_decade", "must be at least 1");
  c.epsilons = s.numbers("epsilons", c.epsilons);
  for (double e : c.epsilons) check(e > 0.0, s, "epsilons", "entries must be positive");
  s.finish();
  return c;
}

RatesConfig read_rates(Section& s) {
  RatesConfig c;
  c.f = read_function_1d(s, c.f);
  c.n = s.integers("n", c.n);
  check_indices(c.n, s, "n");
  c.q = read_qchoice(s, c.q);
  c.params = read_params(s, c.params);
  c.x_max = s.number("x_max", c.x_max);
  c.x_step = s.number("x_step", c.x_step);
  check_grid(c.x_max, c.x_step, s, "x_max", "x_step");
  c.modulus = s.boolean("modulus", c.modulus);
  c.modulus_A = s.number("modulus_A", c.modulus_A);
  c.modulus_step = s.number("modulus_step", c.modulus_step);
  check_grid(c.modulus_A, c.modulus_step, s, "modulus_A", "modulus_step");
  check(c.modulus_A >= c.x_max, s, "modulus_A", "must cover [0, x_max]");
  if (auto lip = s.child("lipschitz")) {
    LipschitzSpec l{lip->number("M", 1.0), lip->number("a", 1.0)};
    check(l.M > 0.0, *lip, "M", "must be positive");
    check(l.a > 0.0 && l.a <= 1.0, *lip, "a", "must lie in (0, 1]");
    lip->finish();
    c.lipschitz = l;
  }
  c.lipschitz_A = s.number("lipschitz_A", c.lipschitz_A);
  check(c.lipschitz_A > 0.0, s, "lipschitz_A", "must be positive");
  check(c.modulus || c.lipschitz, s, "modulus", "is false and no lipschitz block is given");
  s.finish();
  return c;
}

BivariateConfig read_bivariate(Section& s) {
  BivariateConfig c;
  c.f = read_function_2d(s, c.f);
  if (s.has("n_pairs")) {
    c.n_pairs.clear();
    for (const auto& t : s.tuples("n_pairs", 2)) {
      const auto n1 = static_cast<std::int64_t>(t[0]);
      const auto n2 = static_cast<std::int64_t>(t[1]);
      check(n1 == t[0] && n2 == t[1] && n1 >= 1 && n2 >= 1, s, "n_pairs",
            "entries must be pairs of integers >= 1");
      c.n_pairs.emplace_back(n1, n2);
    }
  }
  c.q = read_qchoice(s, c.q);
  c.params = read_params(s, c.params);
  if (s.has("moment_points")) {
    c.moment_points.clear();
    for (const auto& t : s.tuples("moment_points", 2)) {
      check(t[0] >= 0.0 && t[1] >= 0.0, s, "moment_points", "entries must be nonnegative");
      c.moment_points.push_back({t[0], t[1]});
    }
  }
  c.moment_tolerance = s.number("moment_tolerance", c.moment_tolerance);
  check(c.moment_tolerance > 0.0, s, "moment_tolerance", "must be positive");
  c.grid_max = s.number("grid_max", c.grid_max);
  c.grid_step = s.number("grid_step", c.grid_step);
  check_grid(c.grid_max, c.grid_step, s, "grid_max", "grid_step");
  c.modulus = s.boolean("modulus", c.modulus);
  c.modulus_A = s.number("modulus_A", c.modulus_A);
  c.modulus_step = s.number("modulus_step", c.modulus_step);
  check_grid(c.modulus_A, c.modulus_step, s, "modulus_A", "modulus_step");
  check(c.modulus_A >= c.grid_max, s, "modulus_A", "must cover [0, grid_max]");
  if (auto h = s.child("holder")) {
    ProductHolderSpec p{h->number("M", 1.0), h->number("a1", 1.0), h->number("a2", 1.0)};
    check(p.M > 0.0, *h, "M", "must be positive");
    check(p.a1 > 0.0 && p.a1 <= 1.0, *h, "a1", "must lie in (0, 1]");
    check(p.a2 > 0.0 && p.a2 <= 1.0, *h, "a2", "must lie in (0, 1]");
    h->finish();
    c.holder = p;
  }
  c.holder_A = s.number("holder_A", c.holder_A);
  check(c.holder_A > 0.0, s, "holder_A", "must be positive");
  s.finish();
  return c;
}

}  // namespace

Config parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  Config c;
  Section root(doc, "");
  const std::int64_t seed = root.integer("seed", 1);
  check(seed >= 0, root, "seed", "must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.threads = static_cast<int>(root.integer("threads", 0));
  check(c.threads >= 0, root, "threads", "must be nonnegative");
  if (auto t = root.child("truncation")) {
    c.pol.series_tol = t->number("series_tol", c.pol.series_tol);
    c.pol.weight_mass_tol = t->number("weight_mass_tol", c.pol.weight_mass_tol);
    c.pol.k_max = static_cast<int>(t->integer("k_max", c.pol.k_max));
    t->finish();
    try {
      c.pol.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("truncation: ") + e.what());
    }
  }
  if (auto s = root.child("moments")) c.moments = read_moments(*s);
  if (auto s = root.child("converge")) c.converge = read_converge(*s);
  if (auto s = root.child("rates")) c.rates = read_rates(*s);
  if (auto s = root.child("bivariate")) c.bivariate = read_bivariate(*s);
  root.finish();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace qstancu::cli
