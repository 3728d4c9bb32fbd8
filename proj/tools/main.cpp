#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"q-Baskakov Kantorovich operators: moments, convergence runs, error bounds"};
  app.require_subcommand(1, 1);

  std::string config;
  qstancu::cli::RunOptions opt;
  std::uint64_t seed = 0;
  int threads = 0;

  const char* commands[][2] = {
      {"moments", "closed-form moments against direct evaluation"},
      {"converge", "statistical / weighted convergence along a q-sequence"},
      {"rates", "pointwise modulus and Lipschitz error bounds"},
      {"bivariate", "tensor-product moments and error bounds"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON experiment config")->required();
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--threads", threads, "worker threads (overrides the config)")
        ->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qstancu::cli::kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opt.seed = seed;
  if (sub->count("--threads")) opt.threads = threads;
  return qstancu::cli::run(sub->get_name(), config, opt, std::cout, std::cerr);
}
