// zenoscope: frequent photon-detection simulations of a two-level atom in a
// finite-bandwidth reservoir.
//
//   zenoscope run <config> [--seed N] [--out PATH] [--threads N] [--dump-config]
//   zenoscope verify <suite> [--seed N] [--threads N]
//
// Exit status: 0 success, 1 invalid input, 2 a check exceeded its tolerance.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zenoscope/config.hpp"
#include "zenoscope/experiments.hpp"
#include "zenoscope/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kBreach = 2;

int run_command(const std::string& path, std::optional<std::uint64_t> seed, std::optional<std::string> out,
                std::optional<unsigned> threads, bool dump) {
  zenoscope::RunConfig config;
  try {
    config = zenoscope::load_config(path);
    if (seed) config.seed = *seed;
    if (out) config.out = *out;
    if (threads) config.threads = *threads;
  } catch (const zenoscope::config_error& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kInvalid;
  }
  if (dump) {
    std::cout << zenoscope::dump_config(config);
    return kOk;
  }
  try {
    const auto result = zenoscope::run_experiment(config);
    std::cout << zenoscope::to_string(config.experiment) << ": " << result.summary << '\n';
    for (const auto& f : result.files) std::cerr << "wrote " << f << '\n';
    return result.passed ? kOk : kBreach;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kInvalid;
  }
}

int verify_command(const std::string& suite, std::optional<std::uint64_t> seed, std::optional<unsigned> threads) {
  zenoscope::verify::Options options;
  if (seed) options.seed = *seed;
  if (threads) options.threads = *threads;
  try {
    const auto results = zenoscope::verify::run_suite(suite, options);
    bool ok = true;
    for (const auto& c : results) {
      std::cout << c.line() << '\n';
      ok = ok && c.passed();
    }
    std::cout << suite << ": " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kBreach;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent-measurement spontaneous emission simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool dump = false;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file of key = value lines")->required();
  run->add_option("--seed", seed, "Override the RNG seed");
  run->add_option("--out", out, "Override the output CSV path");
  run->add_option("--threads", threads, "Worker threads for the ensemble experiment");
  run->add_flag("--dump-config", dump, "Print the resolved config and exit");

  auto* verify = app.add_subcommand("verify", "Run a reproduction suite");
  verify->add_option("suite", suite, "fig1 | fig2 | fig4 | rates | appendix-a")
      ->required()
      ->check(CLI::IsMember(zenoscope::verify::suite_names()));
  verify->add_option("--seed", seed, "Master seed for Monte-Carlo criteria");
  verify->add_option("--threads", threads, "Worker threads for ensembles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  if (*run) return run_command(config_path, seed, out, threads, dump);
  return verify_command(suite, seed, threads);
}
