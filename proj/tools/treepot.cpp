// Command-line front end: treepot <identities|lemmas|fatou|simulate> [options]

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "treepot/config.hpp"
#include "treepot/errors.hpp"
#include "treepot/suites.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int run(const std::string& suite, const Options& opt) {
  treepot::ExperimentConfig config;
  try {
    if (!opt.config.empty()) config = treepot::load_config(opt.config);
  } catch (const treepot::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opt.seed) config.simulation.seed = *opt.seed;
  if (!opt.out.empty()) config.output = opt.out;

  const treepot::SuiteOutput result = treepot::run_suite(suite, config);
  result.write(config.output);
  for (const auto& c : result.report.checks()) {
    std::printf("%-13s %-34s %s\n", std::string(treepot::to_string(c.status)).c_str(), c.name.c_str(),
                c.note.c_str());
  }
  const auto& r = result.report;
  std::printf("%s: %zu pass, %zu fail, %zu indeterminate -> %s\n", suite.c_str(), r.count(treepot::Status::pass),
              r.count(treepot::Status::fail), r.count(treepot::Status::indeterminate), config.output.c_str());
  return r.failed() ? kExitFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potential theory of random walks on trees: identity, lemma and Fatou experiments"};
  app.require_subcommand(1);
  Options opt;
  for (const char* name : {"identities", "lemmas", "fatou", "simulate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config, "experiment configuration (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (overrides the config)");
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { opt.seed = s; },
                                            "random seed (overrides the config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), opt);
  } catch (const treepot::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}
