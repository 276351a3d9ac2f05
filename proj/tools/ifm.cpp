// ifm.cpp
// Command-line front end: one subcommand per experiment kind, a flat
// key = value config file, optional --seed / --out overrides.
// Exit codes: 0 success, 2 config error, 3 runtime error.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ifm/runner.hpp"
#include "ifm/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool out_given = false;
};

int run_kind(ifm::ExperimentKind kind, const CliOptions& options) {
  std::ifstream in(options.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error (config): cannot read config file: "
              << options.config_path << "\n";
    return kExitConfig;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  ifm::ExperimentConfig config;
  try {
    config = ifm::parse_config(buffer.str(), kind);
  } catch (const ifm::ConfigError& err) {
    std::cerr << "error (config, " << ifm::diag_code_name(err.diagnostic().code)
              << "): " << err.diagnostic().message << "\n";
    return kExitConfig;
  }
  if (options.seed_given) config.seed = options.seed;
  if (options.out_given || config.out_dir.empty()) config.out_dir = options.out_dir;

  try {
    const ifm::RunSummary summary = ifm::run(config);
    std::cout << summary.to_json().dump(2) << "\n";
    return 0;
  } catch (const ifm::ConfigError& err) {
    std::cerr << "error (config): " << err.diagnostic().message << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error (runtime): " << err.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ifm — single-photon bomb-test experiments: Mach-Zehnder outcome "
      "statistics, trigger sensitivity limits, shadow scattering, and the "
      "harmonic-well variant"};
  app.set_version_flag("--version", ifm::kVersion);
  app.require_subcommand(1);

  struct SubcommandSpec {
    ifm::ExperimentKind kind;
    const char* description;
  };
  const SubcommandSpec kinds[] = {
      {ifm::ExperimentKind::Mz, "analytic Mach-Zehnder outcome distribution"},
      {ifm::ExperimentKind::Trials, "seeded Monte Carlo single-photon trials"},
      {ifm::ExperimentKind::Strategy, "send-until-conclusive strategy report"},
      {ifm::ExperimentKind::Trigger, "momentum-threshold trigger sensitivity"},
      {ifm::ExperimentKind::Scatter, "absorbing-strip shadow scattering"},
      {ifm::ExperimentKind::Well, "harmonic-well kick excitation spectrum"},
      {ifm::ExperimentKind::Optimize, "reflectivity optimization"},
  };

  CliOptions options;
  ifm::ExperimentKind selected = ifm::ExperimentKind::Mz;
  for (const auto& spec : kinds) {
    CLI::App* sub = app.add_subcommand(ifm::kind_name(spec.kind), spec.description);
    sub->add_option("--config", options.config_path, "experiment config file")
        ->required();
    sub->add_option("--seed", options.seed, "override the config seed");
    sub->add_option("--out", options.out_dir, "output directory (default: .)");
    sub->callback([&options, &selected, sub, kind = spec.kind]() {
      selected = kind;
      options.seed_given = sub->count("--seed") > 0;
      options.out_given = sub->count("--out") > 0;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  return run_kind(selected, options);
}
