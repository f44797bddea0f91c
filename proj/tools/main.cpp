#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mfpinn/benchmarks/registry.hpp"
#include "mfpinn/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace mfpinn;
  CLI::App app{"Multi-fidelity physics-informed surrogates for reliability analysis"};
  app.set_version_flag("--version", MFPINN_VERSION);

  cli::Invocation inv;
  std::string config, preset, out;
  std::uint64_t seed = 0;
  app.add_option("command", inv.command, "gen-data | train-lf | transfer | reliability | compare | pf-curve | ensemble")
      ->required()
      ->check(CLI::IsMember(cli::command_names()));
  auto* config_opt = app.add_option("--config", config, "JSON run configuration");
  auto* preset_opt =
      app.add_option("--preset", preset, "benchmark preset")->check(CLI::IsMember(benchmarks::benchmark_ids()));
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  auto* out_opt = app.add_option("--out", out, "output directory (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }
  if (*config_opt) inv.config_path = config;
  if (*preset_opt) inv.preset = preset;
  if (*seed_opt) inv.seed = seed;
  if (*out_opt) inv.out = out;
  return cli::execute(inv, std::cout, std::cerr);
}
