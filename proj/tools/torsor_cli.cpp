// Command-line runner for scenario files.

#include "torsor/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace torsor;

int cmd_run(const std::string& file, const scenario::RunOptions& opts) {
  const scenario::Report report = scenario::run(file, opts);
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << report.name << "/" << c.name
              << ": value=" << scenario::format_double(c.value)
              << " tol=" << scenario::format_double(c.tolerance) << '\n';
  for (const auto& o : report.outputs) std::cout << "wrote " << o << '\n';
  std::cout << (report.passed() ? "PASS " : "FAIL ") << report.name << '\n';
  return report.passed() ? 0 : 1;
}

int cmd_list(const std::string& dir) {
  for (const auto& i : scenario::list(dir))
    std::cout << i.name << "  [" << i.kind << ", " << i.medium << "]  " << i.description << '\n';
  return 0;
}

int cmd_describe(const std::string& dir, const std::string& name) {
  const scenario::Info i = scenario::describe(dir, name);
  std::cout << "name:        " << i.name << '\n'
            << "kind:        " << i.kind << '\n'
            << "medium:      " << i.medium << '\n'
            << "exercises:   " << i.exercises << '\n'
            << "description: " << i.description << '\n'
            << "file:        " << i.path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsor balance scenarios"};
  app.require_subcommand(1);

  scenario::RunOptions opts;
  if (const char* env = std::getenv("TORSOR_OUT_DIR")) opts.out_dir = env;
  std::string scenario_dir = TORSOR_SCENARIO_DIR;
  if (const char* env = std::getenv("TORSOR_SCENARIO_DIR")) scenario_dir = env;
  std::uint64_t seed = 0;

  app.add_option("--scenario-dir", scenario_dir, "Directory of bundled scenarios");

  auto* run = app.add_subcommand("run", "Run a scenario file");
  std::string file;
  run->add_option("file", file, "Scenario JSON file")->required();
  run->add_option("--out-dir", opts.out_dir, "Directory for output files (default $TORSOR_OUT_DIR or .)");
  run->add_option("--tolerance-scale", opts.tolerance_scale, "Multiplier applied to every tolerance")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Seed for random chart points");

  auto* list = app.add_subcommand("list", "List bundled scenarios");
  auto* describe = app.add_subcommand("describe", "Describe a bundled scenario");
  std::string name;
  describe->add_option("name", name, "Scenario name")->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) opts.seed = seed;

  try {
    if (run->parsed()) return cmd_run(file, opts);
    if (list->parsed()) return cmd_list(scenario_dir);
    if (describe->parsed()) return cmd_describe(scenario_dir, name);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
