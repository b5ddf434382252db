#include <CLI11.hpp>
#include <iostream>

#include "rgc/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian channel between inertial and accelerated wave-packet modes"};
  app.require_subcommand(1);

  std::string config, scenario, out_dir;
  int workers = 1;
  bool no_cache = false;

  auto* run = app.add_subcommand("run", "evaluate a preset or a configuration file and write CSV");
  run->add_option("--config", config, "INFO-format configuration file")->check(CLI::ExistingFile);
  run->add_option("--scenario", scenario, "preset name (see `list`)");
  run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--no-cache", no_cache, "ignore and do not write the cache");
  run->add_option("--out", out_dir, "directory for the CSV output");

  auto* list = app.add_subcommand("list", "list the available scenarios");
  list->add_option("--config", config, "also describe this configuration")->check(CLI::ExistingFile);

  std::string cache_dir;
  auto* clear = app.add_subcommand("cache-clear", "remove cached channel data");
  clear->add_option("--dir", cache_dir, "cache directory (default: $RGC_CACHE_DIR or ~/.cache/rgc)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      if (config.empty()) {
        std::cout << rgc::list_scenarios();
      } else {
        const auto c = rgc::load_config(config);
        std::cout << rgc::list_scenarios(&c);
      }
      return 0;
    }
    if (*clear) {
      const std::string dir = cache_dir.empty() ? rgc::default_cache_dir() : cache_dir;
      std::cout << "removed " << rgc::cache_clear(dir) << " entries from " << dir << '\n';
      return 0;
    }
    if (config.empty() == scenario.empty()) {
      std::cerr << "run: give exactly one of --config or --scenario\n";
      return 2;
    }
    const rgc::ScenarioConfig cfg = config.empty() ? rgc::preset(scenario) : rgc::load_config(config);
    rgc::RunOptions opt;
    opt.workers = workers;
    opt.use_cache = !no_cache;
    opt.out_dir = out_dir;
    const auto sum = rgc::run_scenario(cfg, opt);
    int hits = 0;
    for (const auto& r : sum.rows) hits += r.cache_hit;
    std::cout << sum.rows.size() << " points (" << hits << " from cache), " << sum.failed
              << " failed -> " << sum.csv_path << '\n';
    for (const auto& r : sum.rows)
      if (r.status != "ok") std::cerr << "point D=" << r.spec.D << " accel_I=" << r.spec.accel_I << ": " << r.status << '\n';
    return sum.failed ? 3 : 0;
  } catch (const rgc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const rgc::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
