#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "hkink/error.hpp"

using namespace hkink::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bounded t-monotone solutions of the Heisenberg Allen-Cahn equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  bool dry_run = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--jobs", jobs, "concurrent per-R constructions")->check(CLI::PositiveNumber);
  app.add_flag("--dry-run", dry_run, "validate the configuration and exit");

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Context&);
  };
  const Entry entries[] = {
      {"eig", "principal eigenpair, R0 and the barrier amplitude", cmd_eig},
      {"construct", "monotone construction at the first scheduled radius", cmd_construct},
      {"continue", "continuation over the radius schedule with global checks", cmd_continue},
      {"farfield", "radial ODE shooting and the oscillation dichotomy", cmd_farfield},
      {"verify", "invariant suites over every field in the output directory", cmd_verify},
  };
  for (const auto& e : entries) app.add_subcommand(e.name, e.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  Context ctx;
  try {
    ctx.cfg = config_path.empty() ? parse_config("{}") : load_config(config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kConfig;
  }
  if (!out_dir.empty()) ctx.cfg.output = out_dir;
  ctx.jobs = jobs;
  if (dry_run) {
    std::printf("configuration valid\n");
    return kOk;
  }

  for (const auto& e : entries) {
    if (!app.got_subcommand(e.name)) continue;
    try {
      return e.fn(ctx);
    } catch (const MissingPrerequisite& ex) {
      std::fprintf(stderr, "missing prerequisite: %s\n", ex.what());
      return kMissing;
    } catch (const hkink::Error& ex) {
      std::fprintf(stderr, "numerical failure: %s\n", ex.what());
      return kNumeric;
    } catch (const std::exception& ex) {
      std::fprintf(stderr, "error: %s\n", ex.what());
      return 1;
    }
  }
  return kOk;
}
