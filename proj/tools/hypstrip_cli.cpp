// Command-line front end over the C API:
//   hypstrip <command> --config <path> [--out <dir>] [--seed <u64>] [--bound <N>] [--eps <f>]

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "hypstrip/hypstrip.h"

namespace {

int fail(hs_status status) {
  std::fprintf(stderr, "error: %s\n", hs_last_error());
  (void)status;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strip peeling on hyperbolic surfaces with geodesic boundary"};
  app.set_version_flag("--version", hs_version());
  std::string command, config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> bound;
  std::optional<double> eps;
  app.add_option("command", command, "build, spectrum, peel, metric or verify")
      ->required()
      ->check(CLI::IsMember({"build", "spectrum", "peel", "metric", "verify"}));
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out, "output directory (overrides config)");
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--bound", bound, "enumeration bound N (overrides config)")->check(CLI::PositiveNumber);
  app.add_option("--eps", eps, "strip width (overrides config)")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  hs_config* cfg = nullptr;
  if (hs_status st = hs_config_load(config_path.c_str(), &cfg); st != HS_OK) return fail(st);
  hs_status st = HS_OK;
  if (out) st = hs_config_set_out(cfg, out->c_str());
  if (st == HS_OK && seed) st = hs_config_set_seed(cfg, *seed);
  if (st == HS_OK && bound) st = hs_config_set_bound(cfg, *bound);
  if (st == HS_OK && eps) st = hs_config_set_eps(cfg, *eps);
  if (st != HS_OK) {
    hs_config_free(cfg);
    return fail(st);
  }

  const auto start = std::chrono::steady_clock::now();
  int exit_code = 1;
  st = hs_run(command.c_str(), cfg, &exit_code);
  hs_config_free(cfg);
  if (st != HS_OK) return fail(st);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fputs(hs_last_report(), stdout);
  std::printf("elapsed %.2f s\n", secs);
  return exit_code;
}
