#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "axiskit/commands.hpp"
#include "axiskit/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"axiskit: axisymmetric Biot-Savart kernels, decay traces and exponent checks"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
  std::optional<bool> refine;
  bool quiet = false;

  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed recorded in every summary");
  app.add_flag("--refine,!--no-refine", refine, "kernel-scan: also run the 2x refined grid");
  app.add_flag("-q,--quiet", quiet, "no progress lines on stderr");

  const struct {
    const char* name;
    const char* help;
  } subs[] = {
      {"kernel-scan", "scan |Gamma| / envelope over the (r, rho, zeta) grid"},
      {"decay", "reconstruct along a dyadic radius ladder and fit the decay"},
      {"feasibility", "brute-force (delta, q) region against the explicit construction"},
      {"roundtrip", "curl then reconstruct compactly supported bump fields"},
      {"bmo", "normalized oscillations of ln r across dyadic scales"},
      {"print-config", "print the effective configuration with all defaults"},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : axiskit::kExitInvalidConfig;
  }

  axiskit::CommandContext ctx;
  try {
    if (!config_path.empty()) ctx.config = axiskit::RunConfig::from_file(config_path);
    if (workers) ctx.config.set("workers", std::to_string(*workers));
    if (seed) ctx.config.set("seed", std::to_string(*seed));
    if (refine) ctx.config.set("refine", *refine ? "true" : "false");
  } catch (const axiskit::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return axiskit::kExitInvalidConfig;
  }
  ctx.out_dir = out_dir;
  ctx.log = quiet ? nullptr : &std::cerr;

  const std::string name = app.get_subcommands().front()->get_name();
  return axiskit::run_command(name, ctx, std::cout, std::cerr);
}
