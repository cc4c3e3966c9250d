#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "cli/commands.hpp"
#include "pngtoda/errors.hpp"
#include "pngtoda/parallel.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 2, kNonConvergence = 3, kCheckFailed = 4 };

struct Flags {
  std::string config, initial, t, xs, rs, r_range, s, kind, sampler, format, output;
  long samples = 0, block_size = 0, buffer = 0;
  std::uint64_t seed = 0;
  double step = 0, tolerance = 0, check_tolerance = 0;
  int threads = 0;
  bool allow_unconverged = false, check = false;
};

// Flags override the config file; lists are comma-separated.
png::cli::RunConfig merge(const CLI::App& app, const Flags& f, const std::string& command) {
  using namespace png::cli;
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (!command.empty()) c.command = command;
  auto given = [&](const char* name) { return app.count(name) > 0; };
  auto guard = [](const char* flag, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      throw ConfigError(flag, e.what());
    }
  };
  if (given("--initial")) c.initial = f.initial;
  if (given("--t")) guard("--t", [&] { c.ts = parse_doubles(f.t); });
  if (given("--xs")) guard("--xs", [&] { c.xs = parse_doubles(f.xs); });
  if (given("--rs")) guard("--rs", [&] { c.rs = parse_longs(f.rs); c.r_range.reset(); });
  if (given("--r-range")) guard("--r-range", [&] { c.r_range = parse_range(f.r_range); c.rs.clear(); });
  if (given("--s")) guard("--s", [&] { c.ss = parse_doubles(f.s); });
  if (given("--kind")) c.kind = f.kind;
  if (given("--sampler")) c.sampler = f.sampler;
  if (given("--samples")) c.samples = f.samples;
  if (given("--seed")) c.seed = f.seed;
  if (given("--step")) c.step = f.step;
  if (given("--tolerance")) c.tolerance = f.tolerance;
  if (given("--check-tolerance")) c.check_tolerance = f.check_tolerance;
  if (given("--block-size")) c.block_size = f.block_size;
  if (given("--buffer")) c.buffer = f.buffer;
  if (given("--format")) c.format = f.format;
  if (given("--output")) c.output = f.output;
  if (given("--threads")) c.threads = f.threads;
  if (given("--allow-unconverged")) c.allow_unconverged = true;
  if (given("--check")) c.check = true;
  // Flags carry no line numbers; report them by flag name.
  for (const char* key : {"initial", "t", "xs", "rs", "r_range", "s", "kind", "sampler", "samples",
                          "seed", "step", "tolerance", "check_tolerance", "block_size", "buffer",
                          "format", "output", "threads"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (given(flag.c_str())) c.lines.erase(key);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynuclear growth: Fredholm determinants, samplers and integrable checks"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Flags f;
  app.add_option("--config", f.config, "JSON run configuration; flags override its keys");
  app.add_option("--initial", f.initial, "initial data: flat, flat:<n>, narrow-wedge:<y>, two-step, or a JSON object");
  app.add_option("--t", f.t, "times, comma-separated");
  app.add_option("--xs", f.xs, "points, comma-separated and strictly increasing");
  app.add_option("--rs", f.rs, "levels, one per point");
  app.add_option("--r-range", f.r_range, "level range lo:hi applied to every point");
  app.add_option("--s", f.s, "Painleve parameters, comma-separated");
  app.add_option("--kind", f.kind, "toda-check: scalar|1d|nonabelian|kernel-eta|kernel-zeta|ratio; closed-form: narrow-wedge|flat");
  app.add_option("--sampler", f.sampler, "simulate: event|lastpassage|both");
  app.add_option("--samples", f.samples, "Monte Carlo sample count");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--step", f.step, "finite-difference step");
  app.add_option("--tolerance", f.tolerance, "Fredholm window-doubling tolerance");
  app.add_option("--check-tolerance", f.check_tolerance, "override the per-command check bound");
  app.add_option("--block-size", f.block_size, "initial truncation per point");
  app.add_option("--buffer", f.buffer, "extra levels below the window");
  app.add_option("--format", f.format, "csv or jsonl");
  app.add_option("--output", f.output, "output file (default stdout)");
  app.add_option("--threads", f.threads, "worker cap (default: PNG_TODA_THREADS or all cores)");
  app.add_flag("--allow-unconverged", f.allow_unconverged, "exit 0 even if a determinant did not converge");
  app.add_flag("--check", f.check, "exit 4 if any row fails its acceptance check");
  for (const char* name : {"cdf", "simulate", "compare", "toda-check", "painleve", "closed-form", "initdata"})
    app.add_subcommand(name, std::string("run ") + name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  using namespace png::cli;
  RunConfig config;
  try {
    config = merge(app, f, command);
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kValidation;
  }
  if (config.threads > 0) png::set_thread_count(config.threads);

  CommandResult result;
  try {
    result = run_command(config);
  } catch (const ConfigError& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kValidation;
  } catch (const png::DomainError& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kValidation;
  } catch (const png::ConvergenceError& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const png::WindowError& e) {
    std::cerr << "png_toda: " << e.what() << '\n';
    return kNonConvergence;
  }

  std::ofstream file;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary);
    if (!file) {
      std::cerr << "png_toda: cannot write " << config.output << '\n';
      return kValidation;
    }
  }
  std::ostream& out = config.output.empty() ? std::cout : file;
  if (config.format == "jsonl")
    result.table.write_jsonl(out);
  else
    result.table.write_csv(out);
  out.flush();

  if (result.unconverged && !config.allow_unconverged) {
    std::cerr << "png_toda: some determinants did not converge (use --allow-unconverged)\n";
    return kNonConvergence;
  }
  if (config.check && result.check_failed) {
    std::cerr << "png_toda: check failed\n";
    return kCheckFailed;
  }
  return kOk;
}
