// Command-line runner for the experiments.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iosnoma/config.hpp"
#include "iosnoma/errors.hpp"
#include "iosnoma/experiments.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string out = "-";
  std::optional<std::string> convention;
  std::optional<std::string> a1_variant;
  unsigned workers = 1;
  bool no_mc = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "scenario JSON (or a CSV written by this tool)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output path, - for stdout");
  cmd->add_option("--convention", o.convention, "A-functional source")
      ->check(CLI::IsMember({"discrete", "paper-integral"}));
  cmd->add_option("--a1-variant", o.a1_variant, "plane form of A1")->check(CLI::IsMember({"as-printed", "re-derived"}));
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
}

iosnoma::RunConfig resolve(const Options& o) {
  iosnoma::RunConfig cfg = o.config.empty() ? iosnoma::RunConfig{} : iosnoma::load_config(o.config);
  if (o.seed) cfg.mc.seed = *o.seed;
  if (o.trials) cfg.mc.trials = *o.trials;
  if (o.convention) cfg.analysis.convention = iosnoma::parse_convention(*o.convention);
  if (o.a1_variant) cfg.analysis.a1_variant = iosnoma::parse_a1_variant(*o.a1_variant);
  cfg.validate();
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (o.out == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw iosnoma::IoError("write to stdout failed");
  } else {
    iosnoma::write_text_file(o.out, text);
  }
}

int run(const std::string& command, const Options& o) {
  const iosnoma::RunConfig cfg = resolve(o);
  if (command == "single") {
    emit(o, iosnoma::run_single(cfg, !o.no_mc, o.workers));
  } else if (command == "rate-vs-n") {
    const auto rows = iosnoma::run_rate_vs_n(cfg, o.workers);
    emit(o, iosnoma::rate_vs_n_table(rows).render(iosnoma::csv_meta(cfg, command)));
  } else if (command == "rgm-vs-power") {
    const auto rows = iosnoma::run_rgm_vs_power(cfg, o.workers);
    emit(o, iosnoma::rgm_vs_power_table(rows).render(iosnoma::csv_meta(cfg, command)));
  } else if (command == "validate") {
    const auto checks = iosnoma::run_validation(cfg, o.workers);
    std::string text;
    bool all = true;
    for (const auto& c : checks) {
      text += (c.pass ? "PASS " : "FAIL ") + c.name + "  " + c.detail + "\n";
      all = all && c.pass;
    }
    emit(o, text);
    return all ? kOk : kNumerical;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IOS-assisted two-user NOMA rate analysis"};
  app.set_version_flag("--version", "iosnoma " + iosnoma::tool_version());
  app.require_subcommand(1);

  Options opts;
  std::string chosen;
  for (const char* name : {"single", "rate-vs-n", "rgm-vs-power", "validate"}) {
    const char* help = std::string(name) == "single"         ? "full theory report (JSON) for one scenario"
                       : std::string(name) == "rate-vs-n"    ? "ergodic rates versus element count (CSV)"
                       : std::string(name) == "rgm-vs-power" ? "optimized geometric-mean rate versus power (CSV)"
                                                             : "oracle and invariant checks on one scenario";
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, opts);
    if (std::string(name) == "single") cmd->add_flag("--no-mc", opts.no_mc, "skip Monte Carlo estimates");
    cmd->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    return run(chosen, opts);
  } catch (const iosnoma::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const iosnoma::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const iosnoma::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
}
