// whext command-line front end: validate / extend / check / plotdata.

#include <CLI11.hpp>
#include <iostream>

#include "whext/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Smooth extension operators: geometry validation, evaluation and numerical checks"};
  app.require_subcommand(1);

  whext::RunOptions opt;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string mode, input;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "scenario config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "override the scenario seed");
    cmd->add_option("--samples", samples, "override the sample count");
    cmd->add_option("--mode", mode, "override the blid mode")->check(CLI::IsMember({"literal", "clamp"}));
  };

  auto* validate = app.add_subcommand("validate", "check the segment family, write violations.csv on failure");
  auto* extend = app.add_subcommand("extend", "evaluate F on samples, write extend.csv");
  auto* check = app.add_subcommand("check", "run the numerical checks, write report.csv and summary.txt");
  auto* plot = app.add_subcommand("plotdata", "evaluate F along the configured path, write plot.csv");
  for (auto* cmd : {validate, extend, check, plot}) add_common(cmd);
  extend->add_option("--input", input, "CSV of samples, one per row")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto given = [&](const char* name) {
    auto* cmd = app.get_subcommands().front();
    return cmd->count(name) > 0;
  };
  if (given("--seed")) opt.seed = seed;
  if (given("--samples")) opt.samples = samples;
  if (given("--mode")) opt.mode = mode;
  if (extend->parsed() && extend->count("--input") > 0) opt.input = input;

  whext::RunOutput out;
  if (validate->parsed()) out = whext::cmd_validate(opt);
  else if (extend->parsed()) out = whext::cmd_extend(opt);
  else if (check->parsed()) out = whext::cmd_check(opt);
  else out = whext::cmd_plotdata(opt);

  (out.exit_code == 2 ? std::cerr : std::cout) << out.summary;
  return out.exit_code;
}
