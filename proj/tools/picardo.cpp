#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "picardo/run.hpp"

namespace {

void add_common(CLI::App* sub, picardo::RunOptions& o, std::string& file) {
  sub->add_option("file", file, "problem file")->required();
  sub->add_option("--out", o.out_dir, "directory for report.json and trace.csv");
  sub->add_option("--seed", o.seed, "override the seed of the problem file");
}

void add_iteration(CLI::App* sub, picardo::RunOptions& o) {
  sub->add_flag("--trace", o.trace, "write trace.csv");
  sub->add_option("--max-iter", o.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--eps-step", o.eps_step, "step-distance threshold")->check(CLI::PositiveNumber);
  sub->add_option("--eps-res", o.eps_res, "residual threshold")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"picardo: fixed-point solvers for Geraghty-type contractions"};
  app.require_subcommand(1);
  picardo::RunOptions o;
  std::string file;

  auto* solve = app.add_subcommand("solve", "solve a [fredholm] or [urysohn] problem");
  add_common(solve, o, file);
  add_iteration(solve, o);
  solve->add_flag("--oracle", o.oracle, "cross-check against the dense solve");
  solve->add_flag("--force", o.force, "solve even if a hypothesis check fails");

  auto* check = app.add_subcommand("check", "falsify a [contraction-check] problem");
  add_common(check, o, file);

  auto* iterate = app.add_subcommand("iterate", "run an [operator-iteration] problem");
  add_common(iterate, o, file);
  add_iteration(iterate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return picardo::kExitUsage;
  }

  if (solve->parsed()) o.command = picardo::Command::Solve;
  else if (check->parsed()) o.command = picardo::Command::Check;
  else o.command = picardo::Command::Iterate;
  o.file = file;
  return picardo::run(o);
}
