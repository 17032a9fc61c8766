#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "devsurf/io/commands.hpp"

namespace {

struct Flags {
  devsurf::io::CommandOptions opt;
  std::size_t samples = 0;
  std::size_t subdivisions = 0;
  double tol_coplanar = 0.0;
  std::string master;
};

void common(CLI::App& cmd, Flags& f) {
  cmd.add_option("input", f.opt.input, "curve pair document (JSON)")->required();
  cmd.add_option("--samples", f.samples, "number of t samples")->check(CLI::Range(2, 1000000));
  cmd.add_option("--tol-coplanar", f.tol_coplanar, "corner coplanarity tolerance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--master", f.master, "curve whose parameter is sampled")
      ->check(CLI::IsMember({"c", "d"}));
  cmd.add_option("--out", f.opt.out_path, "output file (default: stdout)");
  cmd.add_option("--threads", f.opt.threads, "worker threads, 0 = all available");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Developable surface patches between two rational curves"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* check = app.add_subcommand("check", "check the corner conditions");
  CLI::App* solve = app.add_subcommand("solve", "solve T(t) and write the ruling table (CSV)");
  CLI::App* mesh = app.add_subcommand("mesh", "write the ruled surface as an OBJ quad mesh");
  CLI::App* repair = app.add_subcommand("repair", "multiconic repair of regression intervals (CSV)");
  CLI::App* report = app.add_subcommand("report", "full solve report (JSON)");
  for (CLI::App* cmd : {check, solve, mesh, repair, report}) common(*cmd, f);
  for (CLI::App* cmd : {solve, mesh, report})
    cmd->add_flag("--allow-regression", f.opt.allow_regression,
                  "emit output even when regression intervals are found");
  mesh->add_option("--rulings", f.opt.rulings, "rulings along t")->check(CLI::Range(2, 1000000));
  mesh->add_option("--across", f.opt.across, "vertices across each ruling")
      ->check(CLI::Range(2, 1000000));
  repair->add_option("--subdivisions", f.subdivisions, "cone steps per interval")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : devsurf::io::kExitInput;
  }

  CLI::App* used = app.get_subcommands().front();
  if (used->count("--samples")) f.opt.samples = f.samples;
  if (used->count("--tol-coplanar")) f.opt.tol_coplanar = f.tol_coplanar;
  if (used->count("--master")) f.opt.master = f.master.front();
  if (used == repair && used->count("--subdivisions")) f.opt.subdivisions = f.subdivisions;

  if (used == check) return devsurf::io::run_check(f.opt, std::cout, std::cerr);
  if (used == solve) return devsurf::io::run_solve(f.opt, std::cout, std::cerr);
  if (used == mesh) return devsurf::io::run_mesh(f.opt, std::cout, std::cerr);
  if (used == repair) return devsurf::io::run_repair(f.opt, std::cout, std::cerr);
  return devsurf::io::run_report(f.opt, std::cout, std::cerr);
}
