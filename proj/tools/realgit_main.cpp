#include <iostream>

#include <CLI11.hpp>

#include "realgit/cli.hpp"

namespace cli = realgit::cli;

int main(int argc, char** argv) {
  CLI::App app{"Stability of points under real reductive group actions"};
  app.require_subcommand(1);

  std::string problem, out, point, direction;
  double t_max = 1024.0;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  int jobs = 1;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "maximal-weight tolerance (overrides tolerances.weight)");
    sub->add_option("--seed", seed, "multi-start seed (overrides seed)");
    sub->add_option("--max-iters", max_iters, "flow iteration limit (overrides max_iters)")->check(CLI::PositiveNumber);
  };

  auto* classify = app.add_subcommand("classify", "classify every point of a problem file");
  classify->add_option("problem", problem, "problem file (JSON)")->required();
  classify->add_option("-o,--out", out, "report file (default: stdout)");
  classify->add_option("--jobs", jobs, "points classified concurrently")->check(CLI::PositiveNumber);
  add_overrides(classify);

  auto* weights = app.add_subcommand("weights", "export the weight curve t -> lambda(x,beta,t) as CSV");
  weights->add_option("problem", problem, "problem file (JSON)")->required();
  weights->add_option("--point", point, "point id")->required();
  weights->add_option("--direction", direction, "beta in basis_p coordinates, e.g. \"-1,0\"")->required();
  weights->add_option("--t-max", t_max, "last grid time (doubling grid from 1)");
  weights->add_option("-o,--out", out, "CSV file (default: stdout)");

  auto* flow = app.add_subcommand("flow", "run the Kempf-Ness descent flow from one point");
  flow->add_option("problem", problem, "problem file (JSON)")->required();
  flow->add_option("--point", point, "point id")->required();
  flow->add_option("-o,--out", out, "trace file (default: stdout)");
  add_overrides(flow);

  auto* parabolic = app.add_subcommand("parabolic", "Levi / nilradical / parabolic split of a direction");
  parabolic->add_option("problem", problem, "problem file (JSON)")->required();
  parabolic->add_option("--direction", direction, "beta in basis_p coordinates")->required();

  auto* check = app.add_subcommand("check", "structure and representation diagnostics");
  check->add_option("problem", problem, "problem file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitSchema;
  }

  cli::Overrides o{tol, seed, max_iters, jobs};
  if (*classify) return cli::cmd_classify(problem, out, o, std::cout, std::cerr);
  if (*weights) return cli::cmd_weights(problem, point, direction, t_max, out, std::cout, std::cerr);
  if (*flow) return cli::cmd_flow(problem, point, out, o, std::cout, std::cerr);
  if (*parabolic) return cli::cmd_parabolic(problem, direction, std::cout, std::cerr);
  return cli::cmd_check(problem, std::cout, std::cerr);
}
