#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli.hpp"
#include "tailkit/errors.hpp"

namespace {

using tailkit::cli::Command;
using tailkit::cli::RunConfig;

void add_common(CLI::App& app, RunConfig& c) {
  app.add_option("--p", c.p, "Edge / element probability")->check(CLI::Range(0.0, 1.0));
  app.add_option("--t", c.t, "Tail multiplier t > 1");
  app.add_option("--q", c.q, "Growth exponent q for the exponent scales");
  app.add_option("--trials", c.trials, "Monte Carlo trials (0 disables)");
  app.add_option("--seed", c.seed, "Seed of the counter-based streams");
  app.add_option("--threads", c.threads, "Worker threads (0 = hardware)");
  app.add_option("--m-max", c.m_max, "Largest moment tried by the Markov bound");
  app.add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, tailkit::cli::Format>{{"json", tailkit::cli::Format::json},
                                                      {"csv", tailkit::cli::Format::csv}}));
  app.add_flag("--exact,!--no-exact", c.exact, "Force or forbid the enumeration oracles");
}

void add_problem(CLI::App& app, RunConfig& c, Command command) {
  switch (command) {
    case Command::hyper:
      app.add_option("--hypergraph", c.hypergraph_path, "Hypergraph file")->check(CLI::ExistingFile);
      break;
    case Command::linsys:
      app.add_option("--matrix", c.matrix_path, "Integer matrix file")->check(CLI::ExistingFile);
      app.add_option("--system", c.system, "Built-in system")->check(CLI::IsMember({"ap", "schur"}));
      app.add_option("--k", c.k, "Length of the progression system");
      app.add_option("--N", c.N, "Ground set [N]");
      break;
    case Command::ap:
      app.add_option("--k", c.k, "Progression length");
      app.add_option("--N", c.N, "Ground set [N]")->required();
      break;
    case Command::schur:
      app.add_option("--N", c.N, "Ground set [N]")->required();
      break;
    case Command::rooted:
      app.add_option("--graph", c.graph_path, "Graph file")->check(CLI::ExistingFile);
      app.add_option("--roots", c.roots, "Root vertices, 1-indexed")->delimiter(',');
      app.add_option("--n", c.n, "Vertices of G(n, p)")->required();
      break;
    case Command::sweep:
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper-tail bounds, certificates and exact oracles for subgraph counts"};
  app.require_subcommand(1);
  RunConfig config;

  const std::map<std::string, std::string> about{
      {"hyper", "Tail of the edge count induced by a random subset of a hypergraph file"},
      {"linsys", "Solution hypergraph of an integer system Ax = 0"},
      {"ap", "k-term arithmetic progressions in a random subset of [N]"},
      {"schur", "Schur triples x + y = z in a random subset of [N]"},
      {"rooted", "Rooted copies of a graph in G(n, p)"}};
  const std::map<std::string, Command> commands{{"hyper", Command::hyper},
                                                {"linsys", Command::linsys},
                                                {"ap", Command::ap},
                                                {"schur", Command::schur},
                                                {"rooted", Command::rooted}};
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, command] : commands) {
    auto* sub = app.add_subcommand(name, about.at(name));
    add_common(*sub, config);
    add_problem(*sub, config, command);
    dispatch[sub] = command;
  }

  auto* sweep = app.add_subcommand("sweep", "Evaluate another command over a p grid");
  add_common(*sweep, config);
  sweep->add_option("--command", config.inner, "Command evaluated per grid point")
      ->required()
      ->transform(CLI::CheckedTransformer(commands));
  sweep->add_option("--p-min", config.p_min, "Smallest p");
  sweep->add_option("--p-max", config.p_max, "Largest p");
  sweep->add_option("--steps", config.steps, "Grid points");
  sweep->add_option("--scale", config.scale, "Grid spacing")
      ->transform(CLI::CheckedTransformer(std::map<std::string, tailkit::cli::Scale>{
          {"log", tailkit::cli::Scale::log}, {"linear", tailkit::cli::Scale::linear}}));
  // Problem options of every command, disjoint except for shared names.
  sweep->add_option("--hypergraph", config.hypergraph_path, "Hypergraph file (hyper)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--matrix", config.matrix_path, "Integer matrix file (linsys)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--system", config.system, "Built-in system (linsys)")
      ->check(CLI::IsMember({"ap", "schur"}));
  sweep->add_option("--k", config.k, "Progression length (ap, linsys)");
  sweep->add_option("--N", config.N, "Ground set [N] (ap, schur, linsys)");
  sweep->add_option("--graph", config.graph_path, "Graph file (rooted)")->check(CLI::ExistingFile);
  sweep->add_option("--roots", config.roots, "Root vertices, 1-indexed (rooted)")->delimiter(',');
  sweep->add_option("--n", config.n, "Vertices of G(n, p) (rooted)");
  dispatch[sweep] = Command::sweep;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  for (const auto& [sub, command] : dispatch) {
    if (sub->parsed()) config.command = command;
  }

  try {
    const auto report = tailkit::cli::run(config);
    std::cout << tailkit::cli::emit(report, config.format);
    return report.failed ? 2 : 0;
  } catch (const tailkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
