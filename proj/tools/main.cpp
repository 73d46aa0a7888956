#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = graphonlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"graphonlab: densities, W-random graphs and exchangeability tests"};
  app.require_subcommand(1);
  cli::RunConfig config;

  const std::map<std::string, cli::Kind> kinds{{"simple", cli::Kind::kSimple},
                                               {"bipartite", cli::Kind::kBipartite},
                                               {"directed", cli::Kind::kDirected}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", config.threads, "worker threads (default GRAPHONLAB_THREADS or all cores)");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--kind", config.kind, "simple, bipartite or directed")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  };

  auto* density = app.add_subcommand("density", "exact or Monte Carlo densities");
  common(density);
  density->add_option("-F,--pattern", config.patterns, "pattern graph files")->required();
  density->add_option("-G,--host", config.hosts, "host graph files");
  density->add_option("-W,--graphon", config.graphon, "step graphon or kernel file");
  density->add_option("--samples,--mc", config.samples, "Monte Carlo samples (0 = exact)");
  density->add_option("--alpha", config.alpha, "confidence level for Monte Carlo half-widths");

  auto* sample = app.add_subcommand("sample", "draw a W-random graph");
  common(sample);
  sample->add_option("-W,--graphon", config.graphon, "step graphon or kernel file")->required();
  sample->add_option("-n", config.n, "vertex count (rows for bipartite)")->required();
  sample->add_option("--n2", config.n2, "column count for bipartite graphs");
  sample->add_option("-o,--output", config.output, "output file (default stdout)");

  auto* converge = app.add_subcommand("converge", "distance d to a reference in the density embedding");
  common(converge);
  converge->add_option("--reference", config.reference, "reference graph file");
  converge->add_option("-W,--graphon", config.graphon, "reference step graphon");
  converge->add_option("-G,--host", config.hosts, "graph files to compare");
  converge->add_option("--sample-sizes", config.sizes, "sample G(n,W) at these sizes")->delimiter(',');
  converge->add_option("--max-n", config.max_n, "largest pattern order in the embedding");

  auto* exch = app.add_subcommand("test-exchangeable", "test that a prefix law is exchangeable");
  common(exch);
  exch->add_option("--src", config.source, "graph source file");
  exch->add_option("-W,--graphon", config.graphon, "graphon or kernel file");
  exch->add_option("-k", config.k, "prefix size (rows for bipartite)");
  exch->add_option("--k2", config.n2, "column prefix size for bipartite");
  exch->add_option("--samples", config.samples, "sampled prefixes (default 100000)");
  exch->add_option("--alpha", config.alpha, "significance level");
  exch->add_flag("--exact", config.exact, "use the exact prefix law of -W");

  auto* extreme = app.add_subcommand("test-extreme", "test the product identity for disjoint patterns");
  common(extreme);
  extreme->add_option("--src", config.source, "graph source file");
  extreme->add_option("-W,--graphon", config.graphon, "graphon or kernel file");
  extreme->add_option("--pairs", config.pairs, "pattern pair file")->required();
  extreme->add_option("--samples", config.samples, "sampled prefixes (default 100000)");
  extreme->add_option("--alpha", config.alpha, "significance level");

  auto* cut = app.add_subcommand("cutdist", "upper bound on the cut distance of two step graphons");
  common(cut);
  cut->add_option("-W,--graphon", config.graphon, "first step graphon")->required();
  cut->add_option("--W2", config.graphon2, "second step graphon")->required();

  auto* trace = app.add_subcommand("trace-martingale", "t_ind along one nested sample path");
  common(trace);
  trace->add_option("--src", config.source, "graph source file");
  trace->add_option("-W,--graphon", config.graphon, "step graphon file");
  trace->add_option("-F,--pattern", config.patterns, "pattern graph file")->required();
  trace->add_option("--grid", config.grid, "increasing prefix sizes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitInput;
  }
  config.command = app.get_subcommands().front()->get_name();
  return cli::run(config, std::cout, std::cerr);
}
