#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "graphonlab/bipartite.hpp"
#include "graphonlab/densities.hpp"
#include "graphonlab/directed.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/exchangeable.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/parallel.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab::cli {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

// Parses with the given reader and prefixes errors with the file name.
template <typename Reader>
auto load(const fs::path& path, Reader reader) {
  std::ifstream in = open_input(path);
  try {
    return reader(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

LabelledGraph load_graph(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_graph(in); });
}
StepGraphon load_graphon(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_step_graphon(in); });
}
BipartiteGraph load_bipartite(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_bipartite_graph(in); });
}
BipartiteKernel load_bipartite_kernel(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_bipartite_kernel(in); });
}
DirectedGraph load_directed(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_directed_graph(in); });
}
DirectedKernelQuintuple load_quintuple(const fs::path& p) {
  return load(p, [](std::istream& in) { return read_quintuple(in); });
}

const fs::path& require(const std::optional<fs::path>& path, const char* flag) {
  if (!path) throw InputError(std::string("missing required option ") + flag);
  return *path;
}

std::string id_of(const fs::path& p) { return p.filename().string(); }

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

std::string scientific(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

const char* flag(bool ok) { return ok ? "true" : "false"; }

GeneralGraphon as_general(const StepGraphon& w) {
  auto block = [&w](double x) {
    const auto& c = w.cumulative_mu();
    const auto it = std::upper_bound(c.begin(), c.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - c.begin()), w.blocks() - 1);
  };
  return GeneralGraphon([w, block](double x, double y) { return w.w_double(block(x), block(y)); });
}

GraphSource simple_source(const RunConfig& config) {
  if (config.source) {
    std::ifstream in = open_input(*config.source);
    return read_graph_source(in, config.source->parent_path());
  }
  if (config.graphon) return GraphSource::w_random(load_graphon(*config.graphon));
  throw InputError("missing required option --src or -W");
}

std::size_t samples_or(const RunConfig& config, std::size_t fallback) {
  return config.samples == 0 ? fallback : config.samples;
}

void print_verdict(std::ostream& out, const Verdict& v, const char* good, const char* bad) {
  out << "VERDICT " << (v.consistent ? good : bad) << " p_min=" << scientific(v.p_min)
      << " comparisons=" << v.comparisons << '\n';
}

void density_simple(const RunConfig& config, std::ostream& out) {
  std::vector<std::pair<std::string, LabelledGraph>> patterns;
  for (const auto& p : config.patterns) patterns.emplace_back(id_of(p), load_graph(p));
  Rng rng(config.seed);
  if (config.samples > 0) {
    out << "pattern_id,host_id,t_estimate,samples,halfwidth\n";
    for (const auto& [fid, f] : patterns) {
      for (const auto& h : config.hosts) {
        const auto est = mc_t(f, load_graph(h), config.samples, rng, config.alpha);
        out << fid << ',' << id_of(h) << ',' << fixed(est.point) << ',' << est.samples << ','
            << fixed(est.confidence_halfwidth) << '\n';
      }
      if (config.graphon) {
        const auto est = mc_density(f, as_general(load_graphon(*config.graphon)), config.samples,
                                    rng, config.alpha);
        out << fid << ',' << id_of(*config.graphon) << ',' << fixed(est.point) << ','
            << est.samples << ',' << fixed(est.confidence_halfwidth) << '\n';
      }
    }
    return;
  }
  out << "pattern_id,host_id,t,t_inj,t_ind,bound_ok\n";
  for (const auto& [fid, f] : patterns) {
    for (const auto& h : config.hosts) {
      const LabelledGraph g = load_graph(h);
      out << fid << ',' << id_of(h) << ',' << format_decimal(t(f, g)) << ','
          << format_decimal(t_inj(f, g)) << ',' << format_decimal(t_ind(f, g)) << ','
          << flag(sampling_bound_check(f, g).ok) << '\n';
    }
    if (config.graphon) {
      const StepGraphon w = load_graphon(*config.graphon);
      const Rational value = exact_density(f, w);
      // Injective samples of a graphon coincide with independent ones.
      out << fid << ',' << id_of(*config.graphon) << ',' << format_decimal(value) << ','
          << format_decimal(value) << ',' << format_decimal(exact_induced_density(f, w))
          << ",true\n";
    }
  }
}

void density_bipartite(const RunConfig& config, std::ostream& out) {
  if (config.samples > 0) throw InputError("bipartite densities are exact only");
  out << "pattern_id,host_id,t,t_inj,t_ind,bound_ok\n";
  for (const auto& fp : config.patterns) {
    const BipartiteGraph f = load_bipartite(fp);
    for (const auto& h : config.hosts) {
      const BipartiteGraph g = load_bipartite(h);
      out << id_of(fp) << ',' << id_of(h) << ',' << format_decimal(bip_t(f, g)) << ','
          << format_decimal(bip_t_inj(f, g)) << ',' << format_decimal(bip_t_ind(f, g)) << ','
          << flag(bip_sampling_bound_check(f, g).ok) << '\n';
    }
    if (config.graphon) {
      const BipartiteKernel w = load_bipartite_kernel(*config.graphon);
      const Rational value = bip_exact_density(f, w);
      out << id_of(fp) << ',' << id_of(*config.graphon) << ',' << format_decimal(value) << ','
          << format_decimal(value) << ',' << format_decimal(bip_exact_induced_density(f, w))
          << ",true\n";
    }
  }
}

void density_directed(const RunConfig& config, std::ostream& out) {
  if (config.samples > 0) throw InputError("directed densities are exact only");
  out << "pattern_id,host_id,t,t_inj,t_ind,bound_ok\n";
  for (const auto& fp : config.patterns) {
    const DirectedGraph f = load_directed(fp);
    for (const auto& h : config.hosts) {
      const DirectedGraph g = load_directed(h);
      const Rational a = directed_t(f, g);
      const Rational b = directed_t_inj(f, g);
      const Rational bound = Rational(f.order() * f.order(), 2 * g.order());
      out << id_of(fp) << ',' << id_of(h) << ',' << format_decimal(a) << ',' << format_decimal(b)
          << ',' << format_decimal(directed_t_ind(f, g)) << ',' << flag(abs(a - b) <= bound)
          << '\n';
    }
    if (config.graphon) {
      const DirectedKernelQuintuple w = load_quintuple(*config.graphon);
      const Rational value = directed_t(f, w);
      out << id_of(fp) << ',' << id_of(*config.graphon) << ',' << format_decimal(value) << ','
          << format_decimal(value) << ',' << format_decimal(directed_t_ind(f, w)) << ",true\n";
    }
  }
}

std::vector<std::size_t> require_grid(const std::vector<std::size_t>& grid) {
  if (!grid.empty()) return grid;
  return {10, 40, 160};
}

}  // namespace

int cmd_density(const RunConfig& config, std::ostream& out) {
  if (config.patterns.empty()) throw InputError("missing required option -F");
  if (config.hosts.empty() && !config.graphon) throw InputError("missing required option -G or -W");
  switch (config.kind) {
    case Kind::kSimple:
      density_simple(config, out);
      break;
    case Kind::kBipartite:
      density_bipartite(config, out);
      break;
    case Kind::kDirected:
      density_directed(config, out);
      break;
  }
  return kExitOk;
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  const fs::path& wpath = require(config.graphon, "-W");
  if (config.n == 0) throw InputError("-n must be positive");
  Rng rng(config.seed);
  std::ostringstream text;
  switch (config.kind) {
    case Kind::kSimple:
      write_graph(text, sample_w_random(load_graphon(wpath), config.n, rng));
      break;
    case Kind::kBipartite: {
      const std::size_t n2 = config.n2 == 0 ? config.n : config.n2;
      write_bipartite_graph(text, sample_bip_w_random(load_bipartite_kernel(wpath), config.n, n2, rng));
      break;
    }
    case Kind::kDirected:
      write_directed_graph(text, sample_directed(load_quintuple(wpath), config.n, rng));
      break;
  }
  if (config.output) {
    std::ofstream file(*config.output);
    if (!file) throw InputError("cannot write " + config.output->string());
    file << text.str();
  } else {
    out << text.str();
  }
  return kExitOk;
}

int cmd_converge(const RunConfig& config, std::ostream& out) {
  if (config.kind != Kind::kSimple) throw InputError("converge supports simple graphs only");
  const GraphEnumeration enumeration = enumerate_unlabelled(config.max_n);
  DensityVector reference;
  std::optional<StepGraphon> w;
  if (config.graphon) w = load_graphon(*config.graphon);
  if (config.reference) {
    reference = tau_plus(load_graph(*config.reference), enumeration);
  } else if (w) {
    reference = tau_plus(*w, enumeration);
  } else {
    throw InputError("missing required option --reference or -W");
  }
  for (const auto& h : config.hosts) {
    const Rational d = metric_d(tau_plus(load_graph(h), enumeration), reference);
    out << "METRIC d=" << format_decimal(d) << " file=" << id_of(h) << '\n';
  }
  if (!config.sizes.empty()) {
    if (!w) throw InputError("--sample-sizes needs -W");
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
      Rng rng(config.seed, i);
      const LabelledGraph g = sample_w_random(*w, config.sizes[i], rng);
      const Rational d = metric_d(tau_plus(g, enumeration), reference);
      out << "METRIC d=" << format_decimal(d) << " n=" << config.sizes[i] << '\n';
    }
  }
  if (config.hosts.empty() && config.sizes.empty()) {
    throw InputError("missing required option -G or --sample-sizes");
  }
  return kExitOk;
}

int cmd_test_exchangeable(const RunConfig& config, std::ostream& out) {
  Rng rng(config.seed);
  const std::size_t samples = samples_or(config, 100'000);
  Verdict verdict;
  switch (config.kind) {
    case Kind::kSimple:
      if (config.exact) {
        verdict = exchangeability_test(prefix_law_exact(load_graphon(require(config.graphon, "-W")), config.k),
                                       config.alpha);
      } else {
        verdict = exchangeability_test(prefix_law_empirical(simple_source(config), config.k, samples, rng),
                                       config.alpha);
      }
      break;
    case Kind::kBipartite: {
      const auto src = BipartiteSource::kernel(load_bipartite_kernel(require(config.graphon, "-W")));
      const std::size_t k2 = config.n2 == 0 ? config.k : config.n2;
      verdict = separate_exchangeability_test(bip_prefix_law_empirical(src, config.k, k2, samples, rng),
                                              config.alpha);
      break;
    }
    case Kind::kDirected: {
      const auto src = DirectedSource::kernel(load_quintuple(require(config.graphon, "-W")));
      verdict = directed_exchangeability_test(directed_prefix_law_empirical(src, config.k, samples, rng),
                                              config.alpha);
      break;
    }
  }
  print_verdict(out, verdict, "consistent", "rejected");
  return verdict.consistent ? kExitOk : kExitRejected;
}

int cmd_test_extreme(const RunConfig& config, std::ostream& out) {
  const fs::path& pairs_path = require(config.pairs, "--pairs");
  const auto pairs = load(pairs_path, [](std::istream& in) { return read_pattern_pairs(in); });
  Rng rng(config.seed);
  const std::size_t samples = samples_or(config, 100'000);
  ExtremalityReport report;
  switch (config.kind) {
    case Kind::kSimple:
      report = extremality_test(simple_source(config), pairs, samples, config.alpha, rng);
      break;
    case Kind::kDirected:
      report = directed_extremality_test(DirectedSource::kernel(load_quintuple(require(config.graphon, "-W"))),
                                         pairs, samples, config.alpha, rng);
      break;
    case Kind::kBipartite:
      throw InputError("test-extreme supports simple and directed sources");
  }
  out << "pair,p_first,p_second,p_both,difference,std_error,z,p_value\n";
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const auto& r = report.pairs[i];
    out << i + 1 << ',' << fixed(r.p_first) << ',' << fixed(r.p_second) << ',' << fixed(r.p_both)
        << ',' << fixed(r.difference) << ',' << fixed(r.std_error) << ',' << fixed(r.z) << ','
        << scientific(r.p_value) << '\n';
  }
  print_verdict(out, report.verdict, "extreme-consistent", "non-extreme");
  return report.verdict.consistent ? kExitOk : kExitRejected;
}

int cmd_cutdist(const RunConfig& config, std::ostream& out) {
  const StepGraphon a = load_graphon(require(config.graphon, "-W"));
  const StepGraphon b = load_graphon(require(config.graphon2, "--W2"));
  out << "METRIC cut_distance_upper=" << format_decimal(cut_distance_upper(a, b)) << '\n';
  return kExitOk;
}

int cmd_trace_martingale(const RunConfig& config, std::ostream& out) {
  if (config.patterns.size() != 1) throw InputError("trace-martingale needs exactly one -F");
  const LabelledGraph f = load_graph(config.patterns.front());
  const auto grid = require_grid(config.grid);
  Rng rng(config.seed);
  const auto trace = martingale_trace(simple_source(config), f, grid, rng);
  out << "n,t_ind\n";
  for (std::size_t i = 0; i < grid.size(); ++i) out << grid[i] << ',' << format_decimal(trace[i]) << '\n';
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  set_worker_count(config.threads);
  try {
    if (config.command == "density") return cmd_density(config, out);
    if (config.command == "sample") return cmd_sample(config, out);
    if (config.command == "converge") return cmd_converge(config, out);
    if (config.command == "test-exchangeable") return cmd_test_exchangeable(config, out);
    if (config.command == "test-extreme") return cmd_test_extreme(config, out);
    if (config.command == "cutdist") return cmd_cutdist(config, out);
    if (config.command == "trace-martingale") return cmd_trace_martingale(config, out);
    throw InputError("unknown command '" + config.command + "'");
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace graphonlab::cli
