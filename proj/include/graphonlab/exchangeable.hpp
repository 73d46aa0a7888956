#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/rng.hpp"
#include "graphonlab/stats.hpp"

namespace graphonlab {

// Law of the restriction H|k of an exchangeable infinite random graph,
// indexed by edge_mask of labelled graphs on [k]. Exact laws list every
// labelled graph; empirical laws hold counts.
struct PrefixLaw {
  std::size_t k = 0;
  bool exact = true;
  std::map<std::uint64_t, Rational> probs;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  double probability(std::uint64_t mask) const;
};

// Distribution of exchangeable infinite graphs that can produce finite
// prefixes: G(inf, W), a mixture of those with W drawn once per graph, or an
// arbitrary sampler.
class GraphSource {
 public:
  using Sampler = std::function<LabelledGraph(std::size_t n, Rng& rng)>;

  static GraphSource w_random(StepGraphon w);
  static GraphSource mixture(std::vector<std::pair<Rational, StepGraphon>> components);
  static GraphSource external(Sampler sampler);

  // H|n for one draw of H.
  LabelledGraph sample_prefix(std::size_t n, Rng& rng) const;

 private:
  struct Mixture {
    std::vector<std::pair<Rational, StepGraphon>> components;
    std::vector<double> cumulative;
  };
  explicit GraphSource(std::variant<StepGraphon, Mixture, Sampler> kind) : kind_(std::move(kind)) {}

  std::variant<StepGraphon, Mixture, Sampler> kind_;
};

// Source description file, one of
//   w-random <graphon file>
//   constant <p>
//   mixture            followed by lines "<weight> <graphon file | constant:p>"
// Relative paths resolve against `base_dir`.
GraphSource read_graph_source(std::istream& in, const std::filesystem::path& base_dir);

// Exact law of G(k,W): each labelled F on [k] gets the block sum of
// prod W over edges times prod (1-W) over non-edges.
PrefixLaw prefix_law_exact(const StepGraphon& w, std::size_t k);

PrefixLaw prefix_law_empirical(const GraphSource& src, std::size_t k, std::size_t samples,
                               Rng& rng);

// Sum over labelled graphs of |P - Q| / 2.
double total_variation(const PrefixLaw& a, const PrefixLaw& b);

struct Verdict {
  bool consistent = true;
  double p_min = 1.0;
  std::size_t comparisons = 0;
  std::string detail;
};

// Labelled graphs on [k] grouped by isomorphism class, as edge masks.
std::vector<std::vector<std::uint64_t>> isomorphism_classes(std::size_t k);

// Checks that the law is constant on isomorphism classes. Exact laws are
// compared exactly. Empirical laws get a chi-square uniformity test per
// class, Bonferroni corrected; classes whose expected cell count is below
// kMinExpectedCount are skipped.
inline constexpr double kMinExpectedCount = 5.0;
Verdict exchangeability_test(const PrefixLaw& law, double alpha = 0.01);

// A pattern placed on prefix vertices.
struct PlacedPattern {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

struct PatternPair {
  PlacedPattern first;
  PlacedPattern second;
};

struct ExtremalityReport {
  Verdict verdict;
  std::vector<ProductIdentityResult> pairs;
};

// Tests P(H contains F1 and F2) = P(H contains F1) P(H contains F2) for each
// vertex-disjoint pair from one common prefix sample, Bonferroni over pairs.
ExtremalityReport extremality_test(const GraphSource& src, std::span<const PatternPair> patterns,
                                   std::size_t samples, double alpha, Rng& rng);

// Reads "V1:E1 | V2:E2" lines; vertices and edges "u-v" are comma or
// space separated, all 1-based. Text after '#' and blank lines are ignored.
std::vector<PatternPair> read_pattern_pairs(std::istream& in);

struct Correspondence {
  Rational lhs;  // t(F, W)
  Rational rhs;  // P(H|k contains F)
  Rational gap;
};

Correspondence correspondence_check(const StepGraphon& w, const UnlabelledGraph& f, std::size_t k);

// t_ind(F, H|n) for every n in the grid, along one nested sample path.
std::vector<Rational> martingale_trace(const GraphSource& src, const LabelledGraph& pattern,
                                       std::span<const std::size_t> n_grid, Rng& rng);

}  // namespace graphonlab
