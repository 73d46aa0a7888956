#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "graphonlab/densities.hpp"
#include "graphonlab/exchangeable.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Bipartite graph with an explicit bipartition: rows 0..n1-1 on the first
// side, columns 0..n2-1 on the second; edges only join a row to a column.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t n1, std::size_t n2);

  static BipartiteGraph complete(std::size_t n1, std::size_t n2);

  std::size_t first_size() const { return n1_; }
  std::size_t second_size() const { return n2_; }
  std::size_t edge_count() const;

  bool adjacent(Vertex row, Vertex col) const {
    return (bits_[row * words_ + col / 64] >> (col % 64)) & 1U;
  }
  std::span<const std::uint64_t> row(Vertex r) const { return {bits_.data() + r * words_, words_}; }
  std::size_t words_per_row() const { return words_; }

  void add_edge(Vertex row, Vertex col);
  std::vector<Edge> edges() const;

  // Restriction to the first n1 rows and n2 columns.
  BipartiteGraph prefix(std::size_t n1, std::size_t n2) const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Bit r*n2 + c set iff (r, c) is an edge; requires n1*n2 <= 64.
std::uint64_t edge_mask(const BipartiteGraph& g);
BipartiteGraph from_edge_mask(std::size_t n1, std::size_t n2, std::uint64_t mask);

BigInt bip_count_homomorphisms(const BipartiteGraph& pattern, const BipartiteGraph& host);
BigInt bip_count_injective(const BipartiteGraph& pattern, const BipartiteGraph& host);
BigInt bip_count_induced(const BipartiteGraph& pattern, const BipartiteGraph& host);

// Densities over part-respecting maps; inj and ind are zero when either
// side of the pattern is larger than the host's.
Rational bip_t(const BipartiteGraph& pattern, const BipartiteGraph& host);
Rational bip_t_inj(const BipartiteGraph& pattern, const BipartiteGraph& host);
Rational bip_t_ind(const BipartiteGraph& pattern, const BipartiteGraph& host);

// |t - t_inj| against v1(F)^2/(2 v1(G)) + v2(F)^2/(2 v2(G)).
SamplingBound bip_sampling_bound_check(const BipartiteGraph& pattern, const BipartiteGraph& host);

// Step kernel on [0,1]^2 with separate row and column partitions; no
// symmetry is required.
class BipartiteKernel {
 public:
  BipartiteKernel(std::vector<Rational> mu1, std::vector<Rational> mu2, RationalMatrix w);

  static BipartiteKernel constant(const Rational& p);

  std::size_t row_blocks() const { return mu1_.size(); }
  std::size_t col_blocks() const { return mu2_.size(); }
  const std::vector<Rational>& mu1() const { return mu1_; }
  const std::vector<Rational>& mu2() const { return mu2_; }
  const Rational& w(std::size_t a, std::size_t b) const { return w_(a, b); }

  const std::vector<double>& cumulative_mu1() const { return cumulative1_; }
  const std::vector<double>& cumulative_mu2() const { return cumulative2_; }
  double w_double(std::size_t a, std::size_t b) const { return w_double_[a * col_blocks() + b]; }

 private:
  std::vector<Rational> mu1_;
  std::vector<Rational> mu2_;
  RationalMatrix w_;
  std::vector<double> cumulative1_;
  std::vector<double> cumulative2_;
  std::vector<double> w_double_;
};

// Adjacency of g as a kernel with uniform row and column blocks.
BipartiteKernel bipartite_graph_as_kernel(const BipartiteGraph& g);

// G(n1, n2, W): independent row and column labels, then independent edges.
BipartiteGraph sample_bip_w_random(const BipartiteKernel& w, std::size_t n1, std::size_t n2,
                                   Rng& rng);

// Integral of prod W(x_i, y_j) over the pattern's edges. Given the row
// blocks, the column vertices contribute independent factors.
Rational bip_exact_density(const BipartiteGraph& pattern, const BipartiteKernel& w);
// P(G(k1, k2, W) = F), with factor 1 - W on row-column non-edges.
Rational bip_exact_induced_density(const BipartiteGraph& pattern, const BipartiteKernel& w);

// Mixture of kernels, one drawn per sampled graph.
class BipartiteSource {
 public:
  static BipartiteSource kernel(BipartiteKernel w);
  static BipartiteSource mixture(std::vector<std::pair<Rational, BipartiteKernel>> components);

  BipartiteGraph sample_prefix(std::size_t n1, std::size_t n2, Rng& rng) const;

 private:
  std::vector<std::pair<Rational, BipartiteKernel>> components_;
  std::vector<double> cumulative_;
};

// Empirical law of the k1 x k2 restriction, keyed by bipartite edge_mask.
struct BipartitePrefixLaw {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
};

BipartitePrefixLaw bip_prefix_law_empirical(const BipartiteSource& src, std::size_t k1,
                                            std::size_t k2, std::size_t samples, Rng& rng);

// Chi-square check that the law is invariant under independent row and
// column permutations, Bonferroni over orbits.
Verdict separate_exchangeability_test(const BipartitePrefixLaw& law, double alpha = 0.01);

// A bipartite pattern placed on prefix rows and columns.
struct PlacedBipartitePattern {
  std::vector<Vertex> rows;
  std::vector<Vertex> cols;
  std::vector<Edge> edges;  // (row, col)
};

struct BipartitePatternPair {
  PlacedBipartitePattern first;
  PlacedBipartitePattern second;
};

// Product identity P(F1 and F2) = P(F1) P(F2) for pairs whose row sets and
// column sets are both disjoint.
ExtremalityReport bip_extremality_test(const BipartiteSource& src,
                                       std::span<const BipartitePatternPair> patterns,
                                       std::size_t samples, double alpha, Rng& rng);

// Text format: "n1 n2 m", then m lines "u v" with u in [1,n1], v in [1,n2].
BipartiteGraph read_bipartite_graph(std::istream& in);
void write_bipartite_graph(std::ostream& out, const BipartiteGraph& g);

// Text format: "m1 m2", a line of m1 row measures, a line of m2 column
// measures, then m1 rows of m2 entries.
BipartiteKernel read_bipartite_kernel(std::istream& in);
void write_bipartite_kernel(std::ostream& out, const BipartiteKernel& w);

}  // namespace graphonlab
