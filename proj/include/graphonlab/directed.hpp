#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "graphonlab/exchangeable.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Directed graph on 0..n-1 whose arc set is an arbitrary 0/1 matrix;
// diagonal entries are loops.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t n);

  std::size_t order() const { return n_; }
  std::size_t arc_count() const;  // loops included
  std::size_t loop_count() const;

  bool has_arc(Vertex u, Vertex v) const {
    return (out_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  bool has_loop(Vertex u) const { return has_arc(u, u); }
  std::span<const std::uint64_t> successors(Vertex u) const { return {out_.data() + u * words_, words_}; }
  std::span<const std::uint64_t> predecessors(Vertex u) const { return {in_.data() + u * words_, words_}; }
  std::size_t words_per_row() const { return words_; }

  void add_arc(Vertex u, Vertex v);

  // Arcs (u, v) in lexicographic order, loops as (u, u).
  std::vector<Edge> arcs() const;
  DirectedGraph prefix(std::size_t n) const;
  DirectedGraph relabelled(std::span<const Vertex> relabel) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
};

// Bit u*n + v set iff arc (u, v); requires n <= 8.
std::uint64_t arc_mask(const DirectedGraph& g);
DirectedGraph from_arc_mask(std::size_t n, std::uint64_t mask);

inline constexpr std::size_t kDirectedCanonicalCap = 8;

// Minimum arc code over relabellings, loops included. Two directed graphs
// are isomorphic iff their codes agree (for equal order).
std::uint64_t directed_canonical_code(const DirectedGraph& g);

// Index into the four joint-indicator kernels: W[2*alpha + beta] is
// P(X_ij = alpha and X_ji = beta).
constexpr std::size_t joint_index(int alpha, int beta) {
  return static_cast<std::size_t>(2 * alpha + beta);
}

// (W00, W01, W10, W11, w) as step functions over m blocks.
struct DirectedKernelQuintuple {
  std::vector<Rational> mu;
  std::array<RationalMatrix, 4> joint;
  std::vector<std::uint8_t> loop;  // w, values in {0,1}
};

// (W00, W01, W10, W11) over the extended states (block a, loop flag z),
// indexed 2a + z, with loops drawn iid Bernoulli(p).
struct DirectedKernelQuadruplePlusP {
  std::vector<Rational> mu;
  std::array<RationalMatrix, 4> joint;  // 2m x 2m
  Rational p;
};

struct KernelCheck {
  bool valid = true;
  std::string detail;  // first violation when invalid
};

// Normalisation sum_ab W_ab = 1, transpose symmetry W_ab(x,y) = W_ba(y,x),
// entries in [0,1], loop values in {0,1}, and a probability measure mu.
KernelCheck validate_quintuple(const DirectedKernelQuintuple& k);
KernelCheck validate_quadruple(const DirectedKernelQuadruplePlusP& k);

DirectedKernelQuintuple tournament_kernel();

DirectedGraph sample_directed(const DirectedKernelQuintuple& k, std::size_t n, Rng& rng);
DirectedGraph sample_directed_qp(const DirectedKernelQuadruplePlusP& k, std::size_t n, Rng& rng);

// Finite-host densities, counting maps that send arcs to arcs and loops to
// loops.
Rational directed_t(const DirectedGraph& pattern, const DirectedGraph& host);
Rational directed_t_inj(const DirectedGraph& pattern, const DirectedGraph& host);
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedGraph& host);

// Limit densities P(F subset of G(k,W)) and P(F = G(k,W)) as block sums.
Rational directed_t(const DirectedGraph& pattern, const DirectedKernelQuintuple& k);
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedKernelQuintuple& k);
Rational directed_t(const DirectedGraph& pattern, const DirectedKernelQuadruplePlusP& k);
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedKernelQuadruplePlusP& k);

// Diagonal of one sampled graph.
std::vector<std::uint8_t> loop_sequence_law(const DirectedKernelQuintuple& k, std::size_t n, Rng& rng);
std::vector<std::uint8_t> loop_sequence_law(const DirectedKernelQuadruplePlusP& k, std::size_t n,
                                            Rng& rng);

// Mixture of directed kernels, one drawn per sampled graph.
class DirectedSource {
 public:
  using Kernel = std::variant<DirectedKernelQuintuple, DirectedKernelQuadruplePlusP>;

  static DirectedSource kernel(Kernel k);
  static DirectedSource mixture(std::vector<std::pair<Rational, Kernel>> components);

  DirectedGraph sample_prefix(std::size_t n, Rng& rng) const;

 private:
  std::vector<std::pair<Rational, Kernel>> components_;
  std::vector<double> cumulative_;
};

struct DirectedPrefixLaw {
  std::size_t k = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // by arc_mask
  std::uint64_t total = 0;
};

DirectedPrefixLaw directed_prefix_law_empirical(const DirectedSource& src, std::size_t k,
                                                std::size_t samples, Rng& rng);

// Chi-square uniformity within directed isomorphism classes, Bonferroni
// corrected.
Verdict directed_exchangeability_test(const DirectedPrefixLaw& law, double alpha = 0.01);

// Product identity for vertex-disjoint directed patterns; PlacedPattern
// edges are arcs and (u, u) is a loop.
ExtremalityReport directed_extremality_test(const DirectedSource& src,
                                            std::span<const PatternPair> patterns,
                                            std::size_t samples, double alpha, Rng& rng);

// Text format: "n m", then m lines "u v" (u = v is a loop), 1-based.
DirectedGraph read_directed_graph(std::istream& in);
void write_directed_graph(std::ostream& out, const DirectedGraph& g);

// Text format: "m", measures, then labelled blocks "W00", "W01", "W10",
// "W11" each followed by m rows, then a line of m loop values. Invalid
// kernels are rejected.
DirectedKernelQuintuple read_quintuple(std::istream& in);
void write_quintuple(std::ostream& out, const DirectedKernelQuintuple& k);

}  // namespace graphonlab
