#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "graphonlab/rng.hpp"

namespace graphonlab {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple loopless graph on vertices 0..n-1, stored as bit rows.
class LabelledGraph {
 public:
  LabelledGraph() = default;
  explicit LabelledGraph(std::size_t n);

  static LabelledGraph from_edges(std::size_t n, std::span<const Edge> edges);
  static LabelledGraph complete(std::size_t n);
  static LabelledGraph path(std::size_t n);
  static LabelledGraph cycle(std::size_t n);
  static LabelledGraph complete_bipartite(std::size_t a, std::size_t b);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const;
  std::size_t words_per_row() const { return words_; }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  std::span<const std::uint64_t> row(Vertex u) const {
    return {bits_.data() + u * words_, words_};
  }
  std::size_t degree(Vertex u) const;

  // Self pairs are rejected; adding an existing edge is a no-op.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  // Graph in which vertex v of this graph is called relabel[v].
  LabelledGraph relabelled(std::span<const Vertex> relabel) const;

  // Induced subgraph on the first n vertices.
  LabelledGraph prefix(std::size_t n) const;

  friend bool operator==(const LabelledGraph&, const LabelledGraph&) = default;

 private:
  void set(Vertex u, Vertex v, bool value);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Index of the unordered pair {i, j}, i < j, in column order
// (0,1), (0,2), (1,2), (0,3), ...
constexpr std::size_t pair_index(Vertex i, Vertex j) {
  return j * (j - 1) / 2 + i;
}
constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Bit pair_index(i,j) set iff {i,j} is an edge; requires order() <= 11.
std::uint64_t edge_mask(const LabelledGraph& g);
LabelledGraph from_edge_mask(std::size_t n, std::uint64_t mask);

// Graph on [k] with an edge between positions i and j iff verts[i] != verts[j]
// and the two vertices are adjacent in g.
LabelledGraph induced_pattern(const LabelledGraph& g, std::span<const Vertex> verts);

// G[k]: pattern induced by k uniform draws with replacement.
LabelledGraph sample_with_replacement(const LabelledGraph& g, std::size_t k, Rng& rng);

// G[k]': pattern induced by k uniform draws without replacement; k <= order().
LabelledGraph sample_without_replacement(const LabelledGraph& g, std::size_t k, Rng& rng);

// Uniformly random relabelling of the vertices.
LabelledGraph random_relabel(const LabelledGraph& g, Rng& rng);

LabelledGraph disjoint_union(std::span<const LabelledGraph> parts);

// Isomorphism class of a small graph, held as its canonical representative.
class UnlabelledGraph {
 public:
  std::size_t order() const { return canon_.order(); }
  const LabelledGraph& canon() const { return canon_; }
  // Adjacency bits over pair_index order, first pair most significant.
  std::uint64_t code() const { return code_; }

  friend bool operator==(const UnlabelledGraph& a, const UnlabelledGraph& b) {
    return a.order() == b.order() && a.code_ == b.code_;
  }
  friend std::strong_ordering operator<=>(const UnlabelledGraph& a, const UnlabelledGraph& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    return a.code_ <=> b.code_;
  }

 private:
  friend UnlabelledGraph canonicalize(const LabelledGraph& g);
  UnlabelledGraph(LabelledGraph canon, std::uint64_t code)
      : canon_(std::move(canon)), code_(code) {}

  LabelledGraph canon_;
  std::uint64_t code_ = 0;
};

inline constexpr std::size_t kCanonicalCap = 10;

// Minimum adjacency code over all relabellings that list vertices by
// nondecreasing degree. Throws CapacityError above kCanonicalCap vertices.
UnlabelledGraph canonicalize(const LabelledGraph& g);

inline bool isomorphic(const LabelledGraph& a, const LabelledGraph& b) {
  return a.order() == b.order() && a.edge_count() == b.edge_count() &&
         canonicalize(a) == canonicalize(b);
}

struct GraphEnumeration {
  std::size_t max_n = 0;
  // Ordered by vertex count, then canonical code.
  std::vector<UnlabelledGraph> list;
};

inline constexpr std::size_t kEnumerationCap = 7;

GraphEnumeration enumerate_unlabelled(std::size_t max_n, std::size_t cap = kEnumerationCap);

// Text format: "n m", then m lines "u v" with 1 <= u < v <= n.
LabelledGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const LabelledGraph& g);

}  // namespace graphonlab
