#include "graphonlab/graph.hpp"

#include <bit>
#include <numeric>
#include <ostream>
#include <string>

#include "graphonlab/errors.hpp"
#include "text_io.hpp"

namespace graphonlab {

LabelledGraph::LabelledGraph(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

LabelledGraph LabelledGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  LabelledGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

LabelledGraph LabelledGraph::complete(std::size_t n) {
  LabelledGraph g(n);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) g.set(u, v, true);
  return g;
}

LabelledGraph LabelledGraph::path(std::size_t n) {
  LabelledGraph g(n);
  for (Vertex v = 1; v < n; ++v) g.set(v - 1, v, true);
  return g;
}

LabelledGraph LabelledGraph::cycle(std::size_t n) {
  LabelledGraph g = path(n);
  if (n >= 3) g.set(0, n - 1, true);
  return g;
}

LabelledGraph LabelledGraph::complete_bipartite(std::size_t a, std::size_t b) {
  LabelledGraph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) g.set(u, v, true);
  return g;
}

std::size_t LabelledGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto word : bits_) twice += static_cast<std::size_t>(std::popcount(word));
  return twice / 2;
}

std::size_t LabelledGraph::degree(Vertex u) const {
  std::size_t d = 0;
  for (const auto word : row(u)) d += static_cast<std::size_t>(std::popcount(word));
  return d;
}

void LabelledGraph::set(Vertex u, Vertex v, bool value) {
  const std::uint64_t bu = std::uint64_t{1} << (u % 64);
  const std::uint64_t bv = std::uint64_t{1} << (v % 64);
  if (value) {
    bits_[u * words_ + v / 64] |= bv;
    bits_[v * words_ + u / 64] |= bu;
  } else {
    bits_[u * words_ + v / 64] &= ~bv;
    bits_[v * words_ + u / 64] &= ~bu;
  }
}

void LabelledGraph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self loops are not allowed in a simple graph");
  set(u, v, true);
}

void LabelledGraph::remove_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u != v) set(u, v, false);
}

std::vector<Edge> LabelledGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

LabelledGraph LabelledGraph::relabelled(std::span<const Vertex> relabel) const {
  if (relabel.size() != n_) throw InputError("relabelling has wrong length");
  LabelledGraph out(n_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.set(relabel[u], relabel[v], true);
  return out;
}

LabelledGraph LabelledGraph::prefix(std::size_t n) const {
  if (n > n_) throw InputError("prefix longer than graph");
  LabelledGraph out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adjacent(u, v)) out.set(u, v, true);
  return out;
}

std::uint64_t edge_mask(const LabelledGraph& g) {
  if (pair_count(g.order()) > 64) throw CapacityError("edge mask needs at most 11 vertices");
  std::uint64_t mask = 0;
  for (Vertex j = 1; j < g.order(); ++j)
    for (Vertex i = 0; i < j; ++i)
      if (g.adjacent(i, j)) mask |= std::uint64_t{1} << pair_index(i, j);
  return mask;
}

LabelledGraph from_edge_mask(std::size_t n, std::uint64_t mask) {
  if (pair_count(n) > 64) throw CapacityError("edge mask needs at most 11 vertices");
  LabelledGraph g(n);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if ((mask >> pair_index(i, j)) & 1U) g.add_edge(i, j);
  return g;
}

LabelledGraph induced_pattern(const LabelledGraph& g, std::span<const Vertex> verts) {
  for (const Vertex v : verts) {
    if (v >= g.order()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }
  LabelledGraph out(verts.size());
  for (Vertex j = 1; j < verts.size(); ++j)
    for (Vertex i = 0; i < j; ++i)
      if (verts[i] != verts[j] && g.adjacent(verts[i], verts[j])) out.add_edge(i, j);
  return out;
}

LabelledGraph sample_with_replacement(const LabelledGraph& g, std::size_t k, Rng& rng) {
  if (k == 0) throw InputError("sample size must be positive");
  if (g.order() == 0) throw InputError("cannot sample from an empty vertex set");
  std::vector<Vertex> verts(k);
  for (auto& v : verts) v = rng.below(g.order());
  return induced_pattern(g, verts);
}

LabelledGraph sample_without_replacement(const LabelledGraph& g, std::size_t k, Rng& rng) {
  if (k > g.order()) {
    throw InputError("cannot draw " + std::to_string(k) + " distinct vertices from " +
                     std::to_string(g.order()));
  }
  std::vector<Vertex> pool(g.order());
  std::iota(pool.begin(), pool.end(), Vertex{0});
  // Partial Fisher-Yates: the first k slots form a uniform ordered sample.
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return induced_pattern(g, pool);
}

LabelledGraph random_relabel(const LabelledGraph& g, Rng& rng) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  return g.relabelled(perm);
}

LabelledGraph disjoint_union(std::span<const LabelledGraph> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.order();
  LabelledGraph out(total);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (const auto& [u, v] : p.edges()) out.add_edge(u + offset, v + offset);
    offset += p.order();
  }
  return out;
}

LabelledGraph read_graph(std::istream& in) {
  detail::LineReader reader(in);
  const auto header = reader.next("header 'n m'", 2);
  const auto n = detail::parse_count(header[0]);
  const auto m = detail::parse_count(header[1]);
  if (n == 0) reader.fail("graph needs at least one vertex");
  if (m > pair_count(n)) reader.fail("more edges than vertex pairs");
  LabelledGraph g(n);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto fields = reader.next("edge 'u v'", 2);
    const auto u = detail::parse_count(fields[0]);
    const auto v = detail::parse_count(fields[1]);
    if (u < 1 || v > n || u > v) reader.fail("edge must satisfy 1 <= u < v <= n");
    if (u == v) reader.fail("self loop");
    if (g.adjacent(u - 1, v - 1)) reader.fail("duplicate edge");
    g.add_edge(u - 1, v - 1);
  }
  reader.expect_end();
  return g;
}

void write_graph(std::ostream& out, const LabelledGraph& g) {
  const auto edges = g.edges();
  out << g.order() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace graphonlab
