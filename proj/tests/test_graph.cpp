#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "graphonlab/errors.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/rng.hpp"

using namespace graphonlab;

namespace {

// Smallest edge mask over all n! relabellings.
std::uint64_t brute_min_mask(const LabelledGraph& g) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, edge_mask(g.relabelled(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("constructors") {
    CHECK(LabelledGraph::complete(4).edge_count() == 6);
    CHECK(LabelledGraph::path(4).edge_count() == 3);
    CHECK(LabelledGraph::cycle(5).edge_count() == 5);
    CHECK(LabelledGraph::complete_bipartite(2, 3).edge_count() == 6);
    LabelledGraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), InputError);
  }

  TEST_CASE("edge masks round trip in column order") {
    LabelledGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 3);
    CHECK(edge_mask(g) == ((1U << pair_index(0, 1)) | (1U << pair_index(1, 3))));
    CHECK(from_edge_mask(4, edge_mask(g)) == g);
    CHECK(pair_index(1, 2) == 2);
  }

  TEST_CASE("graph text format") {
    std::istringstream in("3 2\n1 2\n2 3\n");
    const LabelledGraph g = read_graph(in);
    CHECK(g == LabelledGraph::path(3));
    std::ostringstream out;
    write_graph(out, g);
    CHECK(out.str() == "3 2\n1 2\n2 3\n");
  }

  TEST_CASE("graph text format rejects malformed input") {
    for (const char* text : {"3 1\n2 1\n", "3 2\n1 2\n1 2\n", "0 0\n", "3 1\n1 4\n", "3 1\n1 2\n9 9\n",
                             "3 2\n1 2\n", "x y\n"}) {
      std::istringstream in(text);
      CHECK_THROWS_AS(read_graph(in), InputError);
    }
  }

  TEST_CASE("canonical form is invariant under relabelling") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      LabelledGraph g(1 + rng.below(8));
      for (Vertex v = 1; v < g.order(); ++v)
        for (Vertex u = 0; u < v; ++u)
          if (rng.below(2) == 1) g.add_edge(u, v);
      const LabelledGraph h = random_relabel(g, rng);
      CHECK(canonicalize(g) == canonicalize(h));
      CHECK(isomorphic(g, h));
    }
  }

  TEST_CASE("canonical codes separate classes exactly like brute force") {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::set<std::uint64_t> brute;
      std::set<std::uint64_t> codes;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask) {
        const LabelledGraph g = from_edge_mask(n, mask);
        brute.insert(brute_min_mask(g));
        codes.insert(canonicalize(g).code());
      }
      CHECK(brute.size() == codes.size());
    }
  }

  TEST_CASE("canonicalization cap") {
    CHECK_THROWS_AS(canonicalize(LabelledGraph(kCanonicalCap + 1)), CapacityError);
  }

  TEST_CASE("enumeration counts") {
    const std::vector<std::size_t> per_order{1, 2, 4, 11, 34, 156, 1044};
    const auto all = enumerate_unlabelled(7);
    std::vector<std::size_t> counts(8, 0);
    for (const auto& g : all.list) ++counts[g.order()];
    for (std::size_t n = 1; n <= 7; ++n) CHECK(counts[n] == per_order[n - 1]);
    CHECK(enumerate_unlabelled(3).list.size() == 7);
    CHECK(enumerate_unlabelled(4).list.size() == 18);
    CHECK(std::is_sorted(all.list.begin(), all.list.end()));
    CHECK_THROWS_AS(enumerate_unlabelled(8), CapacityError);
  }

  TEST_CASE("sampling helpers") {
    Rng rng(11);
    const LabelledGraph k4 = LabelledGraph::complete(4);
    CHECK(sample_without_replacement(k4, 3, rng) == LabelledGraph::complete(3));
    CHECK_THROWS_AS(sample_without_replacement(k4, 5, rng), InputError);
    const LabelledGraph pattern = sample_with_replacement(k4, 6, rng);
    CHECK(pattern.order() == 6);
    const std::vector<Vertex> verts{0, 0, 1};
    CHECK(induced_pattern(k4, verts).edge_count() == 2);
  }

  TEST_CASE("disjoint union and prefix") {
    const std::vector<LabelledGraph> parts{LabelledGraph::complete(3), LabelledGraph::path(2)};
    const LabelledGraph u = disjoint_union(parts);
    CHECK(u.order() == 5);
    CHECK(u.edge_count() == 4);
    CHECK(u.adjacent(3, 4));
    CHECK(!u.adjacent(2, 3));
    CHECK(u.prefix(3) == LabelledGraph::complete(3));
  }
}
