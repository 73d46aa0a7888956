#include <sstream>

#include "doctest.h"
#include "graphonlab/bipartite.hpp"
#include "graphonlab/errors.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

BipartiteGraph single_edge() {
  BipartiteGraph g(1, 1);
  g.add_edge(0, 0);
  return g;
}

BipartiteGraph random_bipartite(std::size_t n1, std::size_t n2, Rng& rng) {
  BipartiteGraph g(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c)
      if (rng.below(2) == 1) g.add_edge(r, c);
  return g;
}

}  // namespace

TEST_SUITE("bipartite") {
  TEST_CASE("known values") {
    BipartiteGraph half(1, 2);
    half.add_edge(0, 0);
    CHECK(bip_t(single_edge(), half) == Rational(1, 2));
    CHECK(bip_exact_density(single_edge(), BipartiteKernel::constant(Rational(1, 2))) == Rational(1, 2));
    CHECK(bip_t(single_edge(), BipartiteGraph::complete(2, 3)) == 1);
  }

  TEST_CASE("counts agree with brute force") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const BipartiteGraph f = random_bipartite(1 + rng.below(3), 1 + rng.below(3), rng);
      const BipartiteGraph g = random_bipartite(1 + rng.below(4), 1 + rng.below(4), rng);
      const auto expect = oracle::bipartite_densities(f, g);
      CHECK(bip_t(f, g) == expect.t);
      CHECK(bip_t_inj(f, g) == expect.t_inj);
      CHECK(bip_t_ind(f, g) == expect.t_ind);
    }
  }

  TEST_CASE("graph as kernel keeps homomorphism densities") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const BipartiteGraph g = random_bipartite(1 + rng.below(4), 1 + rng.below(4), rng);
      const BipartiteGraph f = random_bipartite(1 + rng.below(3), 1 + rng.below(3), rng);
      CHECK(bip_exact_density(f, bipartite_graph_as_kernel(g)) == bip_t(f, g));
    }
  }

  TEST_CASE("induced kernel densities sum to one") {
    const BipartiteKernel w({Rational(1, 3), Rational(2, 3)}, {Rational(1)}, [] {
      RationalMatrix m(2, 1);
      m(0, 0) = Rational(1, 4);
      m(1, 0) = Rational(3, 5);
      return m;
    }());
    Rational total = 0;
    for (std::uint64_t mask = 0; mask < 16; ++mask) total += bip_exact_induced_density(from_edge_mask(2, 2, mask), w);
    CHECK(total == 1);
  }

  TEST_CASE("sampling and separate exchangeability") {
    RationalMatrix m(2, 2);
    m(0, 0) = Rational(1, 4);
    m(0, 1) = Rational(3, 4);
    m(1, 0) = Rational(3, 10);
    m(1, 1) = Rational(7, 10);
    const BipartiteKernel w({Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, m);
    Rng rng(14);
    const BipartiteGraph g = sample_bip_w_random(w, 30, 40, rng);
    CHECK(g.first_size() == 30);
    CHECK(g.second_size() == 40);
    const auto law = bip_prefix_law_empirical(BipartiteSource::kernel(w), 2, 2, 40'000, rng);
    CHECK(separate_exchangeability_test(law).consistent);
  }

  TEST_CASE("bipartite extremality") {
    std::vector<std::pair<Rational, BipartiteKernel>> parts;
    parts.emplace_back(Rational(1, 2), BipartiteKernel::constant(Rational(1, 5)));
    parts.emplace_back(Rational(1, 2), BipartiteKernel::constant(Rational(4, 5)));
    const auto src = BipartiteSource::mixture(parts);
    const std::vector<BipartitePatternPair> pairs{{{{0}, {0}, {{0, 0}}}, {{1}, {1}, {{1, 1}}}}};
    Rng rng(15);
    CHECK(!bip_extremality_test(src, pairs, 50'000, 0.01, rng).verdict.consistent);
    const auto single = BipartiteSource::kernel(BipartiteKernel::constant(Rational(1, 2)));
    CHECK(bip_extremality_test(single, pairs, 50'000, 0.001, rng).verdict.consistent);
  }

  TEST_CASE("text formats") {
    std::istringstream in("2 3 2\n1 1\n2 3\n");
    const BipartiteGraph g = read_bipartite_graph(in);
    CHECK(g.adjacent(1, 2));
    std::ostringstream out;
    write_bipartite_graph(out, g);
    CHECK(out.str() == "2 3 2\n1 1\n2 3\n");
    std::istringstream bad("2 3 1\n3 1\n");
    CHECK_THROWS_AS(read_bipartite_graph(bad), InputError);
    std::istringstream kernel("1 2\n1\n0.5 0.5\n0.1 0.9\n");
    const BipartiteKernel w = read_bipartite_kernel(kernel);
    CHECK(w.w(0, 1) == Rational(9, 10));
    CHECK(bip_exact_density(single_edge(), w) == Rational(1, 2));
  }
}
