#include <cmath>
#include <sstream>

#include "doctest.h"
#include "graphonlab/directed.hpp"
#include "graphonlab/errors.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

DirectedGraph arcs(std::size_t n, std::initializer_list<Edge> list) {
  DirectedGraph g(n);
  for (const auto& [u, v] : list) g.add_arc(u, v);
  return g;
}

DirectedGraph random_digraph(std::size_t n, Rng& rng) {
  DirectedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(3) == 0) g.add_arc(u, v);
  return g;
}

// Brute-force finite densities: maps preserving arcs and loops.
oracle::Densities brute(const DirectedGraph& f, const DirectedGraph& g) {
  BigInt hom = 0, inj = 0, ind = 0;
  oracle::for_each_map(f.order(), g.order(), [&](const std::vector<std::size_t>& map) {
    bool preserves = true;
    bool exact = true;
    for (Vertex u = 0; u < f.order(); ++u) {
      for (Vertex v = 0; v < f.order(); ++v) {
        const bool image = g.has_arc(map[u], map[v]);
        if (f.has_arc(u, v) && !image) preserves = false;
        if (f.has_arc(u, v) != image) exact = false;
      }
    }
    const bool injective = oracle::distinct(map);
    if (preserves) ++hom;
    if (preserves && injective) ++inj;
    if (exact && injective) ++ind;
  });
  BigInt all = 1;
  for (std::size_t i = 0; i < f.order(); ++i) all *= static_cast<unsigned long>(g.order());
  const BigInt falling = oracle::falling(g.order(), f.order());
  return {Rational(hom, all), falling == 0 ? Rational(0) : Rational(inj, falling),
          falling == 0 ? Rational(0) : Rational(ind, falling)};
}

// P(G(k, K) = F) by summing over block assignments with the joint law of
// each pair written out directly.
Rational brute_kernel_ind(const DirectedGraph& f, const DirectedKernelQuintuple& k) {
  Rational total = 0;
  oracle::for_each_map(f.order(), k.mu.size(), [&](const std::vector<std::size_t>& z) {
    Rational term = 1;
    for (Vertex i = 0; i < f.order(); ++i) {
      term *= k.mu[z[i]];
      if (f.has_loop(i) != (k.loop[z[i]] == 1)) term = 0;
      for (Vertex j = i + 1; j < f.order(); ++j) {
        const int forward = f.has_arc(i, j) ? 1 : 0;
        const int backward = f.has_arc(j, i) ? 1 : 0;
        term *= k.joint[2 * forward + backward](z[i], z[j]);
      }
    }
    total += term;
  });
  return total;
}

DirectedKernelQuintuple two_block_kernel() {
  DirectedKernelQuintuple k;
  k.mu = {Rational(1, 3), Rational(2, 3)};
  // Joint law of (X_ij, X_ji) for blocks (a, b); W_ab(x,y) = W_ba(y,x).
  const Rational w00[2][2] = {{Rational(1, 2), Rational(1, 5)}, {Rational(1, 5), Rational(1, 10)}};
  const Rational w01[2][2] = {{Rational(1, 4), Rational(1, 2)}, {Rational(1, 10), Rational(3, 10)}};
  const Rational w11[2][2] = {{0, Rational(1, 5)}, {Rational(1, 5), Rational(3, 10)}};
  for (auto& m : k.joint) m = RationalMatrix(2, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      k.joint[0](a, b) = w00[a][b];
      k.joint[1](a, b) = w01[a][b];
      k.joint[2](a, b) = w01[b][a];
      k.joint[3](a, b) = w11[a][b];
    }
  }
  k.loop = {1, 0};
  return k;
}

}  // namespace

TEST_SUITE("directed") {
  TEST_CASE("tournament values") {
    const auto k = tournament_kernel();
    CHECK(validate_quintuple(k).valid);
    CHECK(directed_t(arcs(3, {{0, 1}, {1, 2}, {2, 0}}), k) == Rational(1, 8));
    CHECK(directed_t(arcs(2, {{0, 1}}), k) == Rational(1, 2));
    CHECK(directed_t(arcs(2, {{0, 1}, {1, 0}}), k) == 0);
    CHECK(directed_t(arcs(1, {{0, 0}}), k) == 0);
  }

  TEST_CASE("validation examples") {
    DirectedKernelQuintuple empty;
    empty.mu = {Rational(1)};
    for (auto& m : empty.joint) m = RationalMatrix(1, 1, Rational(0));
    empty.joint[0](0, 0) = 1;
    empty.loop = {0};
    CHECK(validate_quintuple(empty).valid);
    DirectedKernelQuintuple one_way = empty;
    one_way.joint[0](0, 0) = 0;
    one_way.joint[1](0, 0) = 1;
    const auto check = validate_quintuple(one_way);
    CHECK(!check.valid);
    CHECK(check.detail.find("W01") != std::string::npos);
    DirectedKernelQuintuple bad_sum = empty;
    bad_sum.joint[3](0, 0) = Rational(1, 2);
    CHECK(!validate_quintuple(bad_sum).valid);
    CHECK(validate_quintuple(two_block_kernel()).valid);
  }

  TEST_CASE("finite densities agree with brute force") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const DirectedGraph f = random_digraph(1 + rng.below(3), rng);
      const DirectedGraph g = random_digraph(1 + rng.below(5), rng);
      const auto expect = brute(f, g);
      CHECK(directed_t(f, g) == expect.t);
      CHECK(directed_t_inj(f, g) == expect.t_inj);
      CHECK(directed_t_ind(f, g) == expect.t_ind);
    }
  }

  TEST_CASE("kernel densities agree with the direct block sum") {
    const auto k = two_block_kernel();
    Rational total = 0;
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      const DirectedGraph f = from_arc_mask(3, mask);
      const Rational p = directed_t_ind(f, k);
      CHECK(p == brute_kernel_ind(f, k));
      total += p;
    }
    CHECK(total == 1);
    // Containment is the sum of equality over supersets of the arcs.
    const DirectedGraph path = arcs(3, {{0, 1}, {1, 2}});
    Rational contains = 0;
    for (std::uint64_t mask = 0; mask < 512; ++mask)
      if ((mask & arc_mask(path)) == arc_mask(path)) contains += directed_t_ind(from_arc_mask(3, mask), k);
    CHECK(directed_t(path, k) == contains);
  }

  TEST_CASE("sampler frequencies match kernel densities") {
    const auto k = two_block_kernel();
    Rng rng(22);
    const DirectedGraph f = arcs(2, {{0, 1}});
    const std::size_t trials = 60'000;
    std::size_t hits = 0;
    for (std::size_t s = 0; s < trials; ++s) hits += sample_directed(k, 2, rng).has_arc(0, 1);
    const double p = to_double(directed_t(f, k));
    const double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(static_cast<double>(hits) / trials - p) < 4 * sigma);
  }

  TEST_CASE("loops follow w or the Bernoulli parameter") {
    Rng rng(23);
    const auto loops = loop_sequence_law(two_block_kernel(), 3000, rng);
    std::size_t on = 0;
    for (const auto x : loops) on += x;
    CHECK(std::abs(on / 3000.0 - 1.0 / 3.0) < 0.04);
    DirectedKernelQuadruplePlusP qp;
    qp.mu = {Rational(1)};
    for (auto& m : qp.joint) m = RationalMatrix(2, 2, Rational(1, 4));
    qp.p = Rational(1, 5);
    CHECK(validate_quadruple(qp).valid);
    const auto qloops = loop_sequence_law(qp, 5000, rng);
    on = 0;
    for (const auto x : qloops) on += x;
    CHECK(std::abs(on / 5000.0 - 0.2) < 0.025);
    CHECK(directed_t(arcs(1, {{0, 0}}), qp) == Rational(1, 5));
    CHECK(directed_t_ind(arcs(2, {{0, 1}}), qp) == Rational(1, 4) * Rational(4, 5) * Rational(4, 5));
  }

  TEST_CASE("canonical codes") {
    Rng rng(24);
    for (int trial = 0; trial < 50; ++trial) {
      const DirectedGraph g = random_digraph(1 + rng.below(6), rng);
      std::vector<Vertex> perm(g.order());
      for (Vertex v = 0; v < g.order(); ++v) perm[v] = v;
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      CHECK(directed_canonical_code(g) == directed_canonical_code(g.relabelled(perm)));
    }
    CHECK(directed_canonical_code(arcs(2, {{0, 1}})) == directed_canonical_code(arcs(2, {{1, 0}})));
    CHECK(directed_canonical_code(arcs(2, {{0, 1}})) != directed_canonical_code(arcs(2, {{0, 1}, {1, 0}})));
  }

  TEST_CASE("exchangeability and extremality") {
    Rng rng(25);
    const auto src = DirectedSource::kernel(two_block_kernel());
    CHECK(directed_exchangeability_test(directed_prefix_law_empirical(src, 3, 40'000, rng)).consistent);
    std::vector<std::pair<Rational, DirectedSource::Kernel>> parts;
    DirectedKernelQuintuple sparse = tournament_kernel();
    sparse.joint[0](0, 0) = Rational(4, 5);
    sparse.joint[1](0, 0) = sparse.joint[2](0, 0) = Rational(1, 10);
    DirectedKernelQuintuple dense = tournament_kernel();
    dense.joint[0](0, 0) = Rational(1, 10);
    dense.joint[1](0, 0) = dense.joint[2](0, 0) = Rational(1, 10);
    dense.joint[3](0, 0) = Rational(7, 10);
    parts.emplace_back(Rational(1, 2), sparse);
    parts.emplace_back(Rational(1, 2), dense);
    const auto mixture = DirectedSource::mixture(parts);
    const std::vector<PatternPair> pairs{{{{0, 1}, {{0, 1}}}, {{2, 3}, {{2, 3}}}}};
    CHECK(!directed_extremality_test(mixture, pairs, 50'000, 0.01, rng).verdict.consistent);
    CHECK(directed_extremality_test(src, pairs, 50'000, 0.001, rng).verdict.consistent);
  }

  TEST_CASE("text formats") {
    std::istringstream in("3 3\n1 2\n2 1\n3 3\n");
    const DirectedGraph g = read_directed_graph(in);
    CHECK(g.has_loop(2));
    CHECK(g.arc_count() == 3);
    CHECK(g.loop_count() == 1);
    std::ostringstream out;
    write_directed_graph(out, g);
    CHECK(out.str() == "3 3\n1 2\n2 1\n3 3\n");
    std::ostringstream kout;
    write_quintuple(kout, two_block_kernel());
    std::istringstream kin(kout.str());
    const auto back = read_quintuple(kin);
    CHECK(back.joint == two_block_kernel().joint);
    CHECK(back.loop == two_block_kernel().loop);
    std::istringstream bad("1\n1\nW00\n0\nW01\n1\nW10\n0\nW11\n0\n0\n");
    CHECK_THROWS_AS(read_quintuple(bad), InputError);
  }
}
