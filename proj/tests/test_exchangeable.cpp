#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "graphonlab/densities.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/exchangeable.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

StepGraphon two_block() {
  return boys_girls(Rational(1, 2), Rational(1, 5), Rational(2, 5), Rational(3, 5));
}

}  // namespace

TEST_SUITE("exchangeable") {
  TEST_CASE("exact prefix law is a probability law") {
    const PrefixLaw law = prefix_law_exact(two_block(), 3);
    CHECK(law.probs.size() == 8);
    Rational total = 0;
    for (const auto& [mask, p] : law.probs) total += p;
    CHECK(total == 1);
    CHECK(law.probs.at(edge_mask(LabelledGraph::complete(3))) ==
          exact_density(LabelledGraph::complete(3), two_block()));
  }

  TEST_CASE("exact laws of graphons are exchangeable") {
    const Verdict v = exchangeability_test(prefix_law_exact(two_block(), 4));
    CHECK(v.consistent);
    CHECK(v.p_min == 1.0);
  }

  TEST_CASE("a non-exchangeable exact law is rejected") {
    PrefixLaw law = prefix_law_exact(StepGraphon::constant(Rational(1, 2)), 3);
    law.probs[1] += Rational(1, 16);
    law.probs[2] -= Rational(1, 16);
    CHECK(!exchangeability_test(law).consistent);
  }

  TEST_CASE("empirical law of an exchangeable source is consistent") {
    Rng rng(1);
    const auto law = prefix_law_empirical(GraphSource::w_random(two_block()), 3, 60'000, rng);
    CHECK(law.total == 60'000);
    CHECK(exchangeability_test(law).consistent);
    const double tv = total_variation(law, prefix_law_exact(two_block(), 3));
    CHECK(tv < 0.02);
  }

  TEST_CASE("a source favouring one labelled edge is rejected") {
    const GraphSource biased = GraphSource::external([](std::size_t n, Rng& rng) {
      LabelledGraph g(n);
      if (n >= 2 && rng.bernoulli(0.7)) g.add_edge(0, 1);
      if (n >= 3 && rng.bernoulli(0.3)) g.add_edge(1, 2);
      return g;
    });
    Rng rng(2);
    CHECK(!exchangeability_test(prefix_law_empirical(biased, 3, 20'000, rng)).consistent);
  }

  TEST_CASE("isomorphism classes partition the labelled graphs") {
    const auto classes = isomorphism_classes(4);
    CHECK(classes.size() == 11);
    std::size_t total = 0;
    for (const auto& c : classes) total += c.size();
    CHECK(total == 64);
  }

  TEST_CASE("correspondence between prefix law and densities") {
    const auto list = enumerate_unlabelled(3).list;
    for (const auto& f : list) {
      if (f.order() != 3) continue;
      const auto c = correspondence_check(two_block(), f, 3);
      CHECK(c.gap == 0);
      CHECK(c.lhs == oracle::block_density(f.canon(), two_block()));
    }
  }

  TEST_CASE("mixture moments") {
    std::vector<std::pair<Rational, StepGraphon>> parts;
    parts.emplace_back(Rational(1, 2), StepGraphon::constant(Rational(1, 5)));
    parts.emplace_back(Rational(1, 2), StepGraphon::constant(Rational(4, 5)));
    const GraphSource src = GraphSource::mixture(parts);
    PlacedPattern a{{0, 1}, {{0, 1}}};
    PlacedPattern b{{2, 3}, {{2, 3}}};
    const std::vector<PatternPair> pairs{{a, b}};
    Rng rng(3);
    const auto report = extremality_test(src, pairs, 100'000, 0.01, rng);
    CHECK(report.pairs.front().p_both == doctest::Approx(0.34).epsilon(0.02));
    CHECK(report.pairs.front().p_first == doctest::Approx(0.5).epsilon(0.02));
    CHECK(!report.verdict.consistent);
    const std::vector<PatternPair> overlapping{{a, a}};
    CHECK_THROWS_AS(extremality_test(src, overlapping, 10, 0.01, rng), InputError);
  }

  TEST_CASE("pattern pair file") {
    std::istringstream in("# comment\n1,2:1-2 | 3,4,5:3-4,4-5\n");
    const auto pairs = read_pattern_pairs(in);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first.vertices == std::vector<Vertex>{0, 1});
    CHECK(pairs[0].second.edges.size() == 2);
    std::istringstream bad("1,2:1-3 | 3:\n");
    CHECK_THROWS_AS(read_pattern_pairs(bad), InputError);
  }

  TEST_CASE("source file") {
    const auto dir = std::filesystem::temp_directory_path() / "graphonlab_source_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "w.txt") << "1\n1\n0.3\n";
    std::istringstream mix("mixture\n0.5 w.txt\n0.5 constant:0.9\n");
    const GraphSource src = read_graph_source(mix, dir);
    Rng rng(4);
    CHECK(src.sample_prefix(5, rng).order() == 5);
    std::istringstream single("w-random w.txt\n");
    CHECK_NOTHROW(read_graph_source(single, dir));
    std::istringstream bad("mixture\n0.5 w.txt\n");
    CHECK_THROWS_AS(read_graph_source(bad, dir), InputError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("martingale trace") {
    const GraphSource full = GraphSource::w_random(StepGraphon::constant(Rational(1)));
    const std::vector<std::size_t> grid{5, 10, 20};
    Rng rng(5);
    for (const auto& value : martingale_trace(full, LabelledGraph::path(2), grid, rng)) CHECK(value == 1);
    const std::vector<std::size_t> decreasing{10, 5};
    CHECK_THROWS_AS(martingale_trace(full, LabelledGraph::path(2), decreasing, rng), InputError);
    const GraphSource half = GraphSource::w_random(StepGraphon::constant(Rational(1, 2)));
    const std::vector<std::size_t> large{400};
    const auto trace = martingale_trace(half, LabelledGraph::path(2), large, rng);
    // Edge density of G(400, 1/2) has standard deviation below 0.002.
    CHECK(std::abs(to_double(trace[0]) - 0.5) < 0.006);
  }
}
