#include <cmath>
#include <sstream>

#include "doctest.h"
#include "graphonlab/densities.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/graphon.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

StepGraphon two_block() {
  return boys_girls(Rational(1, 2), Rational(1, 5), Rational(2, 5), Rational(3, 5));
}

StepGraphon read_text(const char* text) {
  std::istringstream in(text);
  return read_step_graphon(in);
}

}  // namespace

TEST_SUITE("graphon") {
  TEST_CASE("two-block densities") {
    const StepGraphon w = two_block();
    CHECK(exact_density(LabelledGraph::path(2), w) == Rational(45, 100));
    CHECK(exact_density(LabelledGraph::complete(3), w) == oracle::block_density(LabelledGraph::complete(3), w));
    CHECK(exact_density(LabelledGraph(3), w) == 1);
  }

  TEST_CASE("constant graphon") {
    const StepGraphon w = StepGraphon::constant(Rational(1, 2));
    CHECK(exact_density(LabelledGraph::complete(3), w) == Rational(1, 8));
    CHECK(exact_induced_density(LabelledGraph::path(3), w) == Rational(1, 8));
  }

  TEST_CASE("degenerate two-block graphons collapse") {
    const StepGraphon one = boys_girls(Rational(1), Rational(1, 5), Rational(2, 5), Rational(3, 5));
    CHECK(one.blocks() == 1);
    CHECK(one.w(0, 0) == Rational(1, 5));
    const StepGraphon zero = boys_girls(Rational(0), Rational(1, 5), Rational(2, 5), Rational(3, 5));
    CHECK(zero.w(0, 0) == Rational(2, 5));
  }

  TEST_CASE("induced densities form a probability law") {
    const StepGraphon w = two_block();
    Rational total = 0;
    for (std::uint64_t mask = 0; mask < 64; ++mask) total += exact_induced_density(from_edge_mask(4, mask), w);
    CHECK(total == 1);
  }

  TEST_CASE("validation") {
    RationalMatrix asym(2, 2, Rational(1, 2));
    asym(0, 1) = Rational(1, 3);
    CHECK_THROWS_AS(StepGraphon({Rational(1, 2), Rational(1, 2)}, asym), InputError);
    CHECK_THROWS_AS(StepGraphon({Rational(1, 2), Rational(1, 3)}, RationalMatrix(2, 2)), InputError);
    CHECK_THROWS_AS(StepGraphon({Rational(1)}, RationalMatrix(1, 1, Rational(2))), InputError);
    CHECK_THROWS_AS(GeneralGraphon([](double x, double) { return x; }), InputError);
  }

  TEST_CASE("text format") {
    const StepGraphon w = read_text("2\n0.5 0.5\n0.2 0.6\n0.6 0.4\n");
    CHECK(w.w(0, 1) == Rational(3, 5));
    std::ostringstream out;
    write_step_graphon(out, w);
    std::istringstream back(out.str());
    CHECK(read_step_graphon(back) == w);
    const StepGraphon thirds = read_text("3\n0.333333333333333 0.333333333333333 0.333333333333334\n0 1 0\n1 0 1\n0 1 0\n");
    CHECK(thirds.mu()[0] + thirds.mu()[1] + thirds.mu()[2] == 1);
    CHECK_THROWS_AS(read_text("2\n0.5 0.5\n0.2 0.6\n0.5 0.4\n"), InputError);
    CHECK_THROWS_AS(read_text("2\n0.5 0.4\n0.2 0.6\n0.6 0.4\n"), InputError);
    CHECK_THROWS_AS(read_text("2\n0.5 0.5\n0.2 0.6\n"), InputError);
  }

  TEST_CASE("graph as graphon") {
    const StepGraphon w = graph_as_graphon(LabelledGraph::complete(3));
    CHECK(w.blocks() == 3);
    CHECK(exact_density(LabelledGraph::path(2), w) == Rational(2, 3));
  }

  TEST_CASE("sampler edge frequency") {
    Rng rng(4);
    const LabelledGraph g = sample_w_random(two_block(), 400, rng);
    const double density = static_cast<double>(g.edge_count()) / (400.0 * 399.0 / 2.0);
    CHECK(std::abs(density - 0.45) < 0.05);
  }

  TEST_CASE("Monte Carlo density of a general graphon") {
    const GeneralGraphon w([](double x, double y) { return x * y; });
    Rng rng(6);
    const auto est = mc_density(LabelledGraph::path(2), w, 100'000, rng);
    CHECK(std::abs(est.point - 0.25) <= est.confidence_halfwidth);
  }

  TEST_CASE("pushforwards preserve densities") {
    const StepGraphon w = two_block();
    const std::vector<std::size_t> swap{1, 0};
    const StepGraphon p = pushforward(w, BlockMap::permutation(w, swap));
    CHECK(p.w(0, 0) == w.w(1, 1));
    const StepGraphon s = pushforward(w, BlockMap::split(w, 1, Rational(1, 3)));
    CHECK(s.blocks() == 3);
    const StepGraphon grid = pushforward(w, BlockMap::equal_grid(w, 4));
    CHECK(grid.blocks() == 4);
    for (const auto& f : enumerate_unlabelled(4).list) {
      const Rational base = exact_density(f, w);
      CHECK(exact_density(f, p) == base);
      CHECK(exact_density(f, s) == base);
      CHECK(exact_density(f, grid) == base);
    }
    BlockMap bad = BlockMap::identity(w);
    bad.measure = {Rational(1, 4), Rational(3, 4)};
    CHECK_THROWS_AS(pushforward(w, bad), InputError);
  }

  TEST_CASE("cut norm known value") {
    SignedStepKernel k{{Rational(1, 2), Rational(1, 2)}, RationalMatrix(2, 2, Rational(1))};
    k.d(0, 1) = k.d(1, 0) = -1;
    CHECK(cut_norm(k) == Rational(1, 4));
    CHECK(cut_norm(k) == oracle::cut_norm(k));
  }

  TEST_CASE("cut distance") {
    const StepGraphon w = two_block();
    const StepGraphon other = boys_girls(Rational(1, 2), Rational(2, 5), Rational(1, 5), Rational(3, 5));
    CHECK(cut_distance_upper(w, other) == 0);
    const StepGraphon shifted = boys_girls(Rational(1, 2), Rational(1, 5), Rational(2, 5), Rational(1, 2));
    CHECK(cut_distance_upper(w, shifted) == oracle::cut_norm(difference(w, shifted)));
    CHECK_THROWS_AS(cut_distance_upper(w, StepGraphon::constant(Rational(1, 2))), InputError);
  }

  TEST_CASE("block sum cap") {
    RationalMatrix big(40, 40, Rational(1, 2));
    std::vector<Rational> mu(40, Rational(1, 40));
    const StepGraphon w(mu, big);
    CHECK_THROWS_AS(exact_density(LabelledGraph::complete(5), w), CapacityError);
  }

  TEST_CASE("limit embedding") {
    const auto enumeration = enumerate_unlabelled(3);
    const auto x = tau_plus(StepGraphon::constant(Rational(1, 2)), enumeration);
    CHECK(*x.inv_size == 0);
    CHECK(x.values.back() == Rational(1, 8));
  }
}
