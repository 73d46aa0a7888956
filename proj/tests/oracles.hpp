#pragma once

// Brute-force reference implementations used only by the tests. They walk
// every map or every subset directly and share no code with the library's
// counters.

#include <cstdint>
#include <vector>

#include "graphonlab/bipartite.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rational.hpp"

namespace oracle {

using graphonlab::BigInt;
using graphonlab::BipartiteGraph;
using graphonlab::LabelledGraph;
using graphonlab::Rational;

struct Densities {
  Rational t;
  Rational t_inj;
  Rational t_ind;
};

// Calls visit(map) for every map [k] -> [n], in base-n counting order.
template <typename Visit>
void for_each_map(std::size_t k, std::size_t n, Visit visit) {
  std::vector<std::size_t> map(k, 0);
  if (k > 0 && n == 0) return;
  while (true) {
    visit(map);
    std::size_t pos = 0;
    while (pos < k && ++map[pos] == n) map[pos++] = 0;
    if (pos == k) return;
  }
}

inline bool distinct(const std::vector<std::size_t>& map) {
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (map[i] == map[j]) return false;
  return true;
}

inline BigInt falling(std::size_t n, std::size_t k) {
  BigInt out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n < i + 1) return 0;
    out *= static_cast<unsigned long>(n - i);
  }
  return out;
}

inline Densities densities(const LabelledGraph& f, const LabelledGraph& g) {
  const std::size_t k = f.order();
  const std::size_t n = g.order();
  BigInt hom = 0;
  BigInt inj = 0;
  BigInt ind = 0;
  for_each_map(k, n, [&](const std::vector<std::size_t>& map) {
    bool preserves = true;
    bool exact = true;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const bool image = map[i] != map[j] && g.adjacent(map[i], map[j]);
        if (f.adjacent(i, j) && !image) preserves = false;
        if (f.adjacent(i, j) != image) exact = false;
      }
    }
    const bool injective = distinct(map);
    if (preserves) ++hom;
    if (preserves && injective) ++inj;
    if (exact && injective) ++ind;
  });
  BigInt all = 1;
  for (std::size_t i = 0; i < k; ++i) all *= static_cast<unsigned long>(n);
  const BigInt injective_maps = falling(n, k);
  Densities out;
  out.t = all == 0 ? Rational(0) : Rational(hom, all);
  out.t_inj = injective_maps == 0 ? Rational(0) : Rational(inj, injective_maps);
  out.t_ind = injective_maps == 0 ? Rational(0) : Rational(ind, injective_maps);
  return out;
}

inline Densities bipartite_densities(const BipartiteGraph& f, const BipartiteGraph& g) {
  const std::size_t k1 = f.first_size();
  const std::size_t k2 = f.second_size();
  const std::size_t n1 = g.first_size();
  const std::size_t n2 = g.second_size();
  BigInt hom = 0;
  BigInt inj = 0;
  BigInt ind = 0;
  for_each_map(k1, n1, [&](const std::vector<std::size_t>& rows) {
    for_each_map(k2, n2, [&](const std::vector<std::size_t>& cols) {
      bool preserves = true;
      bool exact = true;
      for (std::size_t r = 0; r < k1; ++r) {
        for (std::size_t c = 0; c < k2; ++c) {
          const bool image = g.adjacent(rows[r], cols[c]);
          if (f.adjacent(r, c) && !image) preserves = false;
          if (f.adjacent(r, c) != image) exact = false;
        }
      }
      const bool injective = distinct(rows) && distinct(cols);
      if (preserves) ++hom;
      if (preserves && injective) ++inj;
      if (exact && injective) ++ind;
    });
  });
  BigInt all = 1;
  for (std::size_t i = 0; i < k1; ++i) all *= static_cast<unsigned long>(n1);
  for (std::size_t i = 0; i < k2; ++i) all *= static_cast<unsigned long>(n2);
  const BigInt injective_maps = falling(n1, k1) * falling(n2, k2);
  Densities out;
  out.t = all == 0 ? Rational(0) : Rational(hom, all);
  out.t_inj = injective_maps == 0 ? Rational(0) : Rational(inj, injective_maps);
  out.t_ind = injective_maps == 0 ? Rational(0) : Rational(ind, injective_maps);
  return out;
}

// t(F, W) as the plain sum over all block assignments of the vertices.
inline Rational block_density(const LabelledGraph& f, const graphonlab::StepGraphon& w) {
  Rational total = 0;
  for_each_map(f.order(), w.blocks(), [&](const std::vector<std::size_t>& z) {
    Rational term = 1;
    for (const auto a : z) term *= w.mu()[a];
    for (std::size_t i = 0; i < f.order(); ++i)
      for (std::size_t j = i + 1; j < f.order(); ++j)
        if (f.adjacent(i, j)) term *= w.w(z[i], z[j]);
    total += term;
  });
  return total;
}

// max over all subset pairs S, T of |sum mu_a mu_b D(a, b)|.
inline Rational cut_norm(const graphonlab::SignedStepKernel& k) {
  const std::size_t m = k.mu.size();
  Rational best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
      Rational sum = 0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if (((s >> a) & 1U) && ((t >> b) & 1U)) sum += k.mu[a] * k.mu[b] * k.d(a, b);
      if (sum < 0) sum = -sum;
      if (sum > best) best = sum;
    }
  }
  return best;
}

}  // namespace oracle
