#include "graphonlab/densities.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"

namespace graphonlab {

namespace {

enum class MapKind { kHom, kInjective, kInduced };

BigInt to_bigint(unsigned __int128 value) {
  BigInt out = static_cast<std::uint64_t>(value >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(value);
  return out;
}

void check_pattern_cap(const LabelledGraph& pattern) {
  if (pattern.order() > kPatternCap) {
    throw CapacityError("pattern has " + std::to_string(pattern.order()) +
                        " vertices; exact counting is capped at " + std::to_string(kPatternCap));
  }
}

// Pattern vertices in placement order: each next vertex has the most
// already-placed neighbours, ties broken by degree. Candidate sets shrink
// fastest this way.
std::vector<Vertex> placement_order(const LabelledGraph& f) {
  const std::size_t k = f.order();
  std::vector<Vertex> order;
  std::vector<bool> placed(k, false);
  std::vector<std::size_t> placed_neighbours(k, 0);
  for (std::size_t step = 0; step < k; ++step) {
    Vertex pick = k;
    for (Vertex v = 0; v < k; ++v) {
      if (placed[v]) continue;
      if (pick == k || placed_neighbours[v] > placed_neighbours[pick] ||
          (placed_neighbours[v] == placed_neighbours[pick] && f.degree(v) > f.degree(pick))) {
        pick = v;
      }
    }
    placed[pick] = true;
    order.push_back(pick);
    for (Vertex v = 0; v < k; ++v)
      if (f.adjacent(pick, v)) ++placed_neighbours[v];
  }
  return order;
}

// Backtracking over pattern vertices with bit-row candidate sets.
class MapCounter {
 public:
  MapCounter(const LabelledGraph& f, const LabelledGraph& g, MapKind kind)
      : f_(f), g_(g), kind_(kind), order_(placement_order(f)), words_(g.words_per_row()) {
    image_.assign(f.order(), 0);
    scratch_.assign((f.order() + 1) * words_, 0);
    used_.assign(words_, 0);
    all_.assign(words_, ~std::uint64_t{0});
    if (g.order() % 64 != 0 && words_ > 0) all_.back() = (std::uint64_t{1} << (g.order() % 64)) - 1;
  }

  BigInt run() {
    if (f_.order() == 0) return 1;
    if (g_.order() == 0) return 0;
    unsigned __int128 total = 0;
    descend(0, total);
    return to_bigint(total);
  }

 private:
  void descend(std::size_t depth, unsigned __int128& total) {
    const Vertex u = order_[depth];
    std::uint64_t* cand = scratch_.data() + depth * words_;
    std::copy(all_.begin(), all_.end(), cand);
    for (std::size_t d = 0; d < depth; ++d) {
      const Vertex w = order_[d];
      const auto row = g_.row(image_[w]);
      if (f_.adjacent(u, w)) {
        for (std::size_t i = 0; i < words_; ++i) cand[i] &= row[i];
      } else if (kind_ == MapKind::kInduced) {
        for (std::size_t i = 0; i < words_; ++i) cand[i] &= ~row[i];
      }
    }
    if (kind_ != MapKind::kHom) {
      for (std::size_t i = 0; i < words_; ++i) cand[i] &= ~used_[i];
    }
    if (depth + 1 == order_.size()) {
      for (std::size_t i = 0; i < words_; ++i) total += static_cast<unsigned>(std::popcount(cand[i]));
      return;
    }
    for (std::size_t i = 0; i < words_; ++i) {
      for (std::uint64_t bits = cand[i]; bits != 0; bits &= bits - 1) {
        const Vertex v = i * 64 + static_cast<Vertex>(std::countr_zero(bits));
        image_[u] = v;
        used_[i] |= std::uint64_t{1} << (v % 64);
        descend(depth + 1, total);
        used_[i] &= ~(std::uint64_t{1} << (v % 64));
      }
    }
  }

  const LabelledGraph& f_;
  const LabelledGraph& g_;
  MapKind kind_;
  std::vector<Vertex> order_;
  std::size_t words_;
  std::vector<Vertex> image_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> all_;
};

BigInt count_maps(const LabelledGraph& f, const LabelledGraph& g, MapKind kind) {
  check_pattern_cap(f);
  return MapCounter(f, g, kind).run();
}

Rational ratio(const BigInt& count, const BigInt& total) {
  if (total == 0) return 0;
  return Rational(count, total);
}

BigInt power(std::size_t base, std::size_t exponent) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= static_cast<unsigned long>(base);
  return out;
}

}  // namespace

BigInt count_homomorphisms(const LabelledGraph& pattern, const LabelledGraph& host) {
  return count_maps(pattern, host, MapKind::kHom);
}

BigInt count_injective(const LabelledGraph& pattern, const LabelledGraph& host) {
  if (pattern.order() > host.order()) {
    check_pattern_cap(pattern);
    return 0;
  }
  return count_maps(pattern, host, MapKind::kInjective);
}

BigInt count_induced(const LabelledGraph& pattern, const LabelledGraph& host) {
  if (pattern.order() > host.order()) {
    check_pattern_cap(pattern);
    return 0;
  }
  return count_maps(pattern, host, MapKind::kInduced);
}

Rational t(const LabelledGraph& pattern, const LabelledGraph& host) {
  return ratio(count_homomorphisms(pattern, host), power(host.order(), pattern.order()));
}

Rational t_inj(const LabelledGraph& pattern, const LabelledGraph& host) {
  return ratio(count_injective(pattern, host), falling_factorial(host.order(), pattern.order()));
}

Rational t_ind(const LabelledGraph& pattern, const LabelledGraph& host) {
  return ratio(count_induced(pattern, host), falling_factorial(host.order(), pattern.order()));
}

std::vector<std::uint64_t> supergraph_masks(const LabelledGraph& f) {
  const std::size_t pairs = pair_count(f.order());
  const std::uint64_t base = edge_mask(f);
  const std::uint64_t full = pairs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pairs) - 1;
  const std::uint64_t free = full & ~base;
  if (std::popcount(free) > 24) throw CapacityError("too many supergraphs to enumerate");
  std::vector<std::uint64_t> out;
  // Walk all submasks of the free pairs.
  std::uint64_t sub = free;
  while (true) {
    out.push_back(base | sub);
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return out;
}

namespace {

const Rational& lookup(const LabelledTable& table, std::uint64_t mask) {
  const auto it = table.find(mask);
  if (it == table.end()) {
    throw InputError("table has no entry for supergraph with edge mask " + std::to_string(mask));
  }
  return it->second;
}

}  // namespace

Rational inj_from_ind(const LabelledGraph& f, const LabelledTable& ind_table) {
  Rational sum = 0;
  for (const auto mask : supergraph_masks(f)) sum += lookup(ind_table, mask);
  return sum;
}

Rational ind_from_inj(const LabelledGraph& f, const LabelledTable& inj_table) {
  const int base_edges = std::popcount(edge_mask(f));
  Rational sum = 0;
  for (const auto mask : supergraph_masks(f)) {
    const Rational& value = lookup(inj_table, mask);
    if ((std::popcount(mask) - base_edges) % 2 == 0) {
      sum += value;
    } else {
      sum -= value;
    }
  }
  return sum;
}

SamplingBound sampling_bound_check(const LabelledGraph& pattern, const LabelledGraph& host) {
  SamplingBound out;
  out.gap = abs(t(pattern, host) - t_inj(pattern, host));
  const auto k = static_cast<long>(pattern.order());
  out.bound = Rational(k * k, 2 * static_cast<long>(host.order()));
  out.ok = out.gap <= out.bound;
  return out;
}

Rational disjoint_union_density(std::span<const UnlabelledGraph> parts, const LabelledGraph& host) {
  std::vector<LabelledGraph> graphs;
  graphs.reserve(parts.size());
  Rational product = 1;
  for (const auto& part : parts) {
    graphs.push_back(part.canon());
    product *= t(part.canon(), host);
  }
  const Rational joint = t(disjoint_union(graphs), host);
  if (joint != product) {
    throw InvariantError("density of a disjoint union differs from the product of its parts");
  }
  return joint;
}

double hoeffding_halfwidth(std::size_t samples, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

DensityEstimate mc_t(const LabelledGraph& pattern, const LabelledGraph& host,
                     std::size_t samples, Rng& rng, double alpha) {
  if (samples == 0) throw InputError("Monte Carlo needs at least one sample");
  if (host.order() == 0) throw InputError("host graph has no vertices");
  const auto edges = pattern.edges();
  const std::size_t k = pattern.order();
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::size_t> hits(chunks, 0);
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    std::vector<Vertex> verts(k);
    std::size_t count = 0;
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& v : verts) v = local.below(host.order());
      bool contained = true;
      for (const auto& [i, j] : edges) {
        if (verts[i] == verts[j] || !host.adjacent(verts[i], verts[j])) {
          contained = false;
          break;
        }
      }
      count += contained ? 1 : 0;
    }
    hits[c] = count;
  });
  std::size_t total = 0;
  for (const auto h : hits) total += h;
  return {static_cast<double>(total) / static_cast<double>(samples), samples,
          hoeffding_halfwidth(samples, alpha)};
}

DensityVector tau_vector(const LabelledGraph& g, const GraphEnumeration& enumeration) {
  DensityVector out;
  out.max_n = enumeration.max_n;
  out.values.reserve(enumeration.list.size());
  for (const auto& f : enumeration.list) out.values.push_back(t(f, g));
  return out;
}

DensityVector tau_plus(const LabelledGraph& g, const GraphEnumeration& enumeration) {
  DensityVector out = tau_vector(g, enumeration);
  out.inv_size = Rational(1, static_cast<long>(g.order()));
  return out;
}

Rational metric_d(const DensityVector& x, const DensityVector& y) {
  if (x.max_n != y.max_n || x.values.size() != y.values.size()) {
    throw InputError("density vectors use different enumerations");
  }
  if (x.inv_size.has_value() != y.inv_size.has_value()) {
    throw InputError("cannot compare plain and extended density vectors");
  }
  Rational sum = 0;
  if (x.inv_size) sum += abs(*x.inv_size - *y.inv_size);
  Rational weight = 1;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    weight /= 2;
    sum += weight * abs(x.values[i] - y.values[i]);
  }
  return sum;
}

}  // namespace graphonlab
