#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Largest pattern for exact counting.
inline constexpr std::size_t kPatternCap = 8;
inline constexpr double kDefaultAlpha = 0.01;

// Maps V(F) -> V(G) counted by the exact densities. Patterns are labelled
// graphs; the counts do not depend on the labelling.
BigInt count_homomorphisms(const LabelledGraph& pattern, const LabelledGraph& host);
BigInt count_injective(const LabelledGraph& pattern, const LabelledGraph& host);
// Injective maps under which the pattern is exactly the induced subgraph.
BigInt count_induced(const LabelledGraph& pattern, const LabelledGraph& host);

// t(F,G) = hom(F,G) / v(G)^v(F).
Rational t(const LabelledGraph& pattern, const LabelledGraph& host);
// t_inj(F,G) = inj(F,G) / (v(G))_v(F); zero when v(F) > v(G).
Rational t_inj(const LabelledGraph& pattern, const LabelledGraph& host);
// t_ind(F,G) = P(F = G[k]'); zero when v(F) > v(G).
Rational t_ind(const LabelledGraph& pattern, const LabelledGraph& host);

inline Rational t(const UnlabelledGraph& f, const LabelledGraph& g) { return t(f.canon(), g); }
inline Rational t_inj(const UnlabelledGraph& f, const LabelledGraph& g) {
  return t_inj(f.canon(), g);
}
inline Rational t_ind(const UnlabelledGraph& f, const LabelledGraph& g) {
  return t_ind(f.canon(), g);
}

// Values indexed by labelled graphs on a common vertex set [k], keyed by
// edge_mask.
using LabelledTable = std::map<std::uint64_t, Rational>;

// Supergraphs of f on the same vertex set, as edge masks.
std::vector<std::uint64_t> supergraph_masks(const LabelledGraph& f);

// t_inj(F) = sum of t_ind(F') over supergraphs F' of F on [k].
Rational inj_from_ind(const LabelledGraph& f, const LabelledTable& ind_table);
// t_ind(F) = sum of (-1)^(e(F')-e(F)) t_inj(F') over supergraphs F' of F on [k].
Rational ind_from_inj(const LabelledGraph& f, const LabelledTable& inj_table);

struct SamplingBound {
  Rational gap;    // |t - t_inj|
  Rational bound;  // v(F)^2 / (2 v(G))
  bool ok = false;
};

SamplingBound sampling_bound_check(const LabelledGraph& pattern, const LabelledGraph& host);

// t of the disjoint union; throws InvariantError unless it equals the
// product of the parts' densities.
Rational disjoint_union_density(std::span<const UnlabelledGraph> parts, const LabelledGraph& host);

struct DensityEstimate {
  double point = 0.0;
  std::size_t samples = 0;
  double confidence_halfwidth = 0.0;
};

// Hoeffding half-width sqrt(ln(2/alpha) / (2 samples)) for means of [0,1] values.
double hoeffding_halfwidth(std::size_t samples, double alpha = kDefaultAlpha);

// Mean of the indicator F subset-of G[k] over independent draws.
DensityEstimate mc_t(const LabelledGraph& pattern, const LabelledGraph& host,
                     std::size_t samples, Rng& rng, double alpha = kDefaultAlpha);

struct DensityVector {
  std::size_t max_n = 0;  // identifies the enumeration
  std::vector<Rational> values;
  // 1/v(G) for the extended embedding; absent for the plain one.
  std::optional<Rational> inv_size;
};

DensityVector tau_vector(const LabelledGraph& g, const GraphEnumeration& enumeration);
DensityVector tau_plus(const LabelledGraph& g, const GraphEnumeration& enumeration);

// Sum of 2^-i |x_i - y_i| over the enumeration F_1, F_2, ...; for extended
// vectors the size coordinate is term i = 0.
Rational metric_d(const DensityVector& x, const DensityVector& y);

}  // namespace graphonlab
