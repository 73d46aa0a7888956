#include "graphonlab/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"
#include "text_io.hpp"

namespace graphonlab {

StepGraphon::StepGraphon(std::vector<Rational> mu, RationalMatrix w)
    : mu_(std::move(mu)), w_(std::move(w)) {
  const std::size_t m = mu_.size();
  if (m == 0) throw InputError("step graphon needs at least one block");
  if (w_.rows() != m || w_.cols() != m) throw InputError("kernel matrix must be m x m");
  Rational total = 0;
  for (const auto& x : mu_) {
    if (x <= 0) throw InputError("block measures must be positive");
    total += x;
  }
  if (total != 1) throw InputError("block measures must sum to 1, got " + format_exact(total));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (w_(a, b) < 0 || w_(a, b) > 1) throw InputError("kernel entries must lie in [0,1]");
      if (w_(a, b) != w_(b, a)) {
        throw InputError("kernel is not symmetric at blocks " + std::to_string(a + 1) + "," +
                         std::to_string(b + 1));
      }
    }
  }
  cumulative_.resize(m);
  Rational running = 0;
  for (std::size_t a = 0; a < m; ++a) {
    running += mu_[a];
    cumulative_[a] = to_double(running);
  }
  cumulative_.back() = 1.0;
  w_double_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) w_double_[a * m + b] = to_double(w_(a, b));
}

StepGraphon StepGraphon::constant(const Rational& p) {
  return StepGraphon({Rational(1)}, RationalMatrix(1, 1, p));
}

GeneralGraphon::GeneralGraphon(Kernel kernel, std::size_t grid) : kernel_(std::move(kernel)) {
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
      const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
      const double a = kernel_(x, y);
      const double b = kernel_(y, x);
      if (a != b) throw InputError("kernel is not symmetric");
      if (!(a >= 0.0 && a <= 1.0)) throw InputError("kernel values must lie in [0,1]");
    }
  }
}

LabelledGraph sample_w_random(const StepGraphon& w, std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("graph size must be positive");
  std::vector<std::size_t> label(n);
  for (auto& z : label) z = rng.categorical(w.cumulative_mu());
  LabelledGraph g(n);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if (rng.bernoulli(w.w_double(label[i], label[j]))) g.add_edge(i, j);
  return g;
}

LabelledGraph sample_w_random(const GeneralGraphon& w, std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("graph size must be positive");
  std::vector<double> x(n);
  for (auto& xi : x) xi = rng.uniform();
  LabelledGraph g(n);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if (rng.bernoulli(w(x[i], x[j]))) g.add_edge(i, j);
  return g;
}

StepGraphon boys_girls(const Rational& theta, const Rational& p, const Rational& p_prime,
                       const Rational& p_dblprime) {
  for (const auto* x : {&theta, &p, &p_prime, &p_dblprime}) {
    if (*x < 0 || *x > 1) throw InputError("boys/girls parameters must lie in [0,1]");
  }
  if (theta == 1) return StepGraphon::constant(p);
  if (theta == 0) return StepGraphon::constant(p_prime);
  RationalMatrix w(2, 2);
  w(0, 0) = p;
  w(1, 1) = p_prime;
  w(0, 1) = p_dblprime;
  w(1, 0) = p_dblprime;
  return StepGraphon({theta, Rational(1) - theta}, std::move(w));
}

StepGraphon graph_as_graphon(const LabelledGraph& g) {
  const std::size_t n = g.order();
  if (n == 0) throw InputError("graph has no vertices");
  RationalMatrix w(n, n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && g.adjacent(u, v)) w(u, v) = 1;
  return StepGraphon(std::vector<Rational>(n, Rational(1, static_cast<long>(n))), std::move(w));
}

namespace {

void check_block_sum_cap(std::size_t blocks, std::size_t k) {
  std::uint64_t terms = 1;
  for (std::size_t i = 0; i < k; ++i) {
    terms *= blocks;
    if (terms > kBlockSumCap) {
      throw CapacityError("block sum has more than " + std::to_string(kBlockSumCap) + " terms");
    }
  }
}

// Vertex order in which each vertex is preceded by as many neighbours as
// possible, so zero factors prune early.
std::vector<Vertex> connected_order(const LabelledGraph& f) {
  const std::size_t k = f.order();
  std::vector<Vertex> order;
  std::vector<bool> placed(k, false);
  std::vector<std::size_t> seen(k, 0);
  for (std::size_t step = 0; step < k; ++step) {
    Vertex pick = k;
    for (Vertex v = 0; v < k; ++v) {
      if (!placed[v] && (pick == k || seen[v] > seen[pick])) pick = v;
    }
    placed[pick] = true;
    order.push_back(pick);
    for (Vertex v = 0; v < k; ++v)
      if (f.adjacent(pick, v)) ++seen[v];
  }
  return order;
}

class BlockSum {
 public:
  BlockSum(const LabelledGraph& f, const StepGraphon& w, bool induced)
      : f_(f), w_(w), induced_(induced), order_(connected_order(f)), block_(f.order(), 0) {}

  Rational run() {
    if (f_.order() == 0) return 1;
    Rational total = 0;
    descend(0, Rational(1), total);
    return total;
  }

 private:
  void descend(std::size_t depth, const Rational& partial, Rational& total) {
    if (depth == order_.size()) {
      total += partial;
      return;
    }
    const Vertex u = order_[depth];
    for (std::size_t a = 0; a < w_.blocks(); ++a) {
      Rational factor = partial * w_.mu()[a];
      for (std::size_t d = 0; d < depth && factor != 0; ++d) {
        const Vertex v = order_[d];
        if (f_.adjacent(u, v)) {
          factor *= w_.w(block_[v], a);
        } else if (induced_) {
          factor *= Rational(1) - w_.w(block_[v], a);
        }
      }
      if (factor == 0) continue;
      block_[u] = a;
      descend(depth + 1, factor, total);
    }
  }

  const LabelledGraph& f_;
  const StepGraphon& w_;
  bool induced_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> block_;
};

}  // namespace

Rational exact_density(const LabelledGraph& pattern, const StepGraphon& w) {
  if (pattern.order() > kPatternCap) {
    throw CapacityError("pattern exceeds the cap of " + std::to_string(kPatternCap) + " vertices");
  }
  check_block_sum_cap(w.blocks(), pattern.order());
  return BlockSum(pattern, w, false).run();
}

Rational exact_induced_density(const LabelledGraph& pattern, const StepGraphon& w) {
  if (pattern.order() > kPatternCap) {
    throw CapacityError("pattern exceeds the cap of " + std::to_string(kPatternCap) + " vertices");
  }
  check_block_sum_cap(w.blocks(), pattern.order());
  return BlockSum(pattern, w, true).run();
}

DensityEstimate mc_density(const LabelledGraph& pattern, const GeneralGraphon& w,
                           std::size_t samples, Rng& rng, double alpha) {
  if (samples == 0) throw InputError("Monte Carlo needs at least one sample");
  const auto edges = pattern.edges();
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<double> sums(chunks, 0.0);
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    std::vector<double> x(pattern.order());
    double sum = 0.0;
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& xi : x) xi = local.uniform();
      double product = 1.0;
      for (const auto& [i, j] : edges) product *= w(x[i], x[j]);
      sum += product;
    }
    sums[c] = sum;
  });
  const double total = std::accumulate(sums.begin(), sums.end(), 0.0);
  return {total / static_cast<double>(samples), samples, hoeffding_halfwidth(samples, alpha)};
}

DensityVector tau_plus(const StepGraphon& w, const GraphEnumeration& enumeration) {
  DensityVector out;
  out.max_n = enumeration.max_n;
  for (const auto& f : enumeration.list) out.values.push_back(exact_density(f, w));
  out.inv_size = Rational(0);
  return out;
}

BlockMap BlockMap::identity(const StepGraphon& w) {
  BlockMap map;
  map.measure = w.mu();
  map.source.resize(w.blocks());
  std::iota(map.source.begin(), map.source.end(), std::size_t{0});
  return map;
}

BlockMap BlockMap::permutation(const StepGraphon& w, std::span<const std::size_t> order) {
  if (order.size() != w.blocks()) throw InputError("permutation has wrong length");
  BlockMap map;
  for (const auto src : order) {
    if (src >= w.blocks()) throw InputError("permutation entry out of range");
    map.source.push_back(src);
    map.measure.push_back(w.mu()[src]);
  }
  return map;
}

BlockMap BlockMap::split(const StepGraphon& w, std::size_t block, const Rational& fraction) {
  if (block >= w.blocks()) throw InputError("split block out of range");
  if (fraction <= 0 || fraction >= 1) throw InputError("split fraction must lie in (0,1)");
  BlockMap map = identity(w);
  map.measure[block] = w.mu()[block] * fraction;
  map.source.insert(map.source.begin() + static_cast<std::ptrdiff_t>(block) + 1, block);
  map.measure.insert(map.measure.begin() + static_cast<std::ptrdiff_t>(block) + 1,
                     w.mu()[block] * (Rational(1) - fraction));
  return map;
}

BlockMap BlockMap::equal_grid(const StepGraphon& w, std::size_t cells) {
  if (cells == 0) throw InputError("grid needs at least one cell");
  BlockMap map;
  const Rational cell(1, static_cast<long>(cells));
  for (std::size_t a = 0; a < w.blocks(); ++a) {
    const Rational count = w.mu()[a] * static_cast<long>(cells);
    if (boost::multiprecision::denominator(count) != 1) {
      throw InputError("block measure is not a multiple of the grid cell");
    }
    const auto pieces = boost::multiprecision::numerator(count).convert_to<std::size_t>();
    for (std::size_t i = 0; i < pieces; ++i) {
      map.source.push_back(a);
      map.measure.push_back(cell);
    }
  }
  return map;
}

StepGraphon pushforward(const StepGraphon& w, const BlockMap& map) {
  if (map.source.size() != map.measure.size() || map.source.empty()) {
    throw InputError("block map needs one source and one measure per target block");
  }
  std::vector<Rational> covered(w.blocks(), Rational(0));
  for (std::size_t j = 0; j < map.source.size(); ++j) {
    if (map.source[j] >= w.blocks()) throw InputError("block map source out of range");
    if (map.measure[j] <= 0) throw InputError("block map measures must be positive");
    covered[map.source[j]] += map.measure[j];
  }
  for (std::size_t a = 0; a < w.blocks(); ++a) {
    if (covered[a] != w.mu()[a]) {
      throw InputError("block map is not measure preserving at source block " +
                       std::to_string(a + 1));
    }
  }
  const std::size_t m = map.source.size();
  RationalMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = w.w(map.source[i], map.source[j]);
  return StepGraphon(map.measure, std::move(out));
}

SignedStepKernel difference(const StepGraphon& a, const StepGraphon& b) {
  if (a.mu() != b.mu()) throw InputError("kernels have different block measures");
  const std::size_t m = a.blocks();
  SignedStepKernel out{a.mu(), RationalMatrix(m, m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.d(i, j) = a.w(i, j) - b.w(i, j);
  return out;
}

namespace {

// Generic cut norm over S in {0,1}^m. For fixed S the best T takes every
// column whose weighted row sum has the sign being maximised.
template <class T>
T cut_norm_impl(const std::vector<T>& mu, const std::vector<T>& d, std::size_t m) {
  std::vector<T> weighted(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) weighted[a * m + b] = mu[a] * mu[b] * d[a * m + b];
  std::vector<T> column(m, T(0));
  T best = 0;
  // Gray code walk: step s flips block countr_zero(s).
  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::uint64_t current = 0;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const auto flip = static_cast<std::size_t>(__builtin_ctzll(s));
    current ^= std::uint64_t{1} << flip;
    const bool added = (current >> flip) & 1U;
    for (std::size_t b = 0; b < m; ++b) {
      if (added) {
        column[b] += weighted[flip * m + b];
      } else {
        column[b] -= weighted[flip * m + b];
      }
    }
    T positive = 0;
    T negative = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (column[b] > 0) {
        positive += column[b];
      } else {
        negative -= column[b];
      }
    }
    if (positive > best) best = positive;
    if (negative > best) best = negative;
  }
  return best;
}

void check_cut_kernel(const SignedStepKernel& d) {
  const std::size_t m = d.mu.size();
  if (m > kCutNormBlockCap) {
    throw CapacityError("cut norm search is capped at " + std::to_string(kCutNormBlockCap) +
                        " blocks");
  }
  if (d.d.rows() != m || d.d.cols() != m) throw InputError("kernel matrix must be m x m");
}

}  // namespace

Rational cut_norm(const SignedStepKernel& d) {
  check_cut_kernel(d);
  const std::size_t m = d.mu.size();
  std::vector<Rational> entries(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) entries[a * m + b] = d.d(a, b);
  return cut_norm_impl(d.mu, entries, m);
}

Rational cut_distance_upper(const StepGraphon& a, const StepGraphon& b) {
  if (a.blocks() != b.blocks()) {
    throw InputError("cut distance overlay needs equal block counts");
  }
  const std::size_t m = a.blocks();
  if (m > kCutDistanceBlockCap) {
    throw CapacityError("cut distance search is capped at " +
                        std::to_string(kCutDistanceBlockCap) + " blocks");
  }
  std::vector<double> mu(m);
  for (std::size_t i = 0; i < m; ++i) mu[i] = to_double(a.mu()[i]);

  // Screen permutations in floating point, then settle the near-optimal
  // ones exactly.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::pair<double, std::vector<std::size_t>>> scored;
  std::vector<double> diff(m * m);
  do {
    bool preserving = true;
    for (std::size_t i = 0; i < m && preserving; ++i) preserving = b.mu()[perm[i]] == a.mu()[i];
    if (!preserving) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        diff[i * m + j] = a.w_double(i, j) - b.w_double(perm[i], perm[j]);
    scored.emplace_back(cut_norm_impl(mu, diff, m), perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (scored.empty()) throw InputError("no measure-preserving block overlay exists");

  double best_double = scored.front().first;
  for (const auto& entry : scored) best_double = std::min(best_double, entry.first);
  std::optional<Rational> best;
  for (const auto& [value, p] : scored) {
    if (value > best_double + 1e-9) continue;
    SignedStepKernel d{a.mu(), RationalMatrix(m, m)};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) d.d(i, j) = a.w(i, j) - b.w(p[i], p[j]);
    Rational exact = cut_norm(d);
    if (!best || exact < *best) best = std::move(exact);
    if (*best == 0) break;
  }
  return *best;
}

StepGraphon read_step_graphon(std::istream& in) {
  detail::LineReader reader(in);
  const auto m = detail::parse_count(reader.next("block count", 1)[0]);
  if (m == 0) reader.fail("block count must be positive");
  const auto measure_tokens = reader.next("block measures", m);
  std::vector<Rational> mu;
  Rational total = 0;
  for (const auto& token : measure_tokens) {
    mu.push_back(parse_rational(token));
    total += mu.back();
  }
  if (abs(total - 1) > Rational(1, 1'000'000'000'000)) {
    reader.fail("block measures sum to " + format_decimal(total, 15) + ", not 1");
  }
  // Rounded decimals such as thirds are renormalised to an exact unit sum.
  if (total != 1) {
    for (auto& x : mu) x /= total;
  }
  RationalMatrix w(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    const auto row = reader.next("kernel row", m);
    for (std::size_t b = 0; b < m; ++b) w(a, b) = parse_rational(row[b]);
  }
  reader.expect_end();
  return StepGraphon(std::move(mu), std::move(w));
}

void write_step_graphon(std::ostream& out, const StepGraphon& w) {
  const std::size_t m = w.blocks();
  out << m << '\n';
  for (std::size_t a = 0; a < m; ++a) out << (a ? " " : "") << format_exact(w.mu()[a]);
  out << '\n';
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) out << (b ? " " : "") << format_exact(w.w(a, b));
    out << '\n';
  }
}

}  // namespace graphonlab
