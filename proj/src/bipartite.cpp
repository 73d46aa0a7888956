#include "graphonlab/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"
#include "text_io.hpp"

namespace graphonlab {

BipartiteGraph::BipartiteGraph(std::size_t n1, std::size_t n2)
    : n1_(n1), n2_(n2), words_((n2 + 63) / 64), bits_(n1 * ((n2 + 63) / 64), 0) {}

BipartiteGraph BipartiteGraph::complete(std::size_t n1, std::size_t n2) {
  BipartiteGraph g(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c) g.add_edge(r, c);
  return g;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto word : bits_) count += static_cast<std::size_t>(std::popcount(word));
  return count;
}

void BipartiteGraph::add_edge(Vertex row, Vertex col) {
  if (row >= n1_ || col >= n2_) throw InputError("bipartite edge endpoint out of range");
  bits_[row * words_ + col / 64] |= std::uint64_t{1} << (col % 64);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex r = 0; r < n1_; ++r)
    for (Vertex c = 0; c < n2_; ++c)
      if (adjacent(r, c)) out.emplace_back(r, c);
  return out;
}

BipartiteGraph BipartiteGraph::prefix(std::size_t n1, std::size_t n2) const {
  if (n1 > n1_ || n2 > n2_) throw InputError("prefix larger than graph");
  BipartiteGraph out(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c)
      if (adjacent(r, c)) out.add_edge(r, c);
  return out;
}

std::uint64_t edge_mask(const BipartiteGraph& g) {
  if (g.first_size() * g.second_size() > 64) throw CapacityError("bipartite mask too large");
  std::uint64_t mask = 0;
  for (Vertex r = 0; r < g.first_size(); ++r)
    for (Vertex c = 0; c < g.second_size(); ++c)
      if (g.adjacent(r, c)) mask |= std::uint64_t{1} << (r * g.second_size() + c);
  return mask;
}

BipartiteGraph from_edge_mask(std::size_t n1, std::size_t n2, std::uint64_t mask) {
  if (n1 * n2 > 64) throw CapacityError("bipartite mask too large");
  BipartiteGraph g(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c)
      if ((mask >> (r * n2 + c)) & 1U) g.add_edge(r, c);
  return g;
}

namespace {

enum class MapKind { kHom, kInjective, kInduced };

void check_pattern(const BipartiteGraph& f) {
  if (f.first_size() + f.second_size() > kPatternCap) {
    throw CapacityError("bipartite pattern exceeds the cap of " + std::to_string(kPatternCap) +
                        " vertices");
  }
}

// Enumerates row images, then counts column images with bit-row candidates.
class BipartiteCounter {
 public:
  BipartiteCounter(const BipartiteGraph& f, const BipartiteGraph& g, MapKind kind)
      : f_(f), g_(g), kind_(kind), words_(g.words_per_row()), rows_(f.first_size(), 0) {
    used_rows_.assign(g.first_size(), false);
    used_cols_.assign(words_, 0);
    all_.assign(words_, ~std::uint64_t{0});
    if (g.second_size() % 64 != 0 && words_ > 0) {
      all_.back() = (std::uint64_t{1} << (g.second_size() % 64)) - 1;
    }
    scratch_.assign((f.second_size() + 1) * words_, 0);
  }

  BigInt run() {
    if (f_.first_size() > 0 && g_.first_size() == 0) return 0;
    if (f_.second_size() > 0 && g_.second_size() == 0) return 0;
    total_ = 0;
    place_row(0);
    BigInt out = static_cast<std::uint64_t>(total_ >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(total_);
    return out;
  }

 private:
  void place_row(std::size_t r) {
    if (r == f_.first_size()) {
      if (kind_ == MapKind::kHom) {
        unsigned __int128 product = 1;
        for (std::size_t c = 0; c < f_.second_size() && product != 0; ++c) {
          product *= candidates(c, scratch_.data());
        }
        total_ += product;
      } else {
        place_col(0);
      }
      return;
    }
    for (Vertex v = 0; v < g_.first_size(); ++v) {
      if (kind_ != MapKind::kHom && used_rows_[v]) continue;
      used_rows_[v] = true;
      rows_[r] = v;
      place_row(r + 1);
      used_rows_[v] = false;
    }
  }

  // Candidate host columns for pattern column c, written to cand; returns
  // their number.
  std::size_t candidates(std::size_t c, std::uint64_t* cand) const {
    std::copy(all_.begin(), all_.end(), cand);
    for (std::size_t r = 0; r < f_.first_size(); ++r) {
      const auto row = g_.row(rows_[r]);
      if (f_.adjacent(r, c)) {
        for (std::size_t i = 0; i < words_; ++i) cand[i] &= row[i];
      } else if (kind_ == MapKind::kInduced) {
        for (std::size_t i = 0; i < words_; ++i) cand[i] &= ~row[i];
      }
    }
    if (kind_ != MapKind::kHom) {
      for (std::size_t i = 0; i < words_; ++i) cand[i] &= ~used_cols_[i];
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < words_; ++i) count += static_cast<std::size_t>(std::popcount(cand[i]));
    return count;
  }

  void place_col(std::size_t c) {
    if (c == f_.second_size()) {
      total_ += 1;
      return;
    }
    std::uint64_t* cand = scratch_.data() + (c + 1) * words_;
    const std::size_t count = candidates(c, cand);
    if (c + 1 == f_.second_size()) {
      total_ += count;
      return;
    }
    for (std::size_t i = 0; i < words_; ++i) {
      for (std::uint64_t bits = cand[i]; bits != 0; bits &= bits - 1) {
        const auto bit = std::uint64_t{1} << std::countr_zero(bits);
        used_cols_[i] |= bit;
        place_col(c + 1);
        used_cols_[i] &= ~bit;
      }
    }
  }

  const BipartiteGraph& f_;
  const BipartiteGraph& g_;
  MapKind kind_;
  std::size_t words_;
  std::vector<Vertex> rows_;
  std::vector<bool> used_rows_;
  std::vector<std::uint64_t> used_cols_;
  std::vector<std::uint64_t> all_;
  std::vector<std::uint64_t> scratch_;
  unsigned __int128 total_ = 0;
};

BigInt count(const BipartiteGraph& f, const BipartiteGraph& g, MapKind kind) {
  check_pattern(f);
  if (kind != MapKind::kHom &&
      (f.first_size() > g.first_size() || f.second_size() > g.second_size())) {
    return 0;
  }
  return BipartiteCounter(f, g, kind).run();
}

BigInt power(std::size_t base, std::size_t exponent) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= static_cast<unsigned long>(base);
  return out;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  return den == 0 ? Rational(0) : Rational(num, den);
}

}  // namespace

BigInt bip_count_homomorphisms(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return count(pattern, host, MapKind::kHom);
}
BigInt bip_count_injective(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return count(pattern, host, MapKind::kInjective);
}
BigInt bip_count_induced(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return count(pattern, host, MapKind::kInduced);
}

Rational bip_t(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return ratio(bip_count_homomorphisms(pattern, host),
               power(host.first_size(), pattern.first_size()) *
                   power(host.second_size(), pattern.second_size()));
}

Rational bip_t_inj(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return ratio(bip_count_injective(pattern, host),
               falling_factorial(host.first_size(), pattern.first_size()) *
                   falling_factorial(host.second_size(), pattern.second_size()));
}

Rational bip_t_ind(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  return ratio(bip_count_induced(pattern, host),
               falling_factorial(host.first_size(), pattern.first_size()) *
                   falling_factorial(host.second_size(), pattern.second_size()));
}

SamplingBound bip_sampling_bound_check(const BipartiteGraph& pattern, const BipartiteGraph& host) {
  if (host.first_size() == 0 || host.second_size() == 0) {
    throw InputError("host needs vertices on both sides");
  }
  SamplingBound out;
  out.gap = abs(bip_t(pattern, host) - bip_t_inj(pattern, host));
  const auto k1 = static_cast<long>(pattern.first_size());
  const auto k2 = static_cast<long>(pattern.second_size());
  out.bound = Rational(k1 * k1, 2 * static_cast<long>(host.first_size())) +
              Rational(k2 * k2, 2 * static_cast<long>(host.second_size()));
  out.ok = out.gap <= out.bound;
  return out;
}

namespace {

std::vector<double> cumulative_of(const std::vector<Rational>& mu, const char* side) {
  if (mu.empty()) throw InputError(std::string(side) + " measure needs at least one block");
  std::vector<double> out;
  Rational running = 0;
  for (const auto& x : mu) {
    if (x <= 0) throw InputError(std::string(side) + " block measures must be positive");
    running += x;
    out.push_back(to_double(running));
  }
  if (running != 1) throw InputError(std::string(side) + " block measures must sum to 1");
  out.back() = 1.0;
  return out;
}

}  // namespace

BipartiteKernel::BipartiteKernel(std::vector<Rational> mu1, std::vector<Rational> mu2,
                                 RationalMatrix w)
    : mu1_(std::move(mu1)), mu2_(std::move(mu2)), w_(std::move(w)) {
  cumulative1_ = cumulative_of(mu1_, "row");
  cumulative2_ = cumulative_of(mu2_, "column");
  if (w_.rows() != mu1_.size() || w_.cols() != mu2_.size()) {
    throw InputError("kernel matrix must be m1 x m2");
  }
  w_double_.resize(mu1_.size() * mu2_.size());
  for (std::size_t a = 0; a < mu1_.size(); ++a) {
    for (std::size_t b = 0; b < mu2_.size(); ++b) {
      if (w_(a, b) < 0 || w_(a, b) > 1) throw InputError("kernel entries must lie in [0,1]");
      w_double_[a * mu2_.size() + b] = to_double(w_(a, b));
    }
  }
}

BipartiteKernel BipartiteKernel::constant(const Rational& p) {
  return BipartiteKernel({Rational(1)}, {Rational(1)}, RationalMatrix(1, 1, p));
}

BipartiteKernel bipartite_graph_as_kernel(const BipartiteGraph& g) {
  const std::size_t n1 = g.first_size();
  const std::size_t n2 = g.second_size();
  if (n1 == 0 || n2 == 0) throw InputError("graph needs vertices on both sides");
  RationalMatrix w(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c)
      if (g.adjacent(r, c)) w(r, c) = 1;
  return BipartiteKernel(std::vector<Rational>(n1, Rational(1, static_cast<long>(n1))),
                         std::vector<Rational>(n2, Rational(1, static_cast<long>(n2))),
                         std::move(w));
}

BipartiteGraph sample_bip_w_random(const BipartiteKernel& w, std::size_t n1, std::size_t n2,
                                   Rng& rng) {
  if (n1 == 0 || n2 == 0) throw InputError("both sides need at least one vertex");
  std::vector<std::size_t> x(n1);
  std::vector<std::size_t> y(n2);
  for (auto& a : x) a = rng.categorical(w.cumulative_mu1());
  for (auto& b : y) b = rng.categorical(w.cumulative_mu2());
  BipartiteGraph g(n1, n2);
  for (Vertex r = 0; r < n1; ++r)
    for (Vertex c = 0; c < n2; ++c)
      if (rng.bernoulli(w.w_double(x[r], y[c]))) g.add_edge(r, c);
  return g;
}

namespace {

Rational bip_block_sum(const BipartiteGraph& pattern, const BipartiteKernel& w, bool induced) {
  check_pattern(pattern);
  const std::size_t k1 = pattern.first_size();
  const std::size_t k2 = pattern.second_size();
  std::uint64_t terms = 1;
  for (std::size_t i = 0; i < k1; ++i) {
    terms *= w.row_blocks();
    if (terms * w.col_blocks() * std::max<std::size_t>(k2, 1) > kBlockSumCap) {
      throw CapacityError("bipartite block sum exceeds the work cap");
    }
  }
  Rational total = 0;
  std::vector<std::size_t> z(k1, 0);
  while (true) {
    Rational term = 1;
    for (const auto a : z) term *= w.mu1()[a];
    for (std::size_t c = 0; c < k2 && term != 0; ++c) {
      Rational column = 0;
      for (std::size_t b = 0; b < w.col_blocks(); ++b) {
        Rational product = w.mu2()[b];
        for (std::size_t r = 0; r < k1 && product != 0; ++r)
          if (pattern.adjacent(r, c)) {
            product *= w.w(z[r], b);
          } else if (induced) {
            product *= Rational(1) - w.w(z[r], b);
          }
        column += product;
      }
      term *= column;
    }
    total += term;
    std::size_t pos = 0;
    while (pos < k1 && ++z[pos] == w.row_blocks()) z[pos++] = 0;
    if (pos == k1) break;
  }
  return total;
}

}  // namespace

Rational bip_exact_density(const BipartiteGraph& pattern, const BipartiteKernel& w) {
  return bip_block_sum(pattern, w, false);
}

Rational bip_exact_induced_density(const BipartiteGraph& pattern, const BipartiteKernel& w) {
  return bip_block_sum(pattern, w, true);
}

BipartiteSource BipartiteSource::kernel(BipartiteKernel w) {
  std::vector<std::pair<Rational, BipartiteKernel>> components;
  components.emplace_back(Rational(1), std::move(w));
  return mixture(std::move(components));
}

BipartiteSource BipartiteSource::mixture(std::vector<std::pair<Rational, BipartiteKernel>> components) {
  if (components.empty()) throw InputError("mixture needs at least one component");
  BipartiteSource src;
  Rational running = 0;
  for (const auto& [weight, w] : components) {
    if (weight <= 0) throw InputError("mixture weights must be positive");
    running += weight;
    src.cumulative_.push_back(to_double(running));
  }
  if (running != 1) throw InputError("mixture weights must sum to 1");
  src.cumulative_.back() = 1.0;
  src.components_ = std::move(components);
  return src;
}

BipartiteGraph BipartiteSource::sample_prefix(std::size_t n1, std::size_t n2, Rng& rng) const {
  const std::size_t pick = components_.size() == 1 ? 0 : rng.categorical(cumulative_);
  return sample_bip_w_random(components_[pick].second, n1, n2, rng);
}

BipartitePrefixLaw bip_prefix_law_empirical(const BipartiteSource& src, std::size_t k1,
                                            std::size_t k2, std::size_t samples, Rng& rng) {
  if (samples == 0) throw InputError("empirical prefix law needs samples");
  if (k1 * k2 > 64) throw CapacityError("prefix too large for edge masks");
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(chunks);
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    for (std::size_t s = begin; s < end; ++s) ++partial[c][edge_mask(src.sample_prefix(k1, k2, local))];
  });
  BipartitePrefixLaw law{k1, k2, {}, samples};
  for (const auto& part : partial)
    for (const auto& [mask, n] : part) law.counts[mask] += n;
  return law;
}

namespace {

// Smallest mask in the orbit under row and column permutations.
std::uint64_t orbit_representative(std::size_t k1, std::size_t k2, std::uint64_t mask) {
  std::vector<std::size_t> rp(k1);
  std::iota(rp.begin(), rp.end(), std::size_t{0});
  std::uint64_t best = mask;
  do {
    std::vector<std::size_t> cp(k2);
    std::iota(cp.begin(), cp.end(), std::size_t{0});
    do {
      std::uint64_t image = 0;
      for (std::size_t r = 0; r < k1; ++r)
        for (std::size_t c = 0; c < k2; ++c)
          if ((mask >> (r * k2 + c)) & 1U) image |= std::uint64_t{1} << (rp[r] * k2 + cp[c]);
      best = std::min(best, image);
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return best;
}

}  // namespace

Verdict separate_exchangeability_test(const BipartitePrefixLaw& law, double alpha) {
  if (law.k1 * law.k2 > 16 || law.k1 > 5 || law.k2 > 5) {
    throw CapacityError("separate exchangeability test supports prefixes up to 16 cells");
  }
  std::map<std::uint64_t, std::vector<std::uint64_t>> orbits;
  const std::uint64_t masks = std::uint64_t{1} << (law.k1 * law.k2);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    orbits[orbit_representative(law.k1, law.k2, mask)].push_back(mask);
  }
  Verdict verdict;
  std::vector<std::pair<std::uint64_t, HomogeneityResult>> results;
  for (const auto& [rep, members] : orbits) {
    if (members.size() < 2) continue;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const auto mask : members) {
      const auto it = law.counts.find(mask);
      counts.push_back(it == law.counts.end() ? 0 : it->second);
      total += counts.back();
    }
    if (static_cast<double>(total) / static_cast<double>(members.size()) < kMinExpectedCount) {
      continue;
    }
    results.emplace_back(rep, uniform_fit(counts));
  }
  verdict.comparisons = results.size();
  for (const auto& [rep, result] : results) {
    if (result.p_value < verdict.p_min) {
      verdict.p_min = result.p_value;
      verdict.detail = "orbit of mask " + std::to_string(rep) + " is least uniform";
    }
  }
  if (!results.empty() && verdict.p_min < alpha / static_cast<double>(results.size())) {
    verdict.consistent = false;
  } else {
    verdict.detail.clear();
  }
  return verdict;
}

namespace {

bool contains(const BipartiteGraph& h, const PlacedBipartitePattern& p) {
  for (const auto& [r, c] : p.edges)
    if (!h.adjacent(r, c)) return false;
  return true;
}

bool disjoint(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  for (const auto v : a)
    if (std::find(b.begin(), b.end(), v) != b.end()) return false;
  return true;
}

}  // namespace

ExtremalityReport bip_extremality_test(const BipartiteSource& src,
                                       std::span<const BipartitePatternPair> patterns,
                                       std::size_t samples, double alpha, Rng& rng) {
  if (patterns.empty()) throw InputError("extremality test needs at least one pattern pair");
  if (samples == 0) throw InputError("extremality test needs samples");
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  for (const auto& pair : patterns) {
    if (!disjoint(pair.first.rows, pair.second.rows) ||
        !disjoint(pair.first.cols, pair.second.cols)) {
      throw InputError("patterns in a pair must use disjoint rows and disjoint columns");
    }
    for (const auto* p : {&pair.first, &pair.second}) {
      for (const auto& [r, c] : p->edges) {
        if (std::find(p->rows.begin(), p->rows.end(), r) == p->rows.end() ||
            std::find(p->cols.begin(), p->cols.end(), c) == p->cols.end()) {
          throw InputError("pattern edge outside its vertex sets");
        }
      }
      for (const auto r : p->rows) k1 = std::max(k1, r + 1);
      for (const auto c : p->cols) k2 = std::max(k2, c + 1);
    }
  }
  if (k1 + k2 > 2 * kPatternCap) throw CapacityError("combined bipartite patterns too large");

  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::vector<PairCounts>> partial(chunks, std::vector<PairCounts>(patterns.size()));
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    for (std::size_t s = begin; s < end; ++s) {
      const BipartiteGraph h = src.sample_prefix(std::max<std::size_t>(k1, 1),
                                                 std::max<std::size_t>(k2, 1), local);
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const bool a = contains(h, patterns[i].first);
        const bool b = contains(h, patterns[i].second);
        partial[c][i].first += a;
        partial[c][i].second += b;
        partial[c][i].both += a && b;
      }
    }
  });
  ExtremalityReport report;
  report.verdict.comparisons = patterns.size();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    PairCounts total;
    total.samples = samples;
    for (const auto& part : partial) {
      total.first += part[i].first;
      total.second += part[i].second;
      total.both += part[i].both;
    }
    report.pairs.push_back(product_identity_test(total));
    report.verdict.p_min = std::min(report.verdict.p_min, report.pairs.back().p_value);
  }
  if (report.verdict.p_min < alpha / static_cast<double>(patterns.size())) {
    report.verdict.consistent = false;
    report.verdict.detail = "product identity rejected for at least one pattern pair";
  }
  return report;
}

BipartiteGraph read_bipartite_graph(std::istream& in) {
  detail::LineReader reader(in);
  const auto header = reader.next("header 'n1 n2 m'", 3);
  const auto n1 = detail::parse_count(header[0]);
  const auto n2 = detail::parse_count(header[1]);
  const auto m = detail::parse_count(header[2]);
  if (n1 == 0 || n2 == 0) reader.fail("both sides need at least one vertex");
  if (m > n1 * n2) reader.fail("more edges than vertex pairs");
  BipartiteGraph g(n1, n2);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto fields = reader.next("edge 'u v'", 2);
    const auto u = detail::parse_count(fields[0]);
    const auto v = detail::parse_count(fields[1]);
    if (u < 1 || u > n1 || v < 1 || v > n2) reader.fail("edge endpoint out of range");
    if (g.adjacent(u - 1, v - 1)) reader.fail("duplicate edge");
    g.add_edge(u - 1, v - 1);
  }
  reader.expect_end();
  return g;
}

void write_bipartite_graph(std::ostream& out, const BipartiteGraph& g) {
  const auto edges = g.edges();
  out << g.first_size() << ' ' << g.second_size() << ' ' << edges.size() << '\n';
  for (const auto& [r, c] : edges) out << r + 1 << ' ' << c + 1 << '\n';
}

BipartiteKernel read_bipartite_kernel(std::istream& in) {
  detail::LineReader reader(in);
  const auto header = reader.next("block counts 'm1 m2'", 2);
  const auto m1 = detail::parse_count(header[0]);
  const auto m2 = detail::parse_count(header[1]);
  if (m1 == 0 || m2 == 0) reader.fail("block counts must be positive");
  auto read_measures = [&](std::size_t m, const char* what) {
    std::vector<Rational> mu;
    Rational total = 0;
    for (const auto& token : reader.next(what, m)) {
      mu.push_back(parse_rational(token));
      total += mu.back();
    }
    if (abs(total - 1) > Rational(1, 1'000'000'000'000)) reader.fail("measures do not sum to 1");
    if (total != 1)
      for (auto& x : mu) x /= total;
    return mu;
  };
  auto mu1 = read_measures(m1, "row measures");
  auto mu2 = read_measures(m2, "column measures");
  RationalMatrix w(m1, m2);
  for (std::size_t a = 0; a < m1; ++a) {
    const auto row = reader.next("kernel row", m2);
    for (std::size_t b = 0; b < m2; ++b) w(a, b) = parse_rational(row[b]);
  }
  reader.expect_end();
  return BipartiteKernel(std::move(mu1), std::move(mu2), std::move(w));
}

void write_bipartite_kernel(std::ostream& out, const BipartiteKernel& w) {
  out << w.row_blocks() << ' ' << w.col_blocks() << '\n';
  for (std::size_t a = 0; a < w.row_blocks(); ++a) out << (a ? " " : "") << format_exact(w.mu1()[a]);
  out << '\n';
  for (std::size_t b = 0; b < w.col_blocks(); ++b) out << (b ? " " : "") << format_exact(w.mu2()[b]);
  out << '\n';
  for (std::size_t a = 0; a < w.row_blocks(); ++a) {
    for (std::size_t b = 0; b < w.col_blocks(); ++b) out << (b ? " " : "") << format_exact(w.w(a, b));
    out << '\n';
  }
}

}  // namespace graphonlab
