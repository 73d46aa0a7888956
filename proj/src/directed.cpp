#include "graphonlab/directed.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "graphonlab/densities.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"
#include "text_io.hpp"

namespace graphonlab {

DirectedGraph::DirectedGraph(std::size_t n)
    : n_(n), words_((n + 63) / 64), out_(n * words_, 0), in_(n * words_, 0) {}

std::size_t DirectedGraph::arc_count() const {
  std::size_t count = 0;
  for (const auto word : out_) count += static_cast<std::size_t>(std::popcount(word));
  return count;
}

std::size_t DirectedGraph::loop_count() const {
  std::size_t count = 0;
  for (Vertex u = 0; u < n_; ++u) count += has_loop(u) ? 1 : 0;
  return count;
}

void DirectedGraph::add_arc(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw InputError("arc endpoint out of range");
  out_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  in_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::vector<Edge> DirectedGraph::arcs() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v)
      if (has_arc(u, v)) out.emplace_back(u, v);
  return out;
}

DirectedGraph DirectedGraph::prefix(std::size_t n) const {
  if (n > n_) throw InputError("prefix longer than graph");
  DirectedGraph out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (has_arc(u, v)) out.add_arc(u, v);
  return out;
}

DirectedGraph DirectedGraph::relabelled(std::span<const Vertex> relabel) const {
  if (relabel.size() != n_) throw InputError("relabelling has wrong length");
  DirectedGraph out(n_);
  for (const auto& [u, v] : arcs()) out.add_arc(relabel[u], relabel[v]);
  return out;
}

std::uint64_t arc_mask(const DirectedGraph& g) {
  if (g.order() > 8) throw CapacityError("arc mask needs at most 8 vertices");
  std::uint64_t mask = 0;
  for (const auto& [u, v] : g.arcs()) mask |= std::uint64_t{1} << (u * g.order() + v);
  return mask;
}

DirectedGraph from_arc_mask(std::size_t n, std::uint64_t mask) {
  if (n > 8) throw CapacityError("arc mask needs at most 8 vertices");
  DirectedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if ((mask >> (u * n + v)) & 1U) g.add_arc(u, v);
  return g;
}

namespace {

// Same branch-and-bound as the undirected canonical form. Placing position
// j fixes the code bits of (i,j), (j,i) for i < j and the loop (j,j).
class DirectedMinCode {
 public:
  explicit DirectedMinCode(const DirectedGraph& g) : g_(g), n_(g.order()) {
    signature_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) {
      std::size_t out = 0;
      std::size_t in = 0;
      for (Vertex u = 0; u < n_; ++u) {
        out += g.has_arc(v, u);
        in += g.has_arc(u, v);
      }
      signature_[v] = {g.has_loop(v) ? 1U : 0U, out, in};
    }
    required_ = signature_;
    std::sort(required_.begin(), required_.end());
    placed_.assign(n_, 0);
    used_.assign(n_, false);
  }

  std::uint64_t run() {
    search(0, 0);
    return best_;
  }

 private:
  using Signature = std::array<std::size_t, 3>;

  // Bits for position j occupy [j*j, (j+1)*(j+1)) counted from the top.
  void search(std::size_t j, std::uint64_t code) {
    if (j == n_) {
      if (!have_best_ || code < best_) {
        have_best_ = true;
        best_ = code;
      }
      return;
    }
    const std::size_t total_bits = n_ * n_;
    for (Vertex v = 0; v < n_; ++v) {
      if (used_[v] || signature_[v] != required_[j]) continue;
      std::uint64_t next = code;
      std::size_t bit = j * j;
      auto put = [&](bool value) {
        if (value) next |= std::uint64_t{1} << (total_bits - 1 - bit);
        ++bit;
      };
      for (std::size_t i = 0; i < j; ++i) {
        put(g_.has_arc(placed_[i], v));
        put(g_.has_arc(v, placed_[i]));
      }
      put(g_.has_loop(v));
      if (have_best_) {
        const std::size_t shift = total_bits - (j + 1) * (j + 1);
        if ((next >> shift) > (best_ >> shift)) continue;
      }
      used_[v] = true;
      placed_[j] = v;
      search(j + 1, next);
      used_[v] = false;
    }
  }

  const DirectedGraph& g_;
  std::size_t n_;
  std::vector<Signature> signature_;
  std::vector<Signature> required_;
  std::vector<Vertex> placed_;
  std::vector<bool> used_;
  bool have_best_ = false;
  std::uint64_t best_ = 0;
};

}  // namespace

std::uint64_t directed_canonical_code(const DirectedGraph& g) {
  if (g.order() > kDirectedCanonicalCap) {
    throw CapacityError("directed canonicalization is capped at " +
                        std::to_string(kDirectedCanonicalCap) + " vertices");
  }
  if (g.order() == 0) return 0;
  return DirectedMinCode(g).run();
}

namespace {

KernelCheck check_joint(const std::vector<Rational>& weights_or_mu, const std::array<RationalMatrix, 4>& joint,
                        std::size_t states, const char* state_name) {
  (void)weights_or_mu;
  for (const auto& m : joint) {
    if (m.rows() != states || m.cols() != states) {
      return {false, "joint kernels must be " + std::to_string(states) + " x " +
                         std::to_string(states)};
    }
  }
  for (std::size_t x = 0; x < states; ++x) {
    for (std::size_t y = 0; y < states; ++y) {
      Rational sum = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const Rational& value = joint[joint_index(a, b)](x, y);
          if (value < 0 || value > 1) {
            return {false, "W" + std::to_string(a) + std::to_string(b) + " entry at " +
                               state_name + " (" + std::to_string(x + 1) + "," +
                               std::to_string(y + 1) + ") is outside [0,1]"};
          }
          if (value != joint[joint_index(b, a)](y, x)) {
            return {false, "W" + std::to_string(a) + std::to_string(b) + "(" +
                               std::to_string(x + 1) + "," + std::to_string(y + 1) + ") != W" +
                               std::to_string(b) + std::to_string(a) + "(" +
                               std::to_string(y + 1) + "," + std::to_string(x + 1) + ")"};
          }
          sum += value;
        }
      }
      if (sum != 1) {
        return {false, "joint kernels sum to " + format_exact(sum) + " at " + state_name + " (" +
                           std::to_string(x + 1) + "," + std::to_string(y + 1) + ")"};
      }
    }
  }
  return {};
}

KernelCheck check_measure(const std::vector<Rational>& mu) {
  if (mu.empty()) return {false, "kernel needs at least one block"};
  Rational total = 0;
  for (const auto& x : mu) {
    if (x <= 0) return {false, "block measures must be positive"};
    total += x;
  }
  if (total != 1) return {false, "block measures sum to " + format_exact(total)};
  return {};
}

}  // namespace

KernelCheck validate_quintuple(const DirectedKernelQuintuple& k) {
  if (auto check = check_measure(k.mu); !check.valid) return check;
  if (k.loop.size() != k.mu.size()) return {false, "loop vector must have one entry per block"};
  for (std::size_t a = 0; a < k.loop.size(); ++a) {
    if (k.loop[a] > 1) return {false, "loop value at block " + std::to_string(a + 1) + " not in {0,1}"};
  }
  return check_joint(k.mu, k.joint, k.mu.size(), "blocks");
}

KernelCheck validate_quadruple(const DirectedKernelQuadruplePlusP& k) {
  if (auto check = check_measure(k.mu); !check.valid) return check;
  if (k.p < 0 || k.p > 1) return {false, "loop probability must lie in [0,1]"};
  return check_joint(k.mu, k.joint, 2 * k.mu.size(), "states");
}

DirectedKernelQuintuple tournament_kernel() {
  DirectedKernelQuintuple k;
  k.mu = {Rational(1)};
  k.joint[joint_index(0, 0)] = RationalMatrix(1, 1, Rational(0));
  k.joint[joint_index(0, 1)] = RationalMatrix(1, 1, Rational(1, 2));
  k.joint[joint_index(1, 0)] = RationalMatrix(1, 1, Rational(1, 2));
  k.joint[joint_index(1, 1)] = RationalMatrix(1, 1, Rational(0));
  k.loop = {0};
  return k;
}

namespace {

// Both kernel forms reduce to latent states with a weight, a
// deterministic loop flag and the four joint kernels over states.
struct LatentModel {
  std::vector<Rational> weight;
  std::vector<std::uint8_t> loop;
  const std::array<RationalMatrix, 4>* joint = nullptr;
  std::vector<double> cumulative;
  // Per state pair, cumulative probabilities of outcomes 00, 01, 10, 11.
  std::vector<std::array<double, 4>> outcome;
};

void finish(LatentModel& model) {
  const std::size_t s = model.weight.size();
  Rational running = 0;
  for (const auto& x : model.weight) {
    running += x;
    model.cumulative.push_back(to_double(running));
  }
  model.cumulative.back() = 1.0;
  model.outcome.resize(s * s);
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = 0; y < s; ++y) {
      Rational acc = 0;
      for (std::size_t o = 0; o < 4; ++o) {
        acc += (*model.joint)[o](x, y);
        model.outcome[x * s + y][o] = to_double(acc);
      }
      model.outcome[x * s + y][3] = 1.0;
    }
  }
}

LatentModel latent(const DirectedKernelQuintuple& k) {
  if (const auto check = validate_quintuple(k); !check.valid) {
    throw InputError("invalid quintuple kernel: " + check.detail);
  }
  LatentModel model;
  model.weight = k.mu;
  model.loop = k.loop;
  model.joint = &k.joint;
  finish(model);
  return model;
}

LatentModel latent(const DirectedKernelQuadruplePlusP& k) {
  if (const auto check = validate_quadruple(k); !check.valid) {
    throw InputError("invalid quadruple kernel: " + check.detail);
  }
  LatentModel model;
  for (const auto& m : k.mu) {
    model.weight.push_back(m * (Rational(1) - k.p));
    model.loop.push_back(0);
    model.weight.push_back(m * k.p);
    model.loop.push_back(1);
  }
  model.joint = &k.joint;
  // Zero-weight states are never drawn; keep them so indices stay 2a + z.
  Rational running = 0;
  for (const auto& x : model.weight) {
    running += x;
    model.cumulative.push_back(to_double(running));
  }
  model.cumulative.back() = 1.0;
  const std::size_t s = model.weight.size();
  model.outcome.resize(s * s);
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = 0; y < s; ++y) {
      Rational acc = 0;
      for (std::size_t o = 0; o < 4; ++o) {
        acc += k.joint[o](x, y);
        model.outcome[x * s + y][o] = to_double(acc);
      }
      model.outcome[x * s + y][3] = 1.0;
    }
  }
  return model;
}

DirectedGraph sample_latent(const LatentModel& model, std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("graph size must be positive");
  const std::size_t s = model.weight.size();
  std::vector<std::size_t> state(n);
  for (auto& y : state) {
    // Skip zero-weight states that a boundary draw could land on.
    do {
      y = rng.categorical(model.cumulative);
    } while (model.weight[y] == 0);
  }
  DirectedGraph g(n);
  for (Vertex i = 0; i < n; ++i)
    if (model.loop[state[i]]) g.add_arc(i, i);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const std::size_t o = rng.categorical(model.outcome[state[i] * s + state[j]]);
      if (o >> 1) g.add_arc(i, j);
      if (o & 1U) g.add_arc(j, i);
    }
  }
  return g;
}

enum class Mode { kContains, kEquals };

Rational latent_density(const DirectedGraph& f, const LatentModel& model, Mode mode) {
  const std::size_t k = f.order();
  if (k > kPatternCap) throw CapacityError("directed pattern exceeds the pattern cap");
  const std::size_t s = model.weight.size();
  std::uint64_t terms = 1;
  for (std::size_t i = 0; i < k; ++i) {
    terms *= s;
    if (terms > kBlockSumCap) throw CapacityError("directed block sum exceeds the work cap");
  }
  const auto& joint = *model.joint;
  std::vector<std::size_t> z(k, 0);
  Rational total = 0;
  // Depth-first over states so zero factors prune whole subtrees.
  auto descend = [&](auto&& self, std::size_t i, const Rational& partial) -> void {
    if (i == k) {
      total += partial;
      return;
    }
    for (std::size_t x = 0; x < s; ++x) {
      if (model.weight[x] == 0) continue;
      const bool loop = model.loop[x] != 0;
      if (f.has_loop(i) && !loop) continue;
      if (mode == Mode::kEquals && !f.has_loop(i) && loop) continue;
      Rational factor = partial * model.weight[x];
      for (std::size_t j = 0; j < i && factor != 0; ++j) {
        // Pair (j, i) with j < i: X_ji = alpha, X_ij = beta.
        const int a = f.has_arc(j, i) ? 1 : 0;
        const int b = f.has_arc(i, j) ? 1 : 0;
        if (mode == Mode::kEquals) {
          factor *= joint[joint_index(a, b)](z[j], x);
        } else {
          Rational sum = 0;
          for (int alpha = a; alpha < 2; ++alpha)
            for (int beta = b; beta < 2; ++beta) sum += joint[joint_index(alpha, beta)](z[j], x);
          factor *= sum;
        }
      }
      if (factor == 0) continue;
      z[i] = x;
      self(self, i + 1, factor);
    }
  };
  descend(descend, 0, Rational(1));
  return total;
}

enum class MapKind { kHom, kInjective, kInduced };

class DirectedCounter {
 public:
  DirectedCounter(const DirectedGraph& f, const DirectedGraph& g, MapKind kind)
      : f_(f), g_(g), kind_(kind), words_(g.words_per_row()), image_(f.order(), 0) {
    all_.assign(words_, ~std::uint64_t{0});
    if (g.order() % 64 != 0 && words_ > 0) all_.back() = (std::uint64_t{1} << (g.order() % 64)) - 1;
    loops_.assign(words_, 0);
    for (Vertex v = 0; v < g.order(); ++v)
      if (g.has_loop(v)) loops_[v / 64] |= std::uint64_t{1} << (v % 64);
    used_.assign(words_, 0);
    scratch_.assign((f.order() + 1) * words_, 0);
  }

  BigInt run() {
    if (f_.order() == 0) return 1;
    if (g_.order() == 0) return 0;
    descend(0);
    BigInt out = static_cast<std::uint64_t>(total_ >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(total_);
    return out;
  }

 private:
  void descend(std::size_t u) {
    std::uint64_t* cand = scratch_.data() + u * words_;
    std::copy(all_.begin(), all_.end(), cand);
    auto apply = [&](std::span<const std::uint64_t> bits, bool keep) {
      for (std::size_t i = 0; i < words_; ++i) cand[i] &= keep ? bits[i] : ~bits[i];
    };
    if (f_.has_loop(u)) {
      apply(loops_, true);
    } else if (kind_ == MapKind::kInduced) {
      apply(loops_, false);
    }
    for (Vertex w = 0; w < u; ++w) {
      const Vertex img = image_[w];
      // Arc (u, w) needs image(u) among the predecessors of image(w).
      if (f_.has_arc(u, w)) {
        apply(g_.predecessors(img), true);
      } else if (kind_ == MapKind::kInduced) {
        apply(g_.predecessors(img), false);
      }
      if (f_.has_arc(w, u)) {
        apply(g_.successors(img), true);
      } else if (kind_ == MapKind::kInduced) {
        apply(g_.successors(img), false);
      }
    }
    if (kind_ != MapKind::kHom) apply(used_, false);
    if (u + 1 == f_.order()) {
      for (std::size_t i = 0; i < words_; ++i) total_ += static_cast<unsigned>(std::popcount(cand[i]));
      return;
    }
    for (std::size_t i = 0; i < words_; ++i) {
      for (std::uint64_t bits = cand[i]; bits != 0; bits &= bits - 1) {
        const auto bit = std::uint64_t{1} << std::countr_zero(bits);
        image_[u] = i * 64 + static_cast<Vertex>(std::countr_zero(bits));
        used_[i] |= bit;
        descend(u + 1);
        used_[i] &= ~bit;
      }
    }
  }

  const DirectedGraph& f_;
  const DirectedGraph& g_;
  MapKind kind_;
  std::size_t words_;
  std::vector<Vertex> image_;
  std::vector<std::uint64_t> all_;
  std::vector<std::uint64_t> loops_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> scratch_;
  unsigned __int128 total_ = 0;
};

Rational count_ratio(const DirectedGraph& f, const DirectedGraph& g, MapKind kind) {
  if (f.order() > kPatternCap) throw CapacityError("directed pattern exceeds the pattern cap");
  BigInt denominator;
  if (kind == MapKind::kHom) {
    denominator = 1;
    for (std::size_t i = 0; i < f.order(); ++i) denominator *= static_cast<unsigned long>(g.order());
  } else {
    if (f.order() > g.order()) return 0;
    denominator = falling_factorial(g.order(), f.order());
  }
  if (denominator == 0) return 0;
  return Rational(DirectedCounter(f, g, kind).run(), denominator);
}

}  // namespace

DirectedGraph sample_directed(const DirectedKernelQuintuple& k, std::size_t n, Rng& rng) {
  return sample_latent(latent(k), n, rng);
}

DirectedGraph sample_directed_qp(const DirectedKernelQuadruplePlusP& k, std::size_t n, Rng& rng) {
  return sample_latent(latent(k), n, rng);
}

Rational directed_t(const DirectedGraph& pattern, const DirectedGraph& host) {
  return count_ratio(pattern, host, MapKind::kHom);
}
Rational directed_t_inj(const DirectedGraph& pattern, const DirectedGraph& host) {
  return count_ratio(pattern, host, MapKind::kInjective);
}
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedGraph& host) {
  return count_ratio(pattern, host, MapKind::kInduced);
}

Rational directed_t(const DirectedGraph& pattern, const DirectedKernelQuintuple& k) {
  return latent_density(pattern, latent(k), Mode::kContains);
}
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedKernelQuintuple& k) {
  return latent_density(pattern, latent(k), Mode::kEquals);
}
Rational directed_t(const DirectedGraph& pattern, const DirectedKernelQuadruplePlusP& k) {
  return latent_density(pattern, latent(k), Mode::kContains);
}
Rational directed_t_ind(const DirectedGraph& pattern, const DirectedKernelQuadruplePlusP& k) {
  return latent_density(pattern, latent(k), Mode::kEquals);
}

namespace {

std::vector<std::uint8_t> diagonal(const DirectedGraph& g) {
  std::vector<std::uint8_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = g.has_loop(v) ? 1 : 0;
  return out;
}

}  // namespace

std::vector<std::uint8_t> loop_sequence_law(const DirectedKernelQuintuple& k, std::size_t n, Rng& rng) {
  return diagonal(sample_directed(k, n, rng));
}

std::vector<std::uint8_t> loop_sequence_law(const DirectedKernelQuadruplePlusP& k, std::size_t n,
                                            Rng& rng) {
  return diagonal(sample_directed_qp(k, n, rng));
}

DirectedSource DirectedSource::kernel(Kernel k) {
  std::vector<std::pair<Rational, Kernel>> components;
  components.emplace_back(Rational(1), std::move(k));
  return mixture(std::move(components));
}

DirectedSource DirectedSource::mixture(std::vector<std::pair<Rational, Kernel>> components) {
  if (components.empty()) throw InputError("mixture needs at least one component");
  DirectedSource src;
  Rational running = 0;
  for (const auto& [weight, k] : components) {
    if (weight <= 0) throw InputError("mixture weights must be positive");
    const KernelCheck check = std::visit(
        [](const auto& kernel) {
          if constexpr (std::is_same_v<std::decay_t<decltype(kernel)>, DirectedKernelQuintuple>) {
            return validate_quintuple(kernel);
          } else {
            return validate_quadruple(kernel);
          }
        },
        k);
    if (!check.valid) throw InputError("invalid directed kernel: " + check.detail);
    running += weight;
    src.cumulative_.push_back(to_double(running));
  }
  if (running != 1) throw InputError("mixture weights must sum to 1");
  src.cumulative_.back() = 1.0;
  src.components_ = std::move(components);
  return src;
}

DirectedGraph DirectedSource::sample_prefix(std::size_t n, Rng& rng) const {
  const std::size_t pick = components_.size() == 1 ? 0 : rng.categorical(cumulative_);
  return std::visit(
      [&](const auto& kernel) {
        if constexpr (std::is_same_v<std::decay_t<decltype(kernel)>, DirectedKernelQuintuple>) {
          return sample_directed(kernel, n, rng);
        } else {
          return sample_directed_qp(kernel, n, rng);
        }
      },
      components_[pick].second);
}

DirectedPrefixLaw directed_prefix_law_empirical(const DirectedSource& src, std::size_t k,
                                                std::size_t samples, Rng& rng) {
  if (samples == 0) throw InputError("empirical prefix law needs samples");
  if (k > 8) throw CapacityError("directed prefix too long for arc masks");
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(chunks);
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    for (std::size_t s = begin; s < end; ++s) ++partial[c][arc_mask(src.sample_prefix(k, local))];
  });
  DirectedPrefixLaw law{k, {}, samples};
  for (const auto& part : partial)
    for (const auto& [mask, n] : part) law.counts[mask] += n;
  return law;
}

Verdict directed_exchangeability_test(const DirectedPrefixLaw& law, double alpha) {
  if (law.k > 4) throw CapacityError("directed exchangeability test supports k <= 4");
  std::map<std::uint64_t, std::vector<std::uint64_t>> classes;
  const std::uint64_t masks = std::uint64_t{1} << (law.k * law.k);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    classes[directed_canonical_code(from_arc_mask(law.k, mask))].push_back(mask);
  }
  Verdict verdict;
  std::size_t tests = 0;
  for (const auto& [code, members] : classes) {
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
    ++tests;
    const auto result = uniform_fit(counts);
    if (result.p_value < verdict.p_min) {
      verdict.p_min = result.p_value;
      verdict.detail = "directed class containing arc mask " + std::to_string(members.front()) +
                       " is least uniform";
    }
  }
  verdict.comparisons = tests;
  if (tests > 0 && verdict.p_min < alpha / static_cast<double>(tests)) {
    verdict.consistent = false;
  } else {
    verdict.detail.clear();
  }
  return verdict;
}

ExtremalityReport directed_extremality_test(const DirectedSource& src,
                                            std::span<const PatternPair> patterns,
                                            std::size_t samples, double alpha, Rng& rng) {
  if (patterns.empty()) throw InputError("extremality test needs at least one pattern pair");
  if (samples == 0) throw InputError("extremality test needs samples");
  std::size_t k = 0;
  for (const auto& pair : patterns) {
    for (const auto u : pair.first.vertices) {
      if (std::find(pair.second.vertices.begin(), pair.second.vertices.end(), u) !=
          pair.second.vertices.end()) {
        throw InputError("patterns in a pair must have disjoint vertex sets");
      }
    }
    for (const auto* p : {&pair.first, &pair.second}) {
      for (const auto& [u, v] : p->edges) {
        if (std::find(p->vertices.begin(), p->vertices.end(), u) == p->vertices.end() ||
            std::find(p->vertices.begin(), p->vertices.end(), v) == p->vertices.end()) {
          throw InputError("pattern arc outside its vertex set");
        }
      }
      for (const auto u : p->vertices) k = std::max(k, u + 1);
    }
  }
  if (k > kPatternCap) throw CapacityError("combined directed patterns exceed the pattern cap");
  auto contains = [](const DirectedGraph& h, const PlacedPattern& p) {
    for (const auto& [u, v] : p.edges)
      if (!h.has_arc(u, v)) return false;
    return true;
  };
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::vector<PairCounts>> partial(chunks, std::vector<PairCounts>(patterns.size()));
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    for (std::size_t s = begin; s < end; ++s) {
      const DirectedGraph h = src.sample_prefix(k, local);
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

DirectedGraph read_directed_graph(std::istream& in) {
  detail::LineReader reader(in);
  const auto header = reader.next("header 'n m'", 2);
  const auto n = detail::parse_count(header[0]);
  const auto m = detail::parse_count(header[1]);
  if (n == 0) reader.fail("graph needs at least one vertex");
  if (m > n * n) reader.fail("more arcs than ordered pairs");
  DirectedGraph g(n);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto fields = reader.next("arc 'u v'", 2);
    const auto u = detail::parse_count(fields[0]);
    const auto v = detail::parse_count(fields[1]);
    if (u < 1 || u > n || v < 1 || v > n) reader.fail("arc endpoint out of range");
    if (g.has_arc(u - 1, v - 1)) reader.fail("duplicate arc");
    g.add_arc(u - 1, v - 1);
  }
  reader.expect_end();
  return g;
}

void write_directed_graph(std::ostream& out, const DirectedGraph& g) {
  const auto arcs = g.arcs();
  out << g.order() << ' ' << arcs.size() << '\n';
  for (const auto& [u, v] : arcs) out << u + 1 << ' ' << v + 1 << '\n';
}

DirectedKernelQuintuple read_quintuple(std::istream& in) {
  detail::LineReader reader(in);
  const auto m = detail::parse_count(reader.next("block count", 1)[0]);
  if (m == 0) reader.fail("block count must be positive");
  DirectedKernelQuintuple k;
  Rational total = 0;
  for (const auto& token : reader.next("block measures", m)) {
    k.mu.push_back(parse_rational(token));
    total += k.mu.back();
  }
  if (abs(total - 1) > Rational(1, 1'000'000'000'000)) reader.fail("measures do not sum to 1");
  if (total != 1)
    for (auto& x : k.mu) x /= total;
  static constexpr std::array<const char*, 4> kLabels{"W00", "W01", "W10", "W11"};
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const auto label = reader.next("block label", 1);
    if (label[0] != kLabels[idx]) reader.fail(std::string("expected label ") + kLabels[idx]);
    k.joint[idx] = RationalMatrix(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      const auto row = reader.next("kernel row", m);
      for (std::size_t b = 0; b < m; ++b) k.joint[idx](a, b) = parse_rational(row[b]);
    }
  }
  for (const auto& token : reader.next("loop vector", m)) {
    if (token != "0" && token != "1") reader.fail("loop values must be 0 or 1");
    k.loop.push_back(token == "1" ? 1 : 0);
  }
  reader.expect_end();
  if (const auto check = validate_quintuple(k); !check.valid) {
    throw InputError("invalid quintuple kernel: " + check.detail);
  }
  return k;
}

void write_quintuple(std::ostream& out, const DirectedKernelQuintuple& k) {
  const std::size_t m = k.mu.size();
  out << m << '\n';
  for (std::size_t a = 0; a < m; ++a) out << (a ? " " : "") << format_exact(k.mu[a]);
  out << '\n';
  static constexpr std::array<const char*, 4> kLabels{"W00", "W01", "W10", "W11"};
  for (std::size_t idx = 0; idx < 4; ++idx) {
    out << kLabels[idx] << '\n';
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) out << (b ? " " : "") << format_exact(k.joint[idx](a, b));
      out << '\n';
    }
  }
  for (std::size_t a = 0; a < m; ++a) out << (a ? " " : "") << static_cast<int>(k.loop[a]);
  out << '\n';
}

}  // namespace graphonlab
