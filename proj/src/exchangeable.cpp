#include "graphonlab/exchangeable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "graphonlab/densities.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"
#include "text_io.hpp"

namespace graphonlab {

double PrefixLaw::probability(std::uint64_t mask) const {
  if (exact) {
    const auto it = probs.find(mask);
    return it == probs.end() ? 0.0 : to_double(it->second);
  }
  const auto it = counts.find(mask);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

GraphSource GraphSource::w_random(StepGraphon w) { return GraphSource(std::move(w)); }

GraphSource GraphSource::mixture(std::vector<std::pair<Rational, StepGraphon>> components) {
  if (components.empty()) throw InputError("mixture needs at least one component");
  Mixture mix;
  Rational running = 0;
  for (const auto& [weight, w] : components) {
    if (weight <= 0) throw InputError("mixture weights must be positive");
    running += weight;
    mix.cumulative.push_back(to_double(running));
  }
  if (running != 1) throw InputError("mixture weights must sum to 1");
  mix.cumulative.back() = 1.0;
  mix.components = std::move(components);
  return GraphSource(std::move(mix));
}

GraphSource GraphSource::external(Sampler sampler) {
  if (!sampler) throw InputError("external source needs a sampler");
  return GraphSource(std::move(sampler));
}

LabelledGraph GraphSource::sample_prefix(std::size_t n, Rng& rng) const {
  if (const auto* w = std::get_if<StepGraphon>(&kind_)) return sample_w_random(*w, n, rng);
  if (const auto* mix = std::get_if<Mixture>(&kind_)) {
    // W is drawn once for the whole graph.
    const auto pick = rng.categorical(mix->cumulative);
    return sample_w_random(mix->components[pick].second, n, rng);
  }
  const auto& sampler = std::get<Sampler>(kind_);
  LabelledGraph g = sampler(n, rng);
  if (g.order() != n) throw InputError("external sampler returned a graph of the wrong size");
  return g;
}

namespace {

StepGraphon load_graphon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graphon file " + path.string());
  return read_step_graphon(in);
}

}  // namespace

GraphSource read_graph_source(std::istream& in, const std::filesystem::path& base_dir) {
  detail::LineReader reader(in);
  const auto head = reader.next("source kind");
  if (head.empty()) reader.fail("missing source kind");
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (head[0] == "w-random") {
    if (head.size() != 2) reader.fail("expected 'w-random <file>'");
    auto w = load_graphon(resolve(head[1]));
    reader.expect_end();
    return GraphSource::w_random(std::move(w));
  }
  if (head[0] == "constant") {
    if (head.size() != 2) reader.fail("expected 'constant <p>'");
    const Rational p = parse_rational(head[1]);
    if (p < 0 || p > 1) reader.fail("edge probability must lie in [0,1]");
    reader.expect_end();
    return GraphSource::w_random(StepGraphon::constant(p));
  }
  if (head[0] == "mixture") {
    if (head.size() != 1) reader.fail("expected 'mixture' alone on its line");
    std::vector<std::pair<Rational, StepGraphon>> components;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string weight;
      std::string target;
      if (!(fields >> weight)) continue;
      if (!(fields >> target)) throw InputError("mixture line needs '<weight> <file|constant:p>'");
      StepGraphon w = target.rfind("constant:", 0) == 0
                          ? StepGraphon::constant(parse_rational(target.substr(9)))
                          : load_graphon(resolve(target));
      components.emplace_back(parse_rational(weight), std::move(w));
    }
    return GraphSource::mixture(std::move(components));
  }
  reader.fail("unknown source kind '" + head[0] + "'");
}

PrefixLaw prefix_law_exact(const StepGraphon& w, std::size_t k) {
  const std::size_t pairs = pair_count(k);
  const std::size_t m = w.blocks();
  std::uint64_t work = std::uint64_t{1} << std::min<std::size_t>(pairs, 40);
  for (std::size_t i = 0; i < k && work <= kBlockSumCap; ++i) work *= m;
  if (pairs > 20 || work > kBlockSumCap) {
    throw CapacityError("exact prefix law for k = " + std::to_string(k) + " exceeds the work cap");
  }
  const std::size_t masks = std::size_t{1} << pairs;
  std::vector<Rational> probs(masks, Rational(0));
  std::vector<std::size_t> z(k, 0);
  std::vector<Rational> table;
  // Visit every block assignment z in [m]^k.
  while (true) {
    Rational weight = 1;
    for (const auto a : z) weight *= w.mu()[a];
    // Product law over the pairs, built one pair at a time.
    table.assign(1, weight);
    for (std::size_t j = 1; j < k; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const Rational& p = w.w(z[i], z[j]);
        const Rational q = Rational(1) - p;
        const std::size_t half = table.size();
        table.resize(2 * half);
        for (std::size_t s = 0; s < half; ++s) {
          table[half + s] = table[s] * p;
          table[s] *= q;
        }
      }
    }
    for (std::size_t mask = 0; mask < masks; ++mask) probs[mask] += table[mask];

    std::size_t pos = 0;
    while (pos < k && ++z[pos] == m) z[pos++] = 0;
    if (pos == k) break;
  }
  PrefixLaw law;
  law.k = k;
  law.exact = true;
  for (std::size_t mask = 0; mask < masks; ++mask) law.probs.emplace(mask, std::move(probs[mask]));
  return law;
}

PrefixLaw prefix_law_empirical(const GraphSource& src, std::size_t k, std::size_t samples,
                               Rng& rng) {
  if (samples == 0) throw InputError("empirical prefix law needs samples");
  if (pair_count(k) > 64) throw CapacityError("prefix too long for edge masks");
  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(chunks);
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    for (std::size_t s = begin; s < end; ++s) ++partial[c][edge_mask(src.sample_prefix(k, local))];
  });
  PrefixLaw law;
  law.k = k;
  law.exact = false;
  law.total = samples;
  for (const auto& part : partial)
    for (const auto& [mask, count] : part) law.counts[mask] += count;
  return law;
}

double total_variation(const PrefixLaw& a, const PrefixLaw& b) {
  if (a.k != b.k) throw InputError("prefix laws have different sizes");
  const std::uint64_t masks = std::uint64_t{1} << pair_count(a.k);
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    sum += std::fabs(a.probability(mask) - b.probability(mask));
  }
  return sum / 2.0;
}

std::vector<std::vector<std::uint64_t>> isomorphism_classes(std::size_t k) {
  if (pair_count(k) > 20) throw CapacityError("too many labelled graphs to group");
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_code;
  const std::uint64_t masks = std::uint64_t{1} << pair_count(k);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    by_code[canonicalize(from_edge_mask(k, mask)).code()].push_back(mask);
  }
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(by_code.size());
  for (auto& [code, members] : by_code) out.push_back(std::move(members));
  return out;
}

Verdict exchangeability_test(const PrefixLaw& law, double alpha) {
  Verdict verdict;
  const auto classes = isomorphism_classes(law.k);
  if (law.exact) {
    for (const auto& members : classes) {
      auto value = [&](std::uint64_t mask) {
        const auto it = law.probs.find(mask);
        return it == law.probs.end() ? Rational(0) : it->second;
      };
      const Rational first = value(members.front());
      for (const auto mask : members) {
        ++verdict.comparisons;
        if (value(mask) != first) {
          verdict.consistent = false;
          verdict.p_min = 0.0;
          verdict.detail = "labelled graphs with masks " + std::to_string(members.front()) +
                           " and " + std::to_string(mask) + " are isomorphic but have " +
                           "probabilities " + format_exact(first) + " and " +
                           format_exact(value(mask));
          return verdict;
        }
      }
    }
    return verdict;
  }

  std::vector<HomogeneityResult> results;
  std::vector<std::size_t> tested;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& members = classes[c];
    if (members.size() < 2) continue;
    std::vector<std::uint64_t> counts;
    std::uint64_t class_total = 0;
    for (const auto mask : members) {
      const auto it = law.counts.find(mask);
      counts.push_back(it == law.counts.end() ? 0 : it->second);
      class_total += counts.back();
    }
    if (static_cast<double>(class_total) / static_cast<double>(members.size()) < kMinExpectedCount) {
      continue;
    }
    results.push_back(uniform_fit(counts));
    tested.push_back(c);
  }
  verdict.comparisons = results.size();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].p_value < verdict.p_min) {
      verdict.p_min = results[i].p_value;
      worst = i;
    }
  }
  if (!results.empty() &&
      verdict.p_min < alpha / static_cast<double>(results.size())) {
    verdict.consistent = false;
    std::ostringstream detail;
    detail << "isomorphism class containing mask " << classes[tested[worst]].front()
           << " is not uniform: chi2=" << results[worst].statistic
           << " df=" << results[worst].degrees_of_freedom;
    verdict.detail = detail.str();
  }
  return verdict;
}

namespace {

void validate_placed(const PlacedPattern& p, const char* which) {
  for (const auto& [u, v] : p.edges) {
    if (u == v) throw InputError(std::string(which) + " pattern has a self loop");
    const bool has_u = std::find(p.vertices.begin(), p.vertices.end(), u) != p.vertices.end();
    const bool has_v = std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end();
    if (!has_u || !has_v) {
      throw InputError(std::string(which) + " pattern has an edge outside its vertex set");
    }
  }
}

bool contains(const LabelledGraph& h, const PlacedPattern& p) {
  for (const auto& [u, v] : p.edges)
    if (!h.adjacent(u, v)) return false;
  return true;
}

}  // namespace

ExtremalityReport extremality_test(const GraphSource& src, std::span<const PatternPair> patterns,
                                   std::size_t samples, double alpha, Rng& rng) {
  if (patterns.empty()) throw InputError("extremality test needs at least one pattern pair");
  if (samples == 0) throw InputError("extremality test needs samples");
  std::size_t k = 0;
  for (const auto& pair : patterns) {
    validate_placed(pair.first, "first");
    validate_placed(pair.second, "second");
    for (const auto u : pair.first.vertices) {
      if (std::find(pair.second.vertices.begin(), pair.second.vertices.end(), u) !=
          pair.second.vertices.end()) {
        throw InputError("patterns in a pair must have disjoint vertex sets");
      }
    }
    for (const auto u : pair.first.vertices) k = std::max(k, u + 1);
    for (const auto u : pair.second.vertices) k = std::max(k, u + 1);
  }
  if (k > kPatternCap) {
    throw CapacityError("combined patterns need a prefix of " + std::to_string(k) +
                        " vertices; cap is " + std::to_string(kPatternCap));
  }

  const std::uint64_t key = rng.next_u64();
  const std::size_t chunks = chunk_count(samples);
  std::vector<std::vector<PairCounts>> partial(chunks, std::vector<PairCounts>(patterns.size()));
  for_each_chunk(chunks, [&](std::size_t c) {
    Rng local(key, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(samples, begin + kChunkSamples);
    auto& counts = partial[c];
    for (std::size_t s = begin; s < end; ++s) {
      const LabelledGraph h = src.sample_prefix(k, local);
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const bool a = contains(h, patterns[i].first);
        const bool b = contains(h, patterns[i].second);
        counts[i].first += a;
        counts[i].second += b;
        counts[i].both += a && b;
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

namespace {

PlacedPattern parse_placed(const std::string& text, std::size_t line) {
  const auto fail = [&](const std::string& why) {
    throw InputError("pairs line " + std::to_string(line) + ": " + why);
  };
  const auto id = [&](std::string_view token) {
    const auto digits = token.find_first_not_of("0123456789");
    if (token.empty() || digits != std::string_view::npos) fail("bad vertex id '" + std::string(token) + "'");
    const auto v = detail::parse_count(token);
    if (v == 0) fail("vertex ids are 1-based");
    return static_cast<Vertex>(v - 1);
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail("expected 'vertices:edges'");
  PlacedPattern p;
  std::string verts = text.substr(0, colon);
  std::replace(verts.begin(), verts.end(), ',', ' ');
  std::istringstream vin(verts);
  for (std::string token; vin >> token;) {
    const Vertex v = id(token);
    if (std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end()) fail("repeated vertex");
    p.vertices.push_back(v);
  }
  if (p.vertices.empty()) fail("empty vertex list");
  std::string edges = text.substr(colon + 1);
  std::replace(edges.begin(), edges.end(), ',', ' ');
  std::istringstream ein(edges);
  for (std::string token; ein >> token;) {
    const auto dash = token.find('-');
    if (dash == std::string::npos) fail("edges are written u-v");
    const std::string_view view(token);
    const Vertex u = id(view.substr(0, dash));
    const Vertex v = id(view.substr(dash + 1));
    for (const Vertex x : {u, v}) {
      if (std::find(p.vertices.begin(), p.vertices.end(), x) == p.vertices.end()) {
        fail("edge " + token + " leaves its vertex list");
      }
    }
    p.edges.emplace_back(u, v);
  }
  return p;
}

}  // namespace

std::vector<PatternPair> read_pattern_pairs(std::istream& in) {
  std::vector<PatternPair> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) {
      throw InputError("pairs line " + std::to_string(number) + ": expected 'F1 | F2'");
    }
    out.push_back({parse_placed(line.substr(0, bar), number),
                   parse_placed(line.substr(bar + 1), number)});
  }
  if (out.empty()) throw InputError("pairs file lists no pattern pairs");
  return out;
}

Correspondence correspondence_check(const StepGraphon& w, const UnlabelledGraph& f, std::size_t k) {
  if (f.order() > k) throw InputError("pattern has more vertices than the prefix");
  LabelledGraph padded(k);
  for (const auto& [u, v] : f.canon().edges()) padded.add_edge(u, v);
  const PrefixLaw law = prefix_law_exact(w, k);
  Correspondence out;
  out.lhs = exact_density(f, w);
  out.rhs = 0;
  for (const auto mask : supergraph_masks(padded)) out.rhs += law.probs.at(mask);
  out.gap = abs(out.lhs - out.rhs);
  return out;
}

std::vector<Rational> martingale_trace(const GraphSource& src, const LabelledGraph& pattern,
                                       std::span<const std::size_t> n_grid, Rng& rng) {
  if (n_grid.empty()) throw InputError("trace grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < pattern.order()) throw InputError("trace grid sizes must be at least v(F)");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw InputError("trace grid must be increasing");
  }
  const LabelledGraph h = src.sample_prefix(n_grid.back(), rng);
  std::vector<Rational> out;
  out.reserve(n_grid.size());
  for (const auto n : n_grid) out.push_back(t_ind(pattern, h.prefix(n)));
  return out;
}

}  // namespace graphonlab
