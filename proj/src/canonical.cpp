#include "graphonlab/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "graphonlab/errors.hpp"

namespace graphonlab {

namespace {

// Branch-and-bound search for the minimum code. Position j is filled with a
// vertex of degree class required_class[j]; placing it fixes the code bits of
// pairs (0,j) .. (j-1,j), which form the next block of the code, so a prefix
// already larger than the best code can be abandoned.
class MinCodeSearch {
 public:
  explicit MinCodeSearch(const LabelledGraph& g) : g_(g), n_(g.order()), bits_(pair_count(n_)) {
    degree_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) degree_[v] = g.degree(v);
    std::vector<std::size_t> sorted = degree_;
    std::sort(sorted.begin(), sorted.end());
    required_degree_ = sorted;
    placed_.assign(n_, 0);
    used_.assign(n_, false);
  }

  std::pair<std::vector<Vertex>, std::uint64_t> run() {
    if (n_ <= 1) {
      best_order_.assign(n_, 0);
      return {best_order_, 0};
    }
    search(0, 0);
    return {best_order_, best_code_};
  }

 private:
  void search(std::size_t position, std::uint64_t code) {
    if (position == n_) {
      if (!have_best_ || code < best_code_) {
        have_best_ = true;
        best_code_ = code;
        best_order_ = placed_;
      }
      return;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (used_[v] || degree_[v] != required_degree_[position]) continue;
      std::uint64_t next = code;
      for (std::size_t i = 0; i < position; ++i) {
        if (g_.adjacent(placed_[i], v)) {
          next |= std::uint64_t{1} << (bits_ - 1 - pair_index(i, position));
        }
      }
      if (have_best_) {
        const std::size_t known = pair_count(position + 1);
        const std::size_t shift = bits_ - known;
        if ((next >> shift) > (best_code_ >> shift)) continue;
      }
      used_[v] = true;
      placed_[position] = v;
      search(position + 1, next);
      used_[v] = false;
    }
  }

  const LabelledGraph& g_;
  std::size_t n_;
  std::size_t bits_;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> required_degree_;
  std::vector<Vertex> placed_;
  std::vector<bool> used_;
  bool have_best_ = false;
  std::uint64_t best_code_ = 0;
  std::vector<Vertex> best_order_;
};

}  // namespace

UnlabelledGraph canonicalize(const LabelledGraph& g) {
  if (g.order() > kCanonicalCap) {
    throw CapacityError("canonicalization is capped at " + std::to_string(kCanonicalCap) +
                        " vertices, got " + std::to_string(g.order()));
  }
  auto [order, code] = MinCodeSearch(g).run();
  // order[position] = original vertex; invert it to a relabelling.
  std::vector<Vertex> relabel(g.order());
  for (std::size_t pos = 0; pos < order.size(); ++pos) relabel[order[pos]] = pos;
  return UnlabelledGraph(g.relabelled(relabel), code);
}

GraphEnumeration enumerate_unlabelled(std::size_t max_n, std::size_t cap) {
  if (max_n > cap) {
    throw CapacityError("enumeration is capped at " + std::to_string(cap) + " vertices");
  }
  GraphEnumeration out;
  out.max_n = max_n;
  if (max_n == 0) return out;

  std::vector<UnlabelledGraph> layer{canonicalize(LabelledGraph(1))};
  out.list = layer;
  // Every graph on n vertices arises from one on n-1 vertices by adding a
  // vertex joined to some subset of the old ones.
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::set<UnlabelledGraph> next;
    for (const auto& base : layer) {
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << (n - 1)); ++subset) {
        LabelledGraph g(n);
        for (const auto& [u, v] : base.canon().edges()) g.add_edge(u, v);
        for (Vertex u = 0; u + 1 < n; ++u)
          if ((subset >> u) & 1U) g.add_edge(u, n - 1);
        next.insert(canonicalize(g));
      }
    }
    layer.assign(next.begin(), next.end());
    out.list.insert(out.list.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace graphonlab
