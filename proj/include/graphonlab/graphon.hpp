#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "graphonlab/densities.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Dense row-major square matrix of exact values.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols, const Rational& fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Symmetric step function on [0,1]^2: block a occupies an interval of
// length mu[a] and W = w(a,b) on block (a,b).
class StepGraphon {
 public:
  // Validates positivity and unit sum of mu, symmetry and range of w.
  StepGraphon(std::vector<Rational> mu, RationalMatrix w);

  static StepGraphon constant(const Rational& p);

  std::size_t blocks() const { return mu_.size(); }
  const std::vector<Rational>& mu() const { return mu_; }
  const RationalMatrix& w() const { return w_; }
  const Rational& w(std::size_t a, std::size_t b) const { return w_(a, b); }

  // Floating copies used by the samplers.
  const std::vector<double>& cumulative_mu() const { return cumulative_; }
  double w_double(std::size_t a, std::size_t b) const { return w_double_[a * blocks() + b]; }

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.mu_ == b.mu_ && a.w_ == b.w_;
  }

 private:
  std::vector<Rational> mu_;
  RationalMatrix w_;
  std::vector<double> cumulative_;
  std::vector<double> w_double_;
};

// Arbitrary symmetric kernel, evaluated pointwise; Monte Carlo only.
class GeneralGraphon {
 public:
  using Kernel = std::function<double(double, double)>;

  // Spot-checks symmetry and range on a grid of `grid` x `grid` points.
  explicit GeneralGraphon(Kernel kernel, std::size_t grid = 17);

  double operator()(double x, double y) const { return kernel_(x, y); }

 private:
  Kernel kernel_;
};

// G(n,W): iid latent labels, then independent edges with probability W.
LabelledGraph sample_w_random(const StepGraphon& w, std::size_t n, Rng& rng);
LabelledGraph sample_w_random(const GeneralGraphon& w, std::size_t n, Rng& rng);

// Two blocks of measure theta and 1-theta with within-block probabilities
// p and p', across p''. Degenerate theta collapses to a single block.
StepGraphon boys_girls(const Rational& theta, const Rational& p, const Rational& p_prime,
                       const Rational& p_dblprime);

// Adjacency matrix of g as a step graphon with uniform blocks.
StepGraphon graph_as_graphon(const LabelledGraph& g);

inline constexpr std::uint64_t kBlockSumCap = 10'000'000;

// Integral of prod_{ij in E(F)} W(x_i, x_j), evaluated as a sum over block
// assignments. Throws CapacityError when m^v(F) exceeds kBlockSumCap.
Rational exact_density(const LabelledGraph& pattern, const StepGraphon& w);
inline Rational exact_density(const UnlabelledGraph& f, const StepGraphon& w) {
  return exact_density(f.canon(), w);
}

// P(G(k,W) = F) for the labelled pattern F on [k]: the block sum with
// factor W on edges and 1 - W on non-edges.
Rational exact_induced_density(const LabelledGraph& pattern, const StepGraphon& w);

DensityEstimate mc_density(const LabelledGraph& pattern, const GeneralGraphon& w,
                           std::size_t samples, Rng& rng, double alpha = kDefaultAlpha);

// Limit analogue of tau_plus: densities over the enumeration, size term 0.
DensityVector tau_plus(const StepGraphon& w, const GraphEnumeration& enumeration);

// Measure-preserving map between step partitions: target block j has
// measure measure[j] and is sent into source block source[j].
struct BlockMap {
  std::vector<std::size_t> source;
  std::vector<Rational> measure;

  static BlockMap identity(const StepGraphon& w);
  // Target block j is source block order[j].
  static BlockMap permutation(const StepGraphon& w, std::span<const std::size_t> order);
  // Splits `block` into pieces of measure fraction*mu and (1-fraction)*mu,
  // placed at positions block and block+1.
  static BlockMap split(const StepGraphon& w, std::size_t block, const Rational& fraction);
  // Splits every block into pieces of measure 1/cells; each mu must be a
  // multiple of 1/cells.
  static BlockMap equal_grid(const StepGraphon& w, std::size_t cells);
};

// W^phi(x,y) = W(phi(x), phi(y)) as a step graphon on the map's target blocks.
StepGraphon pushforward(const StepGraphon& w, const BlockMap& map);

// Signed step kernel with block measures; entries are arbitrary reals.
struct SignedStepKernel {
  std::vector<Rational> mu;
  RationalMatrix d;
};

SignedStepKernel difference(const StepGraphon& a, const StepGraphon& b);

inline constexpr std::size_t kCutNormBlockCap = 16;

// max over S,T of |sum_{a in S, b in T} mu_a mu_b D(a,b)|, found exactly by
// enumerating S and choosing the best T for each.
Rational cut_norm(const SignedStepKernel& d);

inline constexpr std::size_t kCutDistanceBlockCap = 8;

// min over block permutations pi with mu2[pi(i)] = mu1[i] of
// cut_norm(W1 - W2 o pi). An upper bound on the cut distance. Throws
// InputError when no such permutation exists.
Rational cut_distance_upper(const StepGraphon& a, const StepGraphon& b);

// Text format: "m", a line of m measures, then m rows of m entries.
StepGraphon read_step_graphon(std::istream& in);
void write_step_graphon(std::ostream& out, const StepGraphon& w);

}  // namespace graphonlab
