#include "graphonlab/stats.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "graphonlab/errors.hpp"

namespace graphonlab {

double chi_square_sf(double statistic, double degrees_of_freedom) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

HomogeneityResult uniform_fit(std::span<const std::uint64_t> counts) {
  HomogeneityResult out;
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  if (counts.size() < 2 || total == 0) return out;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  for (const auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    out.statistic += diff * diff / expected;
  }
  out.degrees_of_freedom = static_cast<double>(counts.size() - 1);
  out.p_value = chi_square_sf(out.statistic, out.degrees_of_freedom);
  return out;
}

ProductIdentityResult product_identity_test(const PairCounts& counts) {
  if (counts.samples == 0) throw InputError("product identity test needs samples");
  if (counts.both > counts.first || counts.both > counts.second ||
      counts.first > counts.samples || counts.second > counts.samples) {
    throw InputError("inconsistent joint counts");
  }
  ProductIdentityResult out;
  const double n = static_cast<double>(counts.samples);
  const double a = static_cast<double>(counts.first) / n;
  const double b = static_cast<double>(counts.second) / n;
  const double ab = static_cast<double>(counts.both) / n;
  out.p_first = a;
  out.p_second = b;
  out.p_both = ab;
  out.difference = ab - a * b;
  // Var(1{AB} - b 1{A} - a 1{B}) expanded with E[1{AB}1{A}] = E[1{A}1{B}] = ab.
  const double variance = ab * (1 - ab) + b * b * a * (1 - a) + a * a * b * (1 - b) -
                          2 * b * ab * (1 - a) - 2 * a * ab * (1 - b) +
                          2 * a * b * (ab - a * b);
  out.std_error = std::sqrt(std::max(variance, 0.0) / n);
  if (out.std_error > 0.0) {
    out.z = out.difference / out.std_error;
    out.p_value = normal_two_sided_p(out.z);
  } else {
    out.z = 0.0;
    out.p_value = out.difference == 0.0 ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace graphonlab
