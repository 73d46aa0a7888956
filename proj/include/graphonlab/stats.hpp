#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace graphonlab {

// Upper tail P(X >= statistic) for a chi-square variable.
double chi_square_sf(double statistic, double degrees_of_freedom);

// Two-sided normal tail P(|Z| >= |z|).
double normal_two_sided_p(double z);

struct HomogeneityResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

// Chi-square goodness of fit of `counts` to the uniform distribution over
// its cells. Fewer than two cells or no observations give p = 1.
HomogeneityResult uniform_fit(std::span<const std::uint64_t> counts);

// Joint occurrence counts of two events A and B over `samples` trials.
struct PairCounts {
  std::uint64_t samples = 0;
  std::uint64_t first = 0;   // A
  std::uint64_t second = 0;  // B
  std::uint64_t both = 0;    // A and B
};

struct ProductIdentityResult {
  double p_first = 0.0;
  double p_second = 0.0;
  double p_both = 0.0;
  double difference = 0.0;  // p_both - p_first p_second
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

// Delta-method z-test of P(A and B) = P(A) P(B). The influence function of
// the plug-in difference is 1{AB} - P(B) 1{A} - P(A) 1{B}; its sample
// variance over n gives the standard error.
ProductIdentityResult product_identity_test(const PairCounts& counts);

}  // namespace graphonlab
