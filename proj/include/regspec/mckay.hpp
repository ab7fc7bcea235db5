#ifndef REGSPEC_MCKAY_HPP
#define REGSPEC_MCKAY_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "regspec/graph.hpp"

namespace regspec {

// a^[b] = a (a-1) ... (a-b+1), exact. b > a yields 0.
std::int64_t falling_factorial(std::int64_t a, std::int64_t b);

// log of a^[b] for 0 <= b <= a, for the overflow-prone regimes
double log_falling_factorial(double a, std::int64_t b);

struct FlBounds {
  double lower = 0;  // max(0, xi * base)
  double upper = 0;  // Xi * base
  double base = 0;   // prod_u d^[l_u] / (2^{E_L} E_G^[E_L])
  double xi = 0;
  double Xi = 0;
  bool lower_clamped = false;  // xi went negative and the lower bound was clamped to 0
};

// McKay's sandwich for the probability that a random d-regular graph on N
// vertices contains the fixed labelled subgraph L. Requires the Proposition's
// hypothesis E_G - E_L >= 3d(d+1) and every pattern degree <= d.
FlBounds fl_bounds(const SubgraphPattern& pattern, int n_vertices, int degree);

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::int64_t n_samples = 0;
};

// Monte Carlo containment frequency of a fixed labelled pattern over uniform
// d-regular graphs; binomial standard error. Sample i is derived from
// (seed, i), so results are independent of the worker count.
McEstimate mc_subgraph_frequency(const SubgraphPattern& pattern, int n_vertices, int degree,
                                 std::int64_t n_samples, std::uint64_t seed, int threads = 0);

nlohmann::json mckay_report(const std::string& pattern_name, const SubgraphPattern& pattern,
                            int n_vertices, int degree, const FlBounds& bounds,
                            const McEstimate& mc);

}  // namespace regspec

#endif  // REGSPEC_MCKAY_HPP
