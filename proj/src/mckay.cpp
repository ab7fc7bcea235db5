#include "regspec/mckay.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/parallel.hpp"
#include "regspec/rng.hpp"

namespace regspec {

std::int64_t falling_factorial(std::int64_t a, std::int64_t b) {
  if (b < 0) throw validation_error("falling factorial needs b >= 0");
  if (b > a) return 0;
  __int128 r = 1;
  for (std::int64_t i = 0; i < b; ++i) {
    r *= (a - i);
    if (r > std::numeric_limits<std::int64_t>::max())
      throw validation_error("falling factorial overflows 64-bit range; "
                             "use log_falling_factorial");
  }
  return static_cast<std::int64_t>(r);
}

double log_falling_factorial(double a, std::int64_t b) {
  if (b < 0 || static_cast<double>(b) > a)
    throw validation_error("log falling factorial needs 0 <= b <= a");
  return std::lgamma(a + 1.0) - std::lgamma(a - static_cast<double>(b) + 1.0);
}

namespace {

// a^[b] as a double; switches to log-space past 30 factors, where the
// documented relative error stays well under 1e-12
double dff(double a, std::int64_t b) {
  if (b > 30) return std::exp(log_falling_factorial(a, b));
  double r = 1.0;
  for (std::int64_t i = 0; i < b; ++i) r *= a - static_cast<double>(i);
  return r;
}

}  // namespace

FlBounds fl_bounds(const SubgraphPattern& pattern, int n_vertices, int degree) {
  const double d = degree;
  const std::int64_t eg2 = static_cast<std::int64_t>(n_vertices) * degree;
  if (eg2 % 2 != 0) throw validation_error("N*d must be even");
  const double eg = static_cast<double>(eg2) / 2.0;
  const std::int64_t el = pattern.edge_count();
  if (el == 0) throw validation_error("pattern must have at least one edge");

  for (int lu : pattern.degrees())
    if (lu > degree)
      throw validation_error("pattern degree " + std::to_string(lu) + " exceeds d=" +
                             std::to_string(degree));
  if (eg - static_cast<double>(el) < 3.0 * d * (d + 1.0))
    throw validation_error("McKay hypothesis E_G - E_L >= 3d(d+1) violated "
                           "(E_G=" + std::to_string(eg) + ", E_L=" + std::to_string(el) + ")");

  double log_base = -static_cast<double>(el) * std::log(2.0) - log_falling_factorial(eg, el);
  for (int lu : pattern.degrees())
    if (lu > 0) log_base += log_falling_factorial(d, lu);

  FlBounds out;
  out.base = std::exp(log_base);

  // Euler's e in the xi denominator
  const double euler_factor = (std::exp(1.0) - 1.0) / std::exp(1.0);
  const double numer = 1.0 - d * (d + 1.0) / (2.0 * (eg - el - 2.0 * d * (d + 1.0)));
  const double denom = 1.0 + d * d / (2.0 * (eg - 2.0 * d * d - euler_factor * el));
  out.xi = std::pow(numer / denom, static_cast<double>(el)) *
           (dff(eg, el) / dff(eg - 1.0, el));
  out.Xi = dff(eg, el) / dff(eg - 2.0 * d * d, el);

  out.lower = out.xi * out.base;
  if (out.lower < 0.0) {
    out.lower = 0.0;
    out.lower_clamped = true;
  }
  out.upper = out.Xi * out.base;
  return out;
}

McEstimate mc_subgraph_frequency(const SubgraphPattern& pattern, int n_vertices, int degree,
                                 std::int64_t n_samples, std::uint64_t seed, int threads) {
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  if (pattern.max_vertex() >= n_vertices)
    throw validation_error("pattern vertex out of range for N=" + std::to_string(n_vertices));

  std::atomic<std::int64_t> hits{0};
  parallel_for_index(n_samples, threads, [&](std::int64_t i) {
    const RegularGraph g = sample_regular_graph(n_vertices, degree, derive_seed(seed, i));
    if (contains_subgraph(g, pattern)) hits.fetch_add(1, std::memory_order_relaxed);
  });

  McEstimate est;
  est.n_samples = n_samples;
  est.estimate = static_cast<double>(hits.load()) / static_cast<double>(n_samples);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n_samples));
  return est;
}

nlohmann::json mckay_report(const std::string& pattern_name, const SubgraphPattern& pattern,
                            int n_vertices, int degree, const FlBounds& bounds,
                            const McEstimate& mc) {
  const double slack = 3.0 * mc.standard_error;
  nlohmann::json j;
  j["pattern"] = pattern_name;
  auto& edges = j["pattern_edges"] = nlohmann::json::array();
  for (const Edge& e : pattern.edges) edges.push_back({e.u, e.v});
  j["N"] = n_vertices;
  j["d"] = degree;
  j["lower"] = bounds.lower;
  j["upper"] = bounds.upper;
  j["lower_clamped"] = bounds.lower_clamped;
  j["estimate"] = mc.estimate;
  j["stderr"] = mc.standard_error;
  j["samples"] = mc.n_samples;
  j["within_bounds"] =
      mc.estimate >= bounds.lower - slack && mc.estimate <= bounds.upper + slack;
  return j;
}

}  // namespace regspec
