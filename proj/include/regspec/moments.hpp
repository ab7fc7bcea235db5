#ifndef REGSPEC_MOMENTS_HPP
#define REGSPEC_MOMENTS_HPP

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "regspec/mckay.hpp"
#include "regspec/weights.hpp"

namespace regspec {

// N' = floor(d(d-1)/(d-2)^2 * N), the GOE dimension matched to (N, d).
std::int64_t n_prime(std::int64_t n_vertices, int degree);

// Truncated closed-form series; s_terms = 0 means min(6, D1-table depth).
// All are evaluated term-by-term in log space with compensated summation.
double series_p2n(double n_vertices, int degree, std::int64_t n, int s_terms = 0);
double series_trace_u(double n_vertices, int degree, std::int64_t n, int s_terms = 0);
double series_goe(double n_prime_dim, std::int64_t n, int s_terms = 0);

// n (d-2) (d-1)^{n-1} exp{ C n^{3/2} / sqrt(N) (1 + d/sqrt(nN)) }, for n <= N.
double upper_bound_p2n(double n_vertices, int degree, std::int64_t n, double bound_constant);

enum class TraceForm {
  m2n,      // tr M^(index)
  trace_u,  // tr U_index(M / (2 sqrt(d-1)))
};

enum class TraceEstimator {
  automatic,   // exact for N <= 2000, Hutchinson above
  exact,       // per-basis-vector three-term recursion, O(index * d * N^2)
  hutchinson,  // +-1 probe vectors, O(index * d * N * probes)
};

inline constexpr int kDefaultProbes = 64;

// Monte Carlo average of the chosen trace functional over independent
// (graph, weights) draws. `index` is the full superscript: pass 2n for the
// paper's even moments; odd indices are supported for the vanishing checks.
McEstimate mc_trace_moment(int n_vertices, int degree, const WeightEnsemble& ensemble,
                           int index, std::int64_t n_samples, std::uint64_t seed,
                           TraceForm form = TraceForm::trace_u,
                           TraceEstimator estimator = TraceEstimator::automatic,
                           int probes = kDefaultProbes, int threads = 0);

// Monte Carlo average of tr U_index(A / (2 sqrt(N'-2))) over Gaussian Wigner
// draws (off-diagonal variance 1). zero_diagonal=true samples the matrix the
// diagram expansion actually counts (no loops); false gives the standard GOE
// diagonal with variance 2.
McEstimate goe_sample_trace(int n_prime_dim, int index, std::int64_t n_samples,
                            std::uint64_t seed, bool zero_diagonal = true, int threads = 0);

nlohmann::json moment_report(const char* kind, const nlohmann::json& params,
                             const McEstimate& mc, double series);

}  // namespace regspec

#endif  // REGSPEC_MOMENTS_HPP
