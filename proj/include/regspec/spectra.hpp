#ifndef REGSPEC_SPECTRA_HPP
#define REGSPEC_SPECTRA_HPP

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regspec/graph.hpp"
#include "regspec/weights.hpp"

namespace regspec {

// Full spectrum, ascending. Input must be Hermitian within 1e-10.
std::vector<double> eigenvalues(const HermitianMatrix& matrix);
std::vector<double> eigenvalues(const HermitianMatrixR& matrix);
std::vector<double> eigenvalues(const HermitianMatrixC& matrix);

// 2 (d(d-1)/(d-2)^2 N)^{2/3} { lambda_max / (2 sqrt(d-1)) - 1 }
double scaled_max(double lambda_max, double n_vertices, int degree);
// -2 (d(d-1)/(d-2)^2 N)^{2/3} { lambda_min / (2 sqrt(d-1)) + 1 }
double scaled_min(double lambda_min, double n_vertices, int degree);

struct ScaledSample {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  double lambda_min = 0;
  double lambda_max = 0;
  double scaled_min = 0;
  double scaled_max = 0;
};

// n_samples independent (graph, weights) draws -> spectra -> scaled extreme
// statistics. skip_top discards that many of the largest eigenvalues before
// taking lambda_max (skip_top=1 gives the second-largest eigenvalue of the
// unsigned adjacency matrix, the exploratory statistic).
std::vector<ScaledSample> ensemble_scaled_statistics(int n_vertices, int degree,
                                                     const WeightEnsemble& ensemble,
                                                     std::int64_t n_samples, std::uint64_t seed,
                                                     int threads = 0, int skip_top = 0);

enum class GoeSampler { dense, tridiagonal };

// Samples of the scaled largest eigenvalue 2 N'^{2/3} (lambda_max /
// (2 sqrt(N')) - 1) of the Gaussian beta-ensemble, beta = 1 (GOE) or 2 (GUE),
// centered at the ensemble's asymptotic edge. The tridiagonal sampler draws
// the Dumitriu–Edelman model and finds lambda_max by Sturm bisection.
std::vector<double> goe_scaled_statistics(int n_prime, std::int64_t n_samples,
                                          std::uint64_t seed, int beta = 1,
                                          GoeSampler sampler = GoeSampler::tridiagonal,
                                          int threads = 0);

// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
// bisection; diag has size n, sub has size n-1.
double tridiagonal_lambda_max(const std::vector<double>& diag, const std::vector<double>& sub);

struct KsResult {
  double statistic = 0;       // sup |F_a - F_b|
  double threshold = 0;       // c(alpha) sqrt((m+n)/(mn))
  double alpha = 0;
  bool below_threshold = false;
};

// Exact two-sample Kolmogorov–Smirnov distance with the asymptotic rejection
// threshold c(alpha) = sqrt(-ln(alpha/2)/2); c(0.01) = 1.628.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha = 0.01);

nlohmann::json ks_to_json(const KsResult& ks);

}  // namespace regspec

#endif  // REGSPEC_SPECTRA_HPP
