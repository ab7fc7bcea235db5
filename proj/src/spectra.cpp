#include "regspec/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/parallel.hpp"
#include "regspec/rng.hpp"

namespace regspec {

namespace {

template <typename Scalar>
std::vector<double> eig_sorted(const HermitianMatrixT<Scalar>& m) {
  const double defect = (m.dense - m.dense.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw validation_error("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<typename HermitianMatrixT<Scalar>::Dense> solver(
      m.dense, Eigen::EigenvaluesOnly);
  const auto& vals = solver.eigenvalues();
  std::vector<double> out(vals.data(), vals.data() + vals.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> eigenvalues(const HermitianMatrixR& m) { return eig_sorted(m); }
std::vector<double> eigenvalues(const HermitianMatrixC& m) { return eig_sorted(m); }
std::vector<double> eigenvalues(const HermitianMatrix& m) {
  return std::visit([](const auto& mat) { return eig_sorted(mat); }, m);
}

namespace {

double edge_scale(double n_vertices, int d) {
  const double dd = d;
  return 2.0 * std::pow(dd * (dd - 1.0) / ((dd - 2.0) * (dd - 2.0)) * n_vertices, 2.0 / 3.0);
}

}  // namespace

double scaled_max(double lambda_max, double n_vertices, int degree) {
  if (degree < 3) throw validation_error("scaled_max requires d >= 3");
  return edge_scale(n_vertices, degree) *
         (lambda_max / (2.0 * std::sqrt(static_cast<double>(degree - 1))) - 1.0);
}

double scaled_min(double lambda_min, double n_vertices, int degree) {
  if (degree < 3) throw validation_error("scaled_min requires d >= 3");
  return -edge_scale(n_vertices, degree) *
         (lambda_min / (2.0 * std::sqrt(static_cast<double>(degree - 1))) + 1.0);
}

std::vector<ScaledSample> ensemble_scaled_statistics(int n_vertices, int degree,
                                                     const WeightEnsemble& ensemble,
                                                     std::int64_t n_samples, std::uint64_t seed,
                                                     int threads, int skip_top) {
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  if (skip_top < 0 || skip_top >= n_vertices)
    throw validation_error("skip_top out of range");
  std::vector<ScaledSample> out(static_cast<std::size_t>(n_samples));
  parallel_for_index(n_samples, threads, [&](std::int64_t i) {
    const std::uint64_t graph_seed = derive_seed(seed, 2 * i);
    const std::uint64_t weight_seed = derive_seed(seed, 2 * i + 1);
    const RegularGraph g = sample_regular_graph(n_vertices, degree, graph_seed);
    const WeightAssignment w = assign_weights(g, ensemble, weight_seed);
    const std::vector<double> lams = eigenvalues(build_matrix(g, w));
    ScaledSample& rec = out[static_cast<std::size_t>(i)];
    rec.index = i;
    rec.seed = graph_seed;
    rec.lambda_min = lams.front();
    rec.lambda_max = lams[lams.size() - 1 - static_cast<std::size_t>(skip_top)];
    rec.scaled_min = scaled_min(rec.lambda_min, n_vertices, degree);
    rec.scaled_max = scaled_max(rec.lambda_max, n_vertices, degree);
  });
  return out;
}

double tridiagonal_lambda_max(const std::vector<double>& diag, const std::vector<double>& sub) {
  const std::size_t n = diag.size();
  if (n == 0) throw validation_error("empty tridiagonal matrix");
  if (sub.size() + 1 != n) throw validation_error("sub size must be diag size - 1");

  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(sub[i - 1]) : 0.0) + (i + 1 < n ? std::abs(sub[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }

  // Sturm count: number of eigenvalues strictly below x
  const double tiny = 1e-300;
  auto count_below = [&](double x) {
    int count = 0;
    double q = diag[0] - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
      if (q == 0.0) q = tiny;
      q = diag[i] - x - sub[i - 1] * sub[i - 1] / q;
      if (q < 0) ++count;
    }
    return count;
  };

  const double span = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  const double tol = 1e-12 * span;
  const int all_below = static_cast<int>(n);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) == all_below)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Parallel to the graph statistic, which centers at the asymptotic spectral
// edge 2 sqrt(d-1): the beta-ensemble edge under this normalization is
// 2 sqrt(N'), so that is the centering. (2 sqrt(N'-2) is the Chebyshev trace
// normalization, not the edge; using it would shift every sample by
// ~ +2 N'^{-1/3}.)
double goe_edge_statistic(double lambda_max, int n_prime) {
  return 2.0 * std::pow(static_cast<double>(n_prime), 2.0 / 3.0) *
         (lambda_max / (2.0 * std::sqrt(static_cast<double>(n_prime))) - 1.0);
}

double dense_beta_lambda_max(int n, int beta, Rng& rng) {
  if (beta == 1) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      a(i, i) = std::sqrt(2.0) * rng.normal();
      for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = rng.normal();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
  }
  Eigen::MatrixXcd a(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    a(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> z(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

// Dumitriu–Edelman beta-Hermite model, normalized so that beta=1 matches the
// dense sampler above (diagonal variance 2, off-diagonal variance 1) and
// beta=2 matches the dense GUE (diagonal variance 1, E|offdiag|^2 = 1).
double tridiagonal_beta_lambda_max(int n, int beta, Rng& rng) {
  std::vector<double> diag(static_cast<std::size_t>(n)), sub(static_cast<std::size_t>(n) - 1);
  const double diag_sd = beta == 1 ? std::sqrt(2.0) : 1.0;
  const double sub_scale = beta == 1 ? 1.0 : 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = diag_sd * rng.normal();
  for (int k = 1; k < n; ++k)
    sub[static_cast<std::size_t>(k - 1)] =
        sub_scale * rng.chi(static_cast<double>(beta) * static_cast<double>(n - k));
  return tridiagonal_lambda_max(diag, sub);
}

}  // namespace

std::vector<double> goe_scaled_statistics(int n_prime, std::int64_t n_samples,
                                          std::uint64_t seed, int beta, GoeSampler sampler,
                                          int threads) {
  if (n_prime < 4) throw validation_error("N' >= 4 required");
  if (beta != 1 && beta != 2) throw validation_error("beta must be 1 (GOE) or 2 (GUE)");
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  std::vector<double> out(static_cast<std::size_t>(n_samples));
  parallel_for_index(n_samples, threads, [&](std::int64_t i) {
    Rng rng(derive_seed(seed, i));
    const double lmax = sampler == GoeSampler::dense
                            ? dense_beta_lambda_max(n_prime, beta, rng)
                            : tridiagonal_beta_lambda_max(n_prime, beta, rng);
    out[static_cast<std::size_t>(i)] = goe_edge_statistic(lmax, n_prime);
  });
  return out;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.empty() || b.empty()) throw validation_error("KS test needs nonempty samples");
  if (alpha <= 0.0 || alpha >= 1.0) throw validation_error("alpha must be in (0,1)");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());

  double stat = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    stat = std::max(stat, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }

  KsResult ks;
  ks.statistic = stat;
  ks.alpha = alpha;
  ks.threshold = std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt((m + n) / (m * n));
  ks.below_threshold = stat <= ks.threshold;
  return ks;
}

nlohmann::json ks_to_json(const KsResult& ks) {
  return nlohmann::json{{"statistic", ks.statistic},
                        {"threshold", ks.threshold},
                        {"alpha", ks.alpha},
                        {"below_threshold", ks.below_threshold}};
}

}  // namespace regspec
