#include "regspec/moments.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "regspec/diagrams.hpp"
#include "regspec/errors.hpp"
#include "regspec/parallel.hpp"
#include "regspec/rng.hpp"

namespace regspec {

std::int64_t n_prime(std::int64_t n_vertices, int degree) {
  if (degree < 3) throw validation_error("n_prime requires d >= 3");
  const std::int64_t d = degree;
  return d * (d - 1) * n_vertices / ((d - 2) * (d - 2));
}

namespace {

int resolve_s_terms(int s_terms) {
  const int available = static_cast<int>(d1_table().size());
  if (s_terms == 0) return std::min(6, available);
  if (s_terms < 0) throw validation_error("s_terms must be positive");
  if (s_terms > available)
    throw validation_error("D1 table holds " + std::to_string(available) +
                           " entries, requested s_terms=" + std::to_string(s_terms));
  return s_terms;
}

double kahan_sum_exp(const std::vector<double>& log_terms) {
  double sum = 0.0, comp = 0.0;
  for (double lt : log_terms) {
    const double y = std::exp(lt) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double series_p2n(double n_vertices, int degree, std::int64_t n, int s_terms) {
  if (degree < 3 || n < 1 || n_vertices < 1)
    throw validation_error("series_p2n requires d >= 3, n >= 1, N >= 1");
  const int terms = resolve_s_terms(s_terms);
  const double d = degree;
  const double ln_n = std::log(static_cast<double>(n));
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(terms));
  for (int s = 1; s <= terms; ++s) {
    log_terms.push_back(static_cast<double>(n) * std::log(d - 1.0) +
                        (2.0 * s - 1.0) * std::log(d - 2.0) - (s - 1.0) * std::log(d) -
                        s * std::log(d - 1.0) - (s - 1.0) * std::log(n_vertices) +
                        (3.0 * s - 2.0) * ln_n - std::lgamma(3.0 * s - 1.0) +
                        std::log(static_cast<double>(d1_table()[s - 1])));
  }
  return kahan_sum_exp(log_terms);
}

double series_trace_u(double n_vertices, int degree, std::int64_t n, int s_terms) {
  if (degree < 3 || n < 1 || n_vertices < 1)
    throw validation_error("series_trace_u requires d >= 3, n >= 1, N >= 1");
  const int terms = resolve_s_terms(s_terms);
  const double d = degree;
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_ratio =
      2.0 * std::log(d - 2.0) + 3.0 * ln_n - std::log(d) - std::log(d - 1.0) -
      std::log(n_vertices);
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(terms));
  for (int s = 1; s <= terms; ++s)
    log_terms.push_back(ln_n + (s - 1.0) * ln_ratio - std::lgamma(3.0 * s - 1.0) +
                        std::log(static_cast<double>(d1_table()[s - 1])));
  return kahan_sum_exp(log_terms);
}

double series_goe(double n_prime_dim, std::int64_t n, int s_terms) {
  if (n < 1 || n_prime_dim < 1) throw validation_error("series_goe requires n >= 1, N' >= 1");
  const int terms = resolve_s_terms(s_terms);
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_ratio = 3.0 * ln_n - std::log(n_prime_dim);
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(terms));
  for (int s = 1; s <= terms; ++s)
    log_terms.push_back(ln_n + (s - 1.0) * ln_ratio - std::lgamma(3.0 * s - 1.0) +
                        std::log(static_cast<double>(d1_table()[s - 1])));
  return kahan_sum_exp(log_terms);
}

double upper_bound_p2n(double n_vertices, int degree, std::int64_t n, double bound_constant) {
  if (static_cast<double>(n) > n_vertices)
    throw validation_error("upper_bound_p2n requires n <= N");
  if (n < 1 || degree < 3) throw validation_error("upper_bound_p2n requires n >= 1, d >= 3");
  const double d = degree;
  const double nn = static_cast<double>(n);
  const double log_value = std::log(nn) + std::log(d - 2.0) + (nn - 1.0) * std::log(d - 1.0) +
                           bound_constant * std::pow(nn, 1.5) / std::sqrt(n_vertices) *
                               (1.0 + d / std::sqrt(nn * n_vertices));
  return std::exp(log_value);
}

namespace {

// tr U_index and tr U_{index-2} of M/(2 sqrt(d-1)) by the exact per-basis
// recursion; the pair feeds both trace forms.
template <typename Scalar>
std::pair<double, double> exact_u_traces(const HermitianMatrixT<Scalar>& m, int d, int index) {
  const int dim = m.dimension();
  const double inv = 1.0 / std::sqrt(static_cast<double>(d - 1));
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vec prev(dim), cur(dim), next(dim);
  double trace_hi = 0.0, trace_lo = 0.0;

  auto real_part = [](const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, double>)
      return x;
    else
      return x.real();
  };

  for (int col = 0; col < dim; ++col) {
    prev.setZero();
    prev[col] = Scalar(1);
    // (M e_col)_j = conj(M_{col,j})
    cur.setZero();
    for (const auto& [j, w] : m.rows[col]) {
      if constexpr (std::is_same_v<Scalar, double>)
        cur[j] = w * Scalar(inv);
      else
        cur[j] = std::conj(w) * Scalar(inv);
    }
    if (index == 0) {
      trace_hi += 1.0;
      continue;
    }
    if (index == 1) {
      trace_hi += real_part(cur[col]);
      continue;
    }
    for (int k = 2; k <= index; ++k) {
      // loop invariant: prev = U_{k-2} e_col, cur = U_{k-1} e_col
      if (k == index) trace_lo += real_part(prev[col]);
      for (int r = 0; r < dim; ++r) {
        Scalar acc{};
        for (const auto& [j, w] : m.rows[r]) acc += w * cur[j];
        next[r] = acc * Scalar(inv) - prev[r];
      }
      prev.swap(cur);
      cur.swap(next);
    }
    trace_hi += real_part(cur[col]);
  }
  return {trace_hi, trace_lo};  // trace_lo = tr U_{index-2}, 0 for index <= 1
}

// Hutchinson probe estimate of (tr U_index, tr U_{index-2})
template <typename Scalar>
std::pair<double, double> probe_u_traces(const HermitianMatrixT<Scalar>& m, int d, int index,
                                         int probes, Rng& rng) {
  const int dim = m.dimension();
  const double inv = 1.0 / std::sqrt(static_cast<double>(d - 1));
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vec z(dim), prev(dim), cur(dim), next(dim);
  double hi = 0.0, lo = 0.0;

  auto real_dot = [&](const Vec& a) {
    double acc = 0.0;
    for (int r = 0; r < dim; ++r) {
      if constexpr (std::is_same_v<Scalar, double>)
        acc += z[r] * a[r];
      else
        acc += (std::conj(z[r]) * a[r]).real();
    }
    return acc;
  };

  for (int p = 0; p < probes; ++p) {
    for (int r = 0; r < dim; ++r) z[r] = Scalar(rng.coin() ? 1.0 : -1.0);
    prev = z;
    for (int r = 0; r < dim; ++r) {
      Scalar acc{};
      for (const auto& [j, w] : m.rows[r]) acc += w * z[j];
      cur[r] = acc * Scalar(inv);
    }
    if (index == 0) {
      hi += static_cast<double>(dim);
      continue;
    }
    for (int k = 2; k <= index; ++k) {
      if (k == index) lo += real_dot(prev);  // prev = U_{k-2} z here
      for (int r = 0; r < dim; ++r) {
        Scalar acc{};
        for (const auto& [j, w] : m.rows[r]) acc += w * cur[j];
        next[r] = acc * Scalar(inv) - prev[r];
      }
      prev.swap(cur);
      cur.swap(next);
    }
    hi += real_dot(cur);
  }
  return {hi / probes, lo / probes};
}

double combine_form(TraceForm form, int d, int index, double tr_hi, double tr_lo) {
  if (form == TraceForm::trace_u) return tr_hi;
  // tr M^(n) = (d-1)^{n/2} { tr U_n - tr U_{n-2}/(d-1) }
  const double scale = std::pow(static_cast<double>(d - 1), 0.5 * index);
  return scale * (tr_hi - tr_lo / static_cast<double>(d - 1));
}

}  // namespace

McEstimate mc_trace_moment(int n_vertices, int degree, const WeightEnsemble& ensemble,
                           int index, std::int64_t n_samples, std::uint64_t seed,
                           TraceForm form, TraceEstimator estimator, int probes, int threads) {
  if (index < 0) throw validation_error("index >= 0 required");
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  if (probes <= 0) throw validation_error("probes must be positive");
  if (estimator == TraceEstimator::automatic)
    estimator = n_vertices <= 2000 ? TraceEstimator::exact : TraceEstimator::hutchinson;

  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for_index(n_samples, threads, [&](std::int64_t i) {
    const RegularGraph g = sample_regular_graph(n_vertices, degree, derive_seed(seed, 3 * i));
    const WeightAssignment w = assign_weights(g, ensemble, derive_seed(seed, 3 * i + 1));
    Rng probe_rng(derive_seed(seed, 3 * i + 2));
    std::pair<double, double> traces;
    if (ensemble.is_complex()) {
      const HermitianMatrixC m = build_matrix_complex(g, w);
      traces = estimator == TraceEstimator::exact
                   ? exact_u_traces(m, degree, index)
                   : probe_u_traces(m, degree, index, probes, probe_rng);
    } else {
      const HermitianMatrixR m = build_matrix_real(g, w);
      traces = estimator == TraceEstimator::exact
                   ? exact_u_traces(m, degree, index)
                   : probe_u_traces(m, degree, index, probes, probe_rng);
    }
    values[static_cast<std::size_t>(i)] =
        combine_form(form, degree, index, traces.first, traces.second);
  });

  McEstimate est;
  est.n_samples = n_samples;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = n_samples > 1 ? var / static_cast<double>(n_samples - 1) : 0.0;
  est.estimate = mean;
  est.standard_error = std::sqrt(var / static_cast<double>(n_samples));
  return est;
}

McEstimate goe_sample_trace(int n_prime_dim, int index, std::int64_t n_samples,
                            std::uint64_t seed, bool zero_diagonal, int threads) {
  if (n_prime_dim < 4) throw validation_error("N' >= 4 required");
  if (index < 0) throw validation_error("index >= 0 required");
  if (n_samples <= 0) throw validation_error("n_samples must be positive");

  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for_index(n_samples, threads, [&](std::int64_t i) {
    Rng rng(derive_seed(seed, i));
    Eigen::MatrixXd a(n_prime_dim, n_prime_dim);
    for (int r = 0; r < n_prime_dim; ++r) {
      a(r, r) = zero_diagonal ? 0.0 : std::sqrt(2.0) * rng.normal();
      for (int c = r + 1; c < n_prime_dim; ++c) a(r, c) = a(c, r) = rng.normal();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const double scale = 2.0 * std::sqrt(static_cast<double>(n_prime_dim - 2));
    // sum U_index(lambda/scale) over the spectrum by the scalar recursion
    double total = 0.0;
    for (int e = 0; e < n_prime_dim; ++e) {
      const double x = solver.eigenvalues()[e] / scale;
      double um2 = 1.0, um1 = 2.0 * x;
      if (index == 0) {
        total += 1.0;
        continue;
      }
      for (int k = 2; k <= index; ++k) {
        const double u = 2.0 * x * um1 - um2;
        um2 = um1;
        um1 = u;
      }
      total += um1;
    }
    values[static_cast<std::size_t>(i)] = total;
  });

  McEstimate est;
  est.n_samples = n_samples;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = n_samples > 1 ? var / static_cast<double>(n_samples - 1) : 0.0;
  est.estimate = mean;
  est.standard_error = std::sqrt(var / static_cast<double>(n_samples));
  return est;
}

nlohmann::json moment_report(const char* kind, const nlohmann::json& params,
                             const McEstimate& mc, double series) {
  nlohmann::json j;
  j["kind"] = kind;
  j["params"] = params;
  j["mc"] = mc.estimate;
  j["stderr"] = mc.standard_error;
  j["samples"] = mc.n_samples;
  j["series"] = series;
  j["rel_diff"] = series != 0.0 ? (mc.estimate - series) / series : 0.0;
  return j;
}

}  // namespace regspec
