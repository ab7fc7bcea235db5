#include "regspec/nbwalk.hpp"

#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"

namespace regspec {

template <typename Scalar>
std::vector<DenseMatrix<Scalar>> nb_matrices(const DenseMatrix<Scalar>& M, int d, int n_max) {
  if (M.rows() != M.cols()) throw validation_error("nb_matrices: matrix must be square");
  if (d < 3) throw validation_error("nb_matrices: d >= 3 required");
  if (n_max < 0) throw validation_error("nb_matrices: n_max >= 0 required");
  const auto n = M.rows();
  std::vector<DenseMatrix<Scalar>> seq;
  seq.reserve(static_cast<std::size_t>(n_max) + 1);
  seq.push_back(DenseMatrix<Scalar>::Identity(n, n));
  if (n_max >= 1) seq.push_back(M);
  if (n_max >= 2) seq.push_back(M * M - Scalar(d) * DenseMatrix<Scalar>::Identity(n, n));
  for (int k = 3; k <= n_max; ++k)
    seq.push_back(M * seq[k - 1] - Scalar(d - 1) * seq[k - 2]);
  return seq;
}

template std::vector<DenseMatrix<double>> nb_matrices(const DenseMatrix<double>&, int, int);
template std::vector<DenseMatrix<std::complex<double>>> nb_matrices(
    const DenseMatrix<std::complex<double>>&, int, int);

std::vector<IntMatrix> nb_matrices_exact(const RegularGraph& g, const std::vector<int>& signs,
                                         int n_max) {
  if (signs.size() != g.edges.size())
    throw validation_error("nb_matrices_exact: one sign per edge required");
  const int n = g.n_vertices;
  IntMatrix M = IntMatrix::Zero(n, n);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    M(g.edges[i].u, g.edges[i].v) = signs[i];
    M(g.edges[i].v, g.edges[i].u) = signs[i];
  }
  std::vector<IntMatrix> seq;
  seq.reserve(static_cast<std::size_t>(n_max) + 1);
  seq.push_back(IntMatrix::Identity(n, n));
  if (n_max >= 1) seq.push_back(M);
  if (n_max >= 2) seq.push_back((M * M - g.degree * IntMatrix::Identity(n, n)).eval());
  for (int k = 3; k <= n_max; ++k)
    seq.push_back((M * seq[k - 1] - std::int64_t{g.degree - 1} * seq[k - 2]).eval());
  return seq;
}

template <typename Scalar>
double chebyshev_trace(const HermitianMatrixT<Scalar>& m, int d, int n) {
  if (n < 0) throw validation_error("chebyshev_trace: n >= 0 required");
  const int dim = m.dimension();
  if (n == 0) return static_cast<double>(dim);
  const double inv = 1.0 / std::sqrt(static_cast<double>(d - 1));

  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vec prev(dim), cur(dim), next(dim);
  double trace = 0.0;
  for (int col = 0; col < dim; ++col) {
    prev.setZero();
    prev[col] = Scalar(1);
    // cur = U_1 e_col = (M / sqrt(d-1)) e_col; (M e_col)_j = conj(M_{col,j})
    cur.setZero();
    for (const auto& [j, w] : m.rows[col]) {
      if constexpr (std::is_same_v<Scalar, double>)
        cur[j] = w * Scalar(inv);
      else
        cur[j] = std::conj(w) * Scalar(inv);
    }
    for (int k = 2; k <= n; ++k) {
      for (int r = 0; r < dim; ++r) {
        Scalar acc{};
        for (const auto& [j, w] : m.rows[r]) acc += w * cur[j];
        next[r] = acc * Scalar(inv) - prev[r];
      }
      prev.swap(cur);
      cur.swap(next);
    }
    if constexpr (std::is_same_v<Scalar, double>)
      trace += cur[col];
    else
      trace += cur[col].real();
  }
  return trace;
}

template double chebyshev_trace(const HermitianMatrixT<double>&, int, int);
template double chebyshev_trace(const HermitianMatrixT<std::complex<double>>&, int, int);

namespace {

struct PathDfs {
  const RegularGraph& g;
  std::uint64_t work_cap = 0;
  std::uint64_t visited = 0;
  int n_max = 0;
  bool require_even = false;
  std::uint64_t parity = 0;  // edge-traversal parity mask (<= 64 edges)
  std::vector<std::int64_t>* counts = nullptr;
  std::vector<std::vector<int>>* collect = nullptr;
  std::vector<int> stack;
  int collect_n = -1;

  void run(int start) {
    stack.assign(1, start);
    descend(start, -1, 0);
  }

  void descend(int u, int prev, int depth) {
    if (++visited > work_cap)
      throw resource_cap_error("path enumeration work cap exceeded (" +
                               std::to_string(work_cap) + " states)");
    if (u == stack[0] && (!require_even || parity == 0)) {
      if (counts) (*counts)[depth] += 1;
      if (collect && depth == collect_n) collect->push_back(stack);
    }
    if (depth == n_max) return;
    for (int v : g.adjacency[u]) {
      if (v == prev) continue;  // non-backtracking
      const std::uint64_t bit = 1ULL << g.edge_index(u, v);
      parity ^= bit;
      stack.push_back(v);
      descend(v, u, depth + 1);
      stack.pop_back();
      parity ^= bit;
    }
  }
};

}  // namespace

std::vector<std::int64_t> nb_closed_path_counts(const RegularGraph& g, int n_max,
                                                bool require_even, std::uint64_t work_cap) {
  if (n_max < 0) throw validation_error("n >= 0 required");
  if (g.edges.size() > 64) throw validation_error("edge-parity mask supports at most 64 edges");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_max) + 1, 0);
  PathDfs dfs{g, work_cap};
  dfs.n_max = n_max;
  dfs.require_even = require_even;
  dfs.counts = &counts;
  dfs.collect = nullptr;
  for (int u = 0; u < g.n_vertices; ++u) dfs.run(u);
  return counts;
}

std::int64_t enumerate_nb_closed_paths(const RegularGraph& g, int n, bool require_even,
                                       std::uint64_t work_cap,
                                       std::vector<std::vector<int>>* paths) {
  if (n < 0) throw validation_error("n >= 0 required");
  if (!paths) return nb_closed_path_counts(g, n, require_even, work_cap)[n];
  if (g.edges.size() > 64) throw validation_error("edge-parity mask supports at most 64 edges");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  PathDfs dfs{g, work_cap};
  dfs.n_max = n;
  dfs.require_even = require_even;
  dfs.counts = &counts;
  dfs.collect = paths;
  dfs.collect_n = n;
  for (int u = 0; u < g.n_vertices; ++u) dfs.run(u);
  return counts[n];
}

namespace {

std::int64_t walk_sum_rec(const RegularGraph& g, const std::vector<int>& signs, int u, int prev,
                          int un, int remaining, std::uint64_t& visited, std::uint64_t cap) {
  if (++visited > cap)
    throw resource_cap_error("signed walk enumeration work cap exceeded");
  if (remaining == 0) return u == un ? 1 : 0;
  std::int64_t total = 0;
  for (int v : g.adjacency[u]) {
    if (v == prev) continue;
    total += signs[g.edge_index(u, v)] *
             walk_sum_rec(g, signs, v, u, un, remaining - 1, visited, cap);
  }
  return total;
}

}  // namespace

std::int64_t signed_walk_sum(const RegularGraph& g, const std::vector<int>& signs, int u0, int un,
                             int n, std::uint64_t work_cap) {
  if (signs.size() != g.edges.size()) throw validation_error("one sign per edge required");
  if (u0 < 0 || u0 >= g.n_vertices || un < 0 || un >= g.n_vertices)
    throw validation_error("walk endpoints out of range");
  if (n < 0) throw validation_error("n >= 0 required");
  std::uint64_t visited = 0;
  return walk_sum_rec(g, signs, u0, -1, un, n, visited, work_cap);
}

std::vector<std::int64_t> exact_sign_average_traces(const RegularGraph& g, int n_max) {
  const int n_edges = static_cast<int>(g.edges.size());
  if (n_edges > 24)
    throw validation_error("exact sign average requires #E <= 24, got " +
                           std::to_string(n_edges));
  const int n = g.n_vertices;
  const int d = g.degree;

  // flat sparse structure: neighbor and edge index per (vertex, slot)
  std::vector<int> nbr(static_cast<std::size_t>(n) * d), eidx(static_cast<std::size_t>(n) * d);
  for (int u = 0; u < n; ++u)
    for (int j = 0; j < d; ++j) {
      nbr[u * d + j] = g.adjacency[u][j];
      eidx[u * d + j] = g.edge_index(u, g.adjacency[u][j]);
    }

  std::vector<std::int64_t> sums(static_cast<std::size_t>(n_max) + 1, 0);
  const std::uint32_t n_patterns = 1u << n_edges;

  // X_{k} = M X_{k-1} - c_k X_{k-2}; all entries fit comfortably in int32
  std::vector<std::int32_t> xa(static_cast<std::size_t>(n) * n),
      xb(static_cast<std::size_t>(n) * n), xc(static_cast<std::size_t>(n) * n);
  std::vector<std::int32_t> sign(static_cast<std::size_t>(n_edges));

  for (std::uint32_t pattern = 0; pattern < n_patterns; ++pattern) {
    for (int e = 0; e < n_edges; ++e) sign[e] = (pattern >> e) & 1u ? -1 : 1;

    // X0 = I
    std::fill(xa.begin(), xa.end(), 0);
    for (int i = 0; i < n; ++i) xa[i * n + i] = 1;
    sums[0] += n;
    if (n_max == 0) continue;

    // X1 = M
    std::fill(xb.begin(), xb.end(), 0);
    for (int e = 0; e < n_edges; ++e) {
      const auto [u, v] = g.edges[e];
      xb[u * n + v] = sign[e];
      xb[v * n + u] = sign[e];
    }
    // tr M = 0 (no diagonal), nothing to add for k = 1

    std::int32_t* prev = xa.data();
    std::int32_t* cur = xb.data();
    std::int32_t* next = xc.data();
    for (int k = 2; k <= n_max; ++k) {
      const std::int32_t c = (k == 2) ? d : d - 1;
      std::int64_t trace = 0;
      for (int u = 0; u < n; ++u) {
        std::int32_t* out = next + u * n;
        const std::int32_t* back = prev + u * n;
        const int base = u * d;
        const std::int32_t s0 = sign[eidx[base]];
        const std::int32_t* r0 = cur + nbr[base] * n;
        for (int col = 0; col < n; ++col) out[col] = s0 * r0[col];
        for (int j = 1; j < d; ++j) {
          const std::int32_t sj = sign[eidx[base + j]];
          const std::int32_t* rj = cur + nbr[base + j] * n;
          for (int col = 0; col < n; ++col) out[col] += sj * rj[col];
        }
        for (int col = 0; col < n; ++col) out[col] -= c * back[col];
        trace += out[u];
      }
      sums[k] += trace;
      std::int32_t* rotate = prev;
      prev = cur;
      cur = next;
      next = rotate;
    }
  }

  std::vector<std::int64_t> averages(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (sums[k] % static_cast<std::int64_t>(n_patterns) != 0)
      throw std::logic_error("sign-average trace not divisible by 2^{#E}; "
                             "this should be impossible");
    averages[k] = sums[k] / static_cast<std::int64_t>(n_patterns);
  }
  return averages;
}

Lemma1Record verify_lemma1(const RegularGraph& g, int n, std::uint64_t work_cap) {
  Lemma1Record rec;
  rec.path_count = enumerate_nb_closed_paths(g, n, /*require_even=*/true, work_cap);
  rec.sign_average = exact_sign_average_traces(g, n).back();
  rec.equal = rec.path_count == rec.sign_average;
  return rec;
}

nlohmann::json lemma1_to_json(const Lemma1Record& r, int n) {
  return nlohmann::json{
      {"n", n}, {"P_n", r.path_count}, {"E_tr", r.sign_average}, {"equal", r.equal}};
}

}  // namespace regspec
