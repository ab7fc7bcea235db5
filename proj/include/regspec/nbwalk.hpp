#ifndef REGSPEC_NBWALK_HPP
#define REGSPEC_NBWALK_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "regspec/graph.hpp"
#include "regspec/weights.hpp"

namespace regspec {

inline constexpr std::uint64_t kDefaultWorkCap = 100'000'000;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Non-backtracking walk matrices M^(0), ..., M^(n_max) by the three-term
// recursion M^(n) = M*M^(n-1) - (d-1)*M^(n-2), with M^(2) = M*M - d*I.
template <typename Scalar>
std::vector<DenseMatrix<Scalar>> nb_matrices(const DenseMatrix<Scalar>& M, int d, int n_max);

// Exact-integer variant for +-1 edge signs (aligned with the sorted edge list).
std::vector<IntMatrix> nb_matrices_exact(const RegularGraph& graph, const std::vector<int>& signs,
                                         int n_max);

// tr U_n(M / (2 sqrt(d-1))) by per-column three-term recursion on the sparse
// view; never eigendecomposes. The trace of a Hermitian polynomial is real.
template <typename Scalar>
double chebyshev_trace(const HermitianMatrixT<Scalar>& m, int d, int n);

// Count closed non-backtracking paths u_0...u_n = u_0 of length n, optionally
// requiring every traversed edge to appear an even number of times; this is
// P_n(G) when the flag is set. Optionally collects the vertex sequences.
std::int64_t enumerate_nb_closed_paths(const RegularGraph& graph, int n,
                                       bool require_even_multiplicity,
                                       std::uint64_t work_cap = kDefaultWorkCap,
                                       std::vector<std::vector<int>>* paths = nullptr);

// All counts for n = 0..n_max in one sweep (shared DFS).
std::vector<std::int64_t> nb_closed_path_counts(const RegularGraph& graph, int n_max,
                                                bool require_even_multiplicity,
                                                std::uint64_t work_cap = kDefaultWorkCap);

// Sum over non-backtracking paths u0 -> un of length n of the product of edge
// signs; equals nb_matrices_exact(...)[n](u0, un).
std::int64_t signed_walk_sum(const RegularGraph& graph, const std::vector<int>& signs, int u0,
                             int un, int n, std::uint64_t work_cap = kDefaultWorkCap);

// Exact averages over all 2^{#E} sign assignments of tr M^(k), k = 0..n_max.
// Integer-exact; requires #E <= 24.
std::vector<std::int64_t> exact_sign_average_traces(const RegularGraph& graph, int n_max);

struct Lemma1Record {
  std::int64_t path_count = 0;        // P_n(G)
  std::int64_t sign_average = 0;      // E_S tr M^(n), exact integer
  bool equal = false;
};

Lemma1Record verify_lemma1(const RegularGraph& graph, int n,
                           std::uint64_t work_cap = kDefaultWorkCap);

nlohmann::json lemma1_to_json(const Lemma1Record& record, int n);

}  // namespace regspec

#endif  // REGSPEC_NBWALK_HPP
