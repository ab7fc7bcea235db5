#ifndef REGSPEC_DIAGRAMS_HPP
#define REGSPEC_DIAGRAMS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace regspec {

// Rooted multigraph with a doubled non-backtracking circuit. Vertices are
// 0..2s-1 with root 0; `edges` lists unordered pairs (loops as (v,v)) with
// parallel edges repeated; `circuit` is the vertex sequence of the closed
// walk, starting and ending at the root, traversing every edge exactly twice.
struct Diagram {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> circuit;

  int s() const { return n_vertices / 2; }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

struct WeightedDiagram {
  Diagram diagram;
  std::vector<std::int64_t> weights;  // >= -1, aligned with diagram.edges

  // target path half-length: sum of (weight + 1) over edges
  std::int64_t half_length() const;
};

// All diagram-invariant violations; empty iff valid.
std::vector<std::string> diagram_violations(const Diagram& d);

// Root-preserving canonical form: first-appearance relabeling of the circuit,
// minimized over the two traversal directions. Two diagrams are isomorphic
// iff their keys match.
std::vector<int> diagram_canonical_key(const Diagram& d);

inline constexpr int kMaxDiagramS = 5;

// Complete list of isomorphism classes of diagrams with parameter s, in
// canonical-key order. Superexponential in s; refuses s > kMaxDiagramS.
std::vector<Diagram> enumerate_diagrams_s(int s);
std::map<int, std::vector<Diagram>> enumerate_diagrams(int s_max);

// D_1(s) by enumeration (s <= kMaxDiagramS).
std::int64_t d1_count(int s);

// Frozen D_1 table used by the moment series; entries for s <= 4 are
// re-derived by enumeration in the test suite.
const std::vector<std::int64_t>& d1_table();

// Number of weight functions w: edges -> {-1,0,1,...} (or {1,2,...} when
// positive_only) on a parameter-s diagram with sum(w+1) = n. Closed form:
// binom(n+3s-2, 3s-2), resp. binom(n-3s, 3s-2).
std::int64_t count_weighted(int s, std::int64_t n, bool positive_only);

// Contract every maximal chain of degree-2 vertices of a closed even path to
// a weighted diagram edge (weight = chain length - 1). Requires the path's
// traversal multigraph to have every edge doubled and max degree 3.
WeightedDiagram reduce_path(const std::vector<int>& path);

// A concrete path on labels 0..n-s realizing a weighted diagram (weights >= 1
// everywhere, >= 2 on loops, so the expansion is simple and non-backtracking).
std::vector<int> materialize_path(const WeightedDiagram& wd);

// Exact count N(N-1)...(N-n+s) of paths realizing a positive-weight diagram
// on N labelled vertices; 0 if N < n-s+1.
std::int64_t count_path_realizations(const WeightedDiagram& wd, std::int64_t n_labels);

// The coarse bound N^{n-s+1} on path realizations.
double realization_upper_bound(const WeightedDiagram& wd, std::int64_t n_labels);

std::int64_t binomial(std::int64_t n, std::int64_t k);

nlohmann::json diagram_to_json(const Diagram& d);

}  // namespace regspec

#endif  // REGSPEC_DIAGRAMS_HPP
