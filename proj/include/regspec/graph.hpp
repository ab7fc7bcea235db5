#ifndef REGSPEC_GRAPH_HPP
#define REGSPEC_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace regspec {

// Unordered edge stored as (min, max).
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple d-regular labelled graph. `edges` is lexicographically sorted and
// `adjacency` lists are sorted; the two views describe the same edge set.
struct RegularGraph {
  int n_vertices = 0;
  int degree = 0;
  std::vector<std::vector<int>> adjacency;
  std::vector<Edge> edges;

  // index of (u,v) in the sorted edge list, -1 if absent
  int edge_index(int u, int v) const;
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
};

// A fixed labelled subgraph of K_N, for containment tests and McKay bounds.
struct SubgraphPattern {
  std::vector<Edge> edges;

  // largest vertex label appearing in the pattern
  int max_vertex() const;
  // degree of every vertex up to max_vertex, zeros included
  std::vector<int> degrees() const;
  int edge_count() const { return static_cast<int>(edges.size()); }
};

SubgraphPattern pattern_from_edges(const std::vector<std::pair<int, int>>& pairs);
// named built-ins: "edge", "path2", "path3", "triangle"
SubgraphPattern named_pattern(const std::string& name);

inline constexpr std::uint64_t kDefaultRestartCap = 1'000'000;

// Uniform sample from simple d-regular graphs on n labelled vertices via the
// pairing model, restarting from scratch on any loop or multi-edge.
RegularGraph sample_regular_graph(int n_vertices, int degree, std::uint64_t seed,
                                  std::uint64_t max_restarts = kDefaultRestartCap);

// Build a RegularGraph from an explicit edge list (validated lazily; use
// validate_regular to check invariants).
RegularGraph graph_from_edges(int n_vertices, int degree, std::vector<Edge> edges);

// All invariant violations, empty iff the graph is a valid simple d-regular
// graph matching its declared parameters.
std::vector<std::string> validate_regular(const RegularGraph& graph);

// true iff every edge of the pattern is an edge of the graph
bool contains_subgraph(const RegularGraph& graph, const SubgraphPattern& pattern);

// Exhaustive enumeration of all labelled d-regular simple graphs on
// n_vertices. Exponential; intended for the small oracles (n <= 10 or so).
std::vector<RegularGraph> enumerate_labelled_regular(int n_vertices, int degree);

nlohmann::json graph_to_json(const RegularGraph& graph);
RegularGraph graph_from_json(const nlohmann::json& j);

}  // namespace regspec

#endif  // REGSPEC_GRAPH_HPP
