#include "regspec/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/rng.hpp"

namespace regspec {

int RegularGraph::edge_index(int u, int v) const {
  const Edge e = make_edge(u, v);
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || !(*it == e)) return -1;
  return static_cast<int>(it - edges.begin());
}

int SubgraphPattern::max_vertex() const {
  int m = -1;
  for (const Edge& e : edges) m = std::max(m, e.v);
  return m;
}

std::vector<int> SubgraphPattern::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(max_vertex()) + 1, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

SubgraphPattern pattern_from_edges(const std::vector<std::pair<int, int>>& pairs) {
  SubgraphPattern p;
  p.edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0) throw validation_error("pattern vertices must be nonnegative");
    if (a == b) throw validation_error("pattern must be simple: loop at " + std::to_string(a));
    p.edges.push_back(make_edge(a, b));
  }
  std::sort(p.edges.begin(), p.edges.end());
  if (std::adjacent_find(p.edges.begin(), p.edges.end()) != p.edges.end())
    throw validation_error("pattern must be simple: repeated edge");
  return p;
}

SubgraphPattern named_pattern(const std::string& name) {
  if (name == "edge") return pattern_from_edges({{0, 1}});
  if (name == "path2") return pattern_from_edges({{0, 1}, {1, 2}});
  if (name == "path3") return pattern_from_edges({{0, 1}, {1, 2}, {2, 3}});
  if (name == "triangle") return pattern_from_edges({{0, 1}, {1, 2}, {0, 2}});
  throw validation_error("unknown pattern '" + name + "'");
}

namespace {

void check_parameters(int n, int d) {
  if (d < 3) throw validation_error("degree must satisfy d >= 3, got d=" + std::to_string(d));
  if (d >= n)
    throw validation_error("degree must satisfy d < N, got d=" + std::to_string(d) +
                           ", N=" + std::to_string(n));
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw validation_error("N*d must be even (handshake parity), got N=" + std::to_string(n) +
                           ", d=" + std::to_string(d));
}

RegularGraph from_sorted_edges(int n, int d, std::vector<Edge> edges) {
  RegularGraph g;
  g.n_vertices = n;
  g.degree = d;
  g.edges = std::move(edges);
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  for (const Edge& e : g.edges) {
    g.adjacency[e.u].push_back(e.v);
    g.adjacency[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

}  // namespace

RegularGraph graph_from_edges(int n_vertices, int degree, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return from_sorted_edges(n_vertices, degree, std::move(edges));
}

RegularGraph sample_regular_graph(int n_vertices, int degree, std::uint64_t seed,
                                  std::uint64_t max_restarts) {
  check_parameters(n_vertices, degree);
  const int n = n_vertices;
  const int d = degree;
  const std::size_t n_stubs = static_cast<std::size_t>(n) * d;

  Rng rng(seed);
  std::vector<int> stubs(n_stubs);
  std::vector<Edge> edges(n_stubs / 2);

  for (std::uint64_t attempt = 0; attempt <= max_restarts; ++attempt) {
    for (std::size_t i = 0; i < n_stubs; ++i) stubs[i] = static_cast<int>(i / d);
    // Fisher–Yates, pairing consecutive stubs afterwards
    for (std::size_t i = n_stubs - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);

    bool simple = true;
    for (std::size_t i = 0; i < n_stubs / 2; ++i) {
      const int a = stubs[2 * i], b = stubs[2 * i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      edges[i] = make_edge(a, b);
    }
    if (!simple) continue;

    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return from_sorted_edges(n, d, edges);
  }
  throw resource_cap_error("pairing-model rejection cap of " + std::to_string(max_restarts) +
                           " restarts exceeded for N=" + std::to_string(n) +
                           ", d=" + std::to_string(d));
}

std::vector<std::string> validate_regular(const RegularGraph& g) {
  std::vector<std::string> bad;
  const int n = g.n_vertices, d = g.degree;
  if (d < 3) bad.push_back("degree < 3");
  if (d >= n) bad.push_back("degree >= n_vertices");
  if ((static_cast<long long>(n) * d) % 2 != 0) bad.push_back("N*d is odd");
  if (static_cast<int>(g.adjacency.size()) != n) {
    bad.push_back("adjacency size != n_vertices");
    return bad;
  }

  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.v >= n) bad.push_back("edge endpoint out of range");
    if (e.u == e.v) bad.push_back("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) bad.push_back("edge not stored as (min,max)");
  }
  if (!std::is_sorted(g.edges.begin(), g.edges.end())) bad.push_back("edge list not sorted");
  for (std::size_t i = 1; i < g.edges.size(); ++i)
    if (g.edges[i] == g.edges[i - 1])
      bad.push_back("multi-edge (" + std::to_string(g.edges[i].u) + "," +
                    std::to_string(g.edges[i].v) + ")");

  if (g.edges.size() * 2 != static_cast<std::size_t>(n) * d)
    bad.push_back("edge count != d*N/2");

  std::vector<std::vector<int>> from_edges(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges)
    if (e.u >= 0 && e.v < n) {
      from_edges[e.u].push_back(e.v);
      from_edges[e.v].push_back(e.u);
    }
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(g.adjacency[u].size()) != d)
      bad.push_back("vertex " + std::to_string(u) + " has degree " +
                    std::to_string(g.adjacency[u].size()) + " != " + std::to_string(d));
    std::sort(from_edges[u].begin(), from_edges[u].end());
    std::vector<int> adj = g.adjacency[u];
    std::sort(adj.begin(), adj.end());
    if (adj != from_edges[u])
      bad.push_back("adjacency of vertex " + std::to_string(u) + " disagrees with edge list");
  }
  return bad;
}

bool contains_subgraph(const RegularGraph& graph, const SubgraphPattern& pattern) {
  if (pattern.max_vertex() >= graph.n_vertices)
    throw validation_error("pattern vertex out of range for N=" +
                           std::to_string(graph.n_vertices));
  for (const Edge& e : pattern.edges)
    if (!graph.has_edge(e.u, e.v)) return false;
  return true;
}

std::vector<RegularGraph> enumerate_labelled_regular(int n_vertices, int degree) {
  check_parameters(n_vertices, degree);
  const int n = n_vertices, d = degree;
  std::vector<RegularGraph> out;
  std::vector<int> resid(static_cast<std::size_t>(n), d);
  std::vector<Edge> edges;

  // Complete vertices in increasing order: for the smallest unfinished vertex
  // u, pick its remaining neighbors among larger unfinished vertices.
  std::function<void(int)> extend = [&](int u) {
    while (u < n && resid[u] == 0) ++u;
    if (u == n) {
      out.push_back(graph_from_edges(n, d, edges));
      return;
    }
    const int need = resid[u];
    std::vector<int> candidates;
    for (int v = u + 1; v < n; ++v)
      if (resid[v] > 0) candidates.push_back(v);
    if (static_cast<int>(candidates.size()) < need) return;

    std::vector<int> choice(static_cast<std::size_t>(need));
    std::function<void(int, int)> choose = [&](int pos, int start) {
      if (pos == need) {
        for (int i = 0; i < need; ++i) {
          edges.push_back(make_edge(u, choice[i]));
          --resid[choice[i]];
        }
        resid[u] = 0;
        extend(u + 1);
        resid[u] = need;
        for (int i = 0; i < need; ++i) {
          ++resid[choice[i]];
          edges.pop_back();
        }
        return;
      }
      for (int i = start; i <= static_cast<int>(candidates.size()) - (need - pos); ++i) {
        choice[pos] = candidates[i];
        choose(pos + 1, i + 1);
      }
    };
    choose(0, 0);
  };
  extend(0);
  return out;
}

nlohmann::json graph_to_json(const RegularGraph& g) {
  nlohmann::json j;
  j["n"] = g.n_vertices;
  j["d"] = g.degree;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
  return j;
}

RegularGraph graph_from_json(const nlohmann::json& j) {
  std::vector<Edge> edges;
  for (const auto& pair : j.at("edges")) edges.push_back(make_edge(pair.at(0), pair.at(1)));
  return graph_from_edges(j.at("n"), j.at("d"), std::move(edges));
}

}  // namespace regspec
