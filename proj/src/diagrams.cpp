#include "regspec/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"

namespace regspec {

std::int64_t WeightedDiagram::half_length() const {
  std::int64_t n = 0;
  for (std::int64_t w : weights) n += w + 1;
  return n;
}

namespace {

std::vector<int> relabel_first_appearance(const std::vector<int>& seq) {
  const int top = seq.empty() ? 0 : *std::max_element(seq.begin(), seq.end());
  std::vector<int> label(static_cast<std::size_t>(top) + 1, -1);
  std::vector<int> out;
  out.reserve(seq.size());
  int next = 0;
  for (int v : seq) {
    if (label[v] < 0) label[v] = next++;
    out.push_back(label[v]);
  }
  return out;
}

std::map<std::pair<int, int>, int> circuit_pair_counts(const std::vector<int>& circuit) {
  std::map<std::pair<int, int>, int> counts;
  for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
    int a = circuit[i], b = circuit[i + 1];
    if (a > b) std::swap(a, b);
    ++counts[{a, b}];
  }
  return counts;
}

Diagram diagram_from_circuit(const std::vector<int>& circuit) {
  Diagram d;
  d.circuit = circuit;
  d.n_vertices = *std::max_element(circuit.begin(), circuit.end()) + 1;
  for (const auto& [pair, count] : circuit_pair_counts(circuit))
    for (int copy = 0; copy < count / 2; ++copy) d.edges.push_back(pair);
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

}  // namespace

std::vector<int> diagram_canonical_key(const Diagram& d) {
  std::vector<int> forward = relabel_first_appearance(d.circuit);
  std::vector<int> backward(d.circuit.rbegin(), d.circuit.rend());
  backward = relabel_first_appearance(backward);
  return std::min(forward, backward);
}

std::vector<std::string> diagram_violations(const Diagram& d) {
  std::vector<std::string> bad;
  const int s = d.s();
  if (d.n_vertices < 2 || d.n_vertices % 2 != 0)
    bad.push_back("vertex count must be 2s, got " + std::to_string(d.n_vertices));
  if (d.n_edges() != 3 * s - 1)
    bad.push_back("edge count " + std::to_string(d.n_edges()) + " != 3s-1");
  if (d.circuit.size() < 2 || d.circuit.front() != 0 || d.circuit.back() != 0) {
    bad.push_back("circuit must start and end at the root 0");
    return bad;
  }
  if (static_cast<int>(d.circuit.size()) != 2 * d.n_edges() + 1)
    bad.push_back("circuit length " + std::to_string(d.circuit.size() - 1) +
                  " != 2#E (every edge traversed twice)");

  std::map<std::pair<int, int>, int> mult;
  for (auto [a, b] : d.edges) {
    if (a > b) std::swap(a, b);
    ++mult[{a, b}];
  }
  const auto pair_counts = circuit_pair_counts(d.circuit);
  for (const auto& [pair, count] : pair_counts) {
    const auto it = mult.find(pair);
    const int m = it == mult.end() ? 0 : it->second;
    if (count != 2 * m)
      bad.push_back("pair (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                    ") traversed " + std::to_string(count) + " times, expected " +
                    std::to_string(2 * m));
  }
  for (const auto& [pair, m] : mult)
    if (!pair_counts.count(pair))
      bad.push_back("edge (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                    ") never traversed");

  std::vector<int> deg(static_cast<std::size_t>(d.n_vertices), 0);
  for (auto [a, b] : d.edges) {
    if (a < 0 || b >= d.n_vertices) {
      bad.push_back("edge endpoint out of range");
      continue;
    }
    deg[a] += a == b ? 2 : 1;
    if (a != b) deg[b] += 1;
  }
  if (!deg.empty() && deg[0] != 1)
    bad.push_back("root degree " + std::to_string(deg[0]) + " != 1");
  for (int v = 1; v < d.n_vertices; ++v)
    if (deg[v] != 3)
      bad.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]) +
                    " != 3");

  // non-backtracking: an immediate reversal needs a parallel copy or a loop
  for (std::size_t i = 0; i + 2 < d.circuit.size(); ++i) {
    const int a = d.circuit[i], b = d.circuit[i + 1], c = d.circuit[i + 2];
    if (a == c && a != b) {
      auto key = std::minmax(a, b);
      if (mult[{key.first, key.second}] < 2)
        bad.push_back("backtrack at circuit position " + std::to_string(i + 1));
    }
  }
  return bad;
}

namespace {

struct DiagramSearch {
  int target_vertices = 0;
  int target_edges = 0;
  int target_steps = 0;

  struct EdgeRec {
    int u, v;
    int count;
  };

  std::vector<int> seq;
  std::vector<EdgeRec> edges;
  std::vector<int> deg;
  int used_vertices = 0;
  int deficiency = 0;  // sum over used non-root vertices of (3 - deg)
  std::set<std::vector<int>> found;

  void run() {
    seq.reserve(static_cast<std::size_t>(target_steps) + 1);
    edges.reserve(static_cast<std::size_t>(target_edges));  // no reallocation mid-search
    seq = {0, 1};
    edges = {{0, 1, 1}};
    deg.assign(static_cast<std::size_t>(target_vertices), 0);
    deg[0] = 1;
    deg[1] = 1;
    used_vertices = 2;
    deficiency = 2;
    descend(0);
  }

  void descend(int prev_edge) {
    const int depth = static_cast<int>(seq.size()) - 1;
    if (depth == target_steps) {
      if (seq.back() != 0 || used_vertices != target_vertices) return;
      if (deficiency != 0) return;
      for (const EdgeRec& e : edges)
        if (e.count != 2) return;
      found.insert(std::min(relabel_first_appearance(seq),
                            relabel_first_appearance({seq.rbegin(), seq.rend()})));
      return;
    }
    const int u = seq.back();
    if (u == 0) return;  // the root is reachable only by the final step

    // feasibility: every future edge fills at most two degree slots
    const int edges_left = target_edges - static_cast<int>(edges.size());
    if (deficiency + 3 * (target_vertices - used_vertices) > 2 * edges_left) return;

    // second traversal of a pending edge at u
    const int known_edges = static_cast<int>(edges.size());
    for (int ei = 0; ei < known_edges; ++ei) {
      if (edges[ei].count != 1) continue;
      if (edges[ei].u != u && edges[ei].v != u) continue;
      if (ei == prev_edge && edges[ei].u != edges[ei].v) continue;  // reversal, not a loop
      const int w = edges[ei].u == u ? edges[ei].v : edges[ei].u;
      edges[ei].count = 2;
      seq.push_back(w);
      descend(ei);
      seq.pop_back();
      edges[ei].count = 1;
    }

    if (edges_left == 0) return;

    // new edge to an existing non-root vertex (possibly a loop at u)
    for (int w = 1; w < used_vertices; ++w) {
      if (w == u) {
        if (deg[u] + 2 > 3) continue;
        deg[u] += 2;
        deficiency -= 2;
      } else {
        if (deg[u] + 1 > 3 || deg[w] + 1 > 3) continue;
        deg[u] += 1;
        deg[w] += 1;
        deficiency -= 2;
      }
      edges.push_back({std::min(u, w), std::max(u, w), 1});
      seq.push_back(w);
      descend(static_cast<int>(edges.size()) - 1);
      seq.pop_back();
      edges.pop_back();
      if (w == u) {
        deg[u] -= 2;
      } else {
        deg[u] -= 1;
        deg[w] -= 1;
      }
      deficiency += 2;
    }

    // new edge to a brand-new vertex
    if (used_vertices < target_vertices && deg[u] + 1 <= 3) {
      const int w = used_vertices;
      ++used_vertices;
      deg[u] += 1;
      deg[w] = 1;
      deficiency += 1;  // -1 for u's slot, +2 for the new vertex
      edges.push_back({u, w, 1});
      seq.push_back(w);
      descend(static_cast<int>(edges.size()) - 1);
      seq.pop_back();
      edges.pop_back();
      deficiency -= 1;
      deg[w] = 0;
      deg[u] -= 1;
      --used_vertices;
    }
  }
};

}  // namespace

std::vector<Diagram> enumerate_diagrams_s(int s) {
  if (s < 1) throw validation_error("diagram parameter s must be >= 1");
  if (s > kMaxDiagramS)
    throw validation_error("diagram enumeration supports s <= " +
                           std::to_string(kMaxDiagramS) + ", got s=" + std::to_string(s));
  DiagramSearch search;
  search.target_vertices = 2 * s;
  search.target_edges = 3 * s - 1;
  search.target_steps = 6 * s - 2;
  search.run();

  std::vector<Diagram> out;
  out.reserve(search.found.size());
  for (const auto& circuit : search.found) out.push_back(diagram_from_circuit(circuit));
  return out;
}

std::map<int, std::vector<Diagram>> enumerate_diagrams(int s_max) {
  std::map<int, std::vector<Diagram>> result;
  for (int s = 1; s <= s_max; ++s) result[s] = enumerate_diagrams_s(s);
  return result;
}

std::int64_t d1_count(int s) {
  return static_cast<std::int64_t>(enumerate_diagrams_s(s).size());
}

const std::vector<std::int64_t>& d1_table() {
  // enumerate_diagrams_s output, frozen (indexed from s=1); the unit tests
  // re-derive the s <= 4 entries
  static const std::vector<std::int64_t> table = {1, 4, 60, 1730, 72230, 3909196};
  return table;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0) throw validation_error("binomial needs nonnegative arguments");
  if (k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max())
      throw validation_error("binomial overflows 64-bit range");
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t count_weighted(int s, std::int64_t n, bool positive_only) {
  if (s < 1) throw validation_error("s >= 1 required");
  if (n < 3 * s)
    throw validation_error("count_weighted requires n >= 3s (got n=" + std::to_string(n) +
                           ", s=" + std::to_string(s) + ")");
  const std::int64_t e = 3 * s - 1;
  // compositions of n into e parts x_i = w_i + 1, x_i >= 0 (all weights) or
  // x_i >= 2 (positive weights)
  return positive_only ? binomial(n - 3 * s, e - 1) : binomial(n + e - 1, e - 1);
}

WeightedDiagram reduce_path(const std::vector<int>& path) {
  if (path.size() < 2 || path.front() != path.back())
    throw validation_error("reduce_path: path must be closed (condition (c))");
  const std::size_t len = path.size() - 1;
  if (len % 2 != 0) throw validation_error("reduce_path: closed even path required");
  for (std::size_t j = 0; j + 2 < path.size(); ++j)
    if (path[j] == path[j + 2])
      throw validation_error("reduce_path: backtrack at position " + std::to_string(j) +
                             " (condition (b))");
  for (std::size_t j = 0; j + 1 < path.size(); ++j)
    if (path[j] == path[j + 1])
      throw validation_error("reduce_path: self-loop traversal in a simple-graph path");

  std::map<std::pair<int, int>, int> counts;
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    auto key = std::minmax(path[j], path[j + 1]);
    ++counts[{key.first, key.second}];
  }
  std::map<int, std::vector<int>> nbrs;
  for (const auto& [pair, c] : counts) {
    if (c % 2 != 0)
      throw validation_error("reduce_path: edge traversed an odd number of times "
                             "(condition (d))");
    if (c != 2)
      throw validation_error(
          "reduce_path: edge traversed " + std::to_string(c) +
          " times; vertex-identification paths are out of scope");
    nbrs[pair.first].push_back(pair.second);
    nbrs[pair.second].push_back(pair.first);
  }
  const int root = path.front();
  for (const auto& [v, adj] : nbrs) {
    if (adj.size() > 3)
      throw validation_error("reduce_path: vertex " + std::to_string(v) + " has degree " +
                             std::to_string(adj.size()) + " > 3; out of scope");
    if (v == root && adj.size() != 1)
      throw validation_error("reduce_path: start vertex has degree " +
                             std::to_string(adj.size()) +
                             "; rootless shapes (erased-stem paths) are out of scope");
  }

  // diagram vertices: the root and every degree-3 vertex
  auto is_branch = [&](int v) { return v == root || nbrs[v].size() == 3; };

  // walk the path, cutting it at diagram vertices into chains
  std::vector<std::size_t> cut_positions;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (is_branch(path[i])) cut_positions.push_back(i);

  std::map<int, int> label;  // original vertex -> diagram label
  label[root] = 0;
  std::vector<int> circuit = {0};
  // one diagram edge per distinct chain, identified by its sorted edge set
  std::map<std::vector<std::pair<int, int>>, int> chain_ids;
  std::vector<std::pair<int, int>> diagram_edges;
  std::vector<std::int64_t> weights;
  std::vector<int> traversals;

  for (std::size_t k = 0; k + 1 < cut_positions.size(); ++k) {
    const std::size_t from = cut_positions[k], to = cut_positions[k + 1];
    std::vector<std::pair<int, int>> chain;
    for (std::size_t j = from; j < to; ++j) {
      auto key = std::minmax(path[j], path[j + 1]);
      chain.emplace_back(key.first, key.second);
    }
    std::sort(chain.begin(), chain.end());

    const int head = path[from], tail = path[to];
    if (!label.count(tail)) label[tail] = static_cast<int>(label.size());
    circuit.push_back(label[tail]);

    auto [it, fresh] = chain_ids.try_emplace(chain, static_cast<int>(diagram_edges.size()));
    if (fresh) {
      auto key = std::minmax(label[head], label[tail]);
      diagram_edges.emplace_back(key.first, key.second);
      weights.push_back(static_cast<std::int64_t>(to - from) - 1);
      traversals.push_back(1);
    } else {
      ++traversals[it->second];
    }
  }
  for (int t : traversals)
    if (t != 2)
      throw validation_error("reduce_path: a contracted chain is traversed " +
                             std::to_string(t) + " times, expected 2");

  WeightedDiagram wd;
  wd.diagram.n_vertices = static_cast<int>(label.size());
  wd.diagram.circuit = std::move(circuit);
  // sort edges with their weights attached
  std::vector<std::size_t> order(diagram_edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return diagram_edges[a] < diagram_edges[b];
  });
  for (std::size_t i : order) {
    wd.diagram.edges.push_back(diagram_edges[i]);
    wd.weights.push_back(weights[i]);
  }

  const auto bad = diagram_violations(wd.diagram);
  if (!bad.empty())
    throw validation_error("reduce_path: reduction is not a valid diagram: " + bad.front());
  if (wd.half_length() * 2 != static_cast<std::int64_t>(len))
    throw std::logic_error("reduce_path: weight bookkeeping broke");
  return wd;
}

namespace {

// assign an edge instance to every circuit step such that each instance is
// used exactly twice and no non-loop instance is immediately reversed
bool assign_instances(const Diagram& d, std::vector<int>& assignment) {
  const std::size_t steps = d.circuit.size() - 1;
  assignment.assign(steps, -1);
  std::vector<int> used(d.edges.size(), 0);

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == steps) return true;
    auto key = std::minmax(d.circuit[i], d.circuit[i + 1]);
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
      if (d.edges[e] != std::make_pair(key.first, key.second)) continue;
      if (used[e] == 2) continue;
      const bool loop = d.edges[e].first == d.edges[e].second;
      if (i > 0 && assignment[i - 1] == static_cast<int>(e) && !loop) continue;
      assignment[i] = static_cast<int>(e);
      ++used[e];
      if (place(i + 1)) return true;
      --used[e];
      assignment[i] = -1;
    }
    return false;
  };
  return place(0);
}

}  // namespace

std::vector<int> materialize_path(const WeightedDiagram& wd) {
  const Diagram& d = wd.diagram;
  const auto bad = diagram_violations(d);
  if (!bad.empty()) throw validation_error("materialize_path: invalid diagram: " + bad.front());
  if (wd.weights.size() != d.edges.size())
    throw validation_error("materialize_path: one weight per edge required");
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const bool loop = d.edges[e].first == d.edges[e].second;
    if (wd.weights[e] < (loop ? 2 : 1))
      throw validation_error("materialize_path: weights must be >= 1 (>= 2 on loops) "
                             "for a simple non-backtracking realization");
  }

  std::vector<int> assignment;
  if (!assign_instances(d, assignment))
    throw validation_error("materialize_path: circuit admits no valid edge-instance "
                           "assignment");

  // labels: diagram vertex v -> v; middles of edge e -> fresh labels
  int next = d.n_vertices;
  std::vector<std::vector<int>> middles(d.edges.size());
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    for (std::int64_t k = 1; k < wd.weights[e] + 1; ++k) middles[e].push_back(next++);

  std::vector<int> out = {d.circuit[0]};
  for (std::size_t i = 0; i + 1 < d.circuit.size(); ++i) {
    const int e = assignment[i];
    const auto [a, b] = d.edges[e];
    const int from = d.circuit[i], to = d.circuit[i + 1];
    if (a == b) {
      // loops always unroll in their stored middle order
      for (int m : middles[e]) out.push_back(m);
    } else if (from == a && to == b) {
      for (int m : middles[e]) out.push_back(m);
    } else {
      for (auto it = middles[e].rbegin(); it != middles[e].rend(); ++it) out.push_back(*it);
    }
    out.push_back(to);
  }
  return relabel_first_appearance(out);
}

std::int64_t count_path_realizations(const WeightedDiagram& wd, std::int64_t n_labels) {
  for (std::int64_t w : wd.weights)
    if (w < 1) throw validation_error("count_path_realizations requires positive weights");
  const std::int64_t n = wd.half_length();
  const std::int64_t s = wd.diagram.s();
  const std::int64_t factors = n - s + 1;
  if (n_labels < factors) return 0;
  __int128 prod = 1;
  for (std::int64_t i = 0; i < factors; ++i) {
    prod *= (n_labels - i);
    if (prod > std::numeric_limits<std::int64_t>::max())
      throw validation_error("realization count overflows 64-bit range");
  }
  return static_cast<std::int64_t>(prod);
}

double realization_upper_bound(const WeightedDiagram& wd, std::int64_t n_labels) {
  const double exponent = static_cast<double>(wd.half_length() - wd.diagram.s() + 1);
  return std::pow(static_cast<double>(n_labels), exponent);
}

nlohmann::json diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["s"] = d.s();
  j["vertices"] = d.n_vertices;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (auto [a, b] : d.edges) edges.push_back({a, b});
  j["root"] = 0;
  j["circuit"] = d.circuit;
  return j;
}

}  // namespace regspec
