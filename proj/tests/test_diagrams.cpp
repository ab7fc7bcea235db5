#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "regspec/diagrams.hpp"
#include "regspec/errors.hpp"
#include "regspec/rng.hpp"

using namespace regspec;

namespace {

// Two worked reductions: a stem with a doubled cycle, and a stem branching
// into two doubled-cycle excursions.
const std::vector<int> kStemLoopPath = {1, 2, 3, 4, 5, 6, 7, 4, 5, 6, 7, 4, 3, 2, 1};
const std::vector<int> kDumbbellPath = {1,  2,  3,  4,  5,  6,  7,  8,  9,  7,  8, 9,
                                        7,  6,  5,  10, 11, 12, 13, 14, 15, 16, 12, 13,
                                        14, 15, 16, 12, 11, 10, 5,  4,  3,  2,  1};

Diagram stem_loop_diagram() {
  Diagram d;
  d.n_vertices = 2;
  d.edges = {{0, 1}, {1, 1}};
  d.circuit = {0, 1, 1, 1, 0};
  return d;
}

Diagram dumbbell_diagram() {
  Diagram d;
  d.n_vertices = 4;
  d.edges = {{0, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 3}};
  d.circuit = {0, 1, 2, 2, 2, 1, 3, 3, 3, 1, 0};
  return d;
}

// weight sequence along the circuit, canonicalized over direction
std::vector<std::int64_t> circuit_weight_profile(const WeightedDiagram& wd) {
  std::map<std::pair<int, int>, std::vector<std::int64_t>> by_pair;
  for (std::size_t e = 0; e < wd.diagram.edges.size(); ++e)
    by_pair[wd.diagram.edges[e]].push_back(wd.weights[e]);
  for (auto& [pair, ws] : by_pair) std::sort(ws.begin(), ws.end());

  // per circuit step, emit the sorted weight multiset index of its pair; the
  // ambiguity between parallel copies is resolved by the sort
  std::vector<std::int64_t> forward, backward;
  const auto& c = wd.diagram.circuit;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    auto key = std::minmax(c[i], c[i + 1]);
    const auto& ws = by_pair[{key.first, key.second}];
    forward.insert(forward.end(), ws.begin(), ws.end());
  }
  backward.assign(forward.rbegin(), forward.rend());
  return std::min(forward, backward);
}

}  // namespace

TEST_CASE("diagram counts by enumeration: D1 = 1, 4, 60, 1730") {
  CHECK(d1_count(1) == 1);
  CHECK(d1_count(2) == 4);
  CHECK(d1_count(3) == 60);
  CHECK(d1_count(4) == 1730);
  CHECK_THROWS_AS(enumerate_diagrams_s(kMaxDiagramS + 1), validation_error);

  // frozen table used by the series: re-derived here up to s = 4
  for (int s = 1; s <= 4; ++s) CHECK(d1_table()[s - 1] == d1_count(s));
  CHECK(d1_table().size() >= 5);
}

TEST_CASE("census: every enumerated diagram satisfies the structural invariants") {
  for (int s = 1; s <= 4; ++s) {
    const auto diagrams = enumerate_diagrams_s(s);
    std::set<std::vector<int>> keys;
    for (const Diagram& d : diagrams) {
      CHECK(diagram_violations(d).empty());
      CHECK(d.n_vertices == 2 * s);
      CHECK(d.n_edges() == 3 * s - 1);
      // handshake: 1 + 3(2s-1) = 2 (3s-1)
      CHECK(1 + 3 * (2 * s - 1) == 2 * d.n_edges());
      keys.insert(diagram_canonical_key(d));
    }
    CHECK(keys.size() == diagrams.size());
  }
}

TEST_CASE("the single s=1 diagram is the rooted stem plus loop") {
  const auto diagrams = enumerate_diagrams_s(1);
  REQUIRE(diagrams.size() == 1);
  CHECK(diagram_canonical_key(diagrams[0]) == diagram_canonical_key(stem_loop_diagram()));
}

TEST_CASE("s=2 classes include the dumbbell shape") {
  const auto diagrams = enumerate_diagrams_s(2);
  CHECK(diagrams.size() >= 2);
  const auto key = diagram_canonical_key(dumbbell_diagram());
  CHECK(std::any_of(diagrams.begin(), diagrams.end(), [&](const Diagram& d) {
    return diagram_canonical_key(d) == key;
  }));
}

TEST_CASE("canonical key is invariant under relabeling and direction") {
  Rng rng(404);
  for (int s = 2; s <= 3; ++s) {
    for (const Diagram& d : enumerate_diagrams_s(s)) {
      const auto key = diagram_canonical_key(d);
      // random root-preserving relabeling
      std::vector<int> perm(static_cast<std::size_t>(d.n_vertices));
      for (int v = 0; v < d.n_vertices; ++v) perm[v] = v;
      for (std::size_t i = perm.size() - 1; i > 1; --i)
        std::swap(perm[i], perm[1 + rng.below(i)]);
      Diagram shuffled = d;
      for (auto& [a, b] : shuffled.edges) {
        a = perm[a];
        b = perm[b];
        if (a > b) std::swap(a, b);
      }
      std::sort(shuffled.edges.begin(), shuffled.edges.end());
      for (int& v : shuffled.circuit) v = perm[v];
      CHECK(diagram_canonical_key(shuffled) == key);

      Diagram reversed = d;
      std::reverse(reversed.circuit.begin(), reversed.circuit.end());
      CHECK(diagram_canonical_key(reversed) == key);
    }
  }
}

TEST_CASE("the example stem-plus-cycle path reduces to the s=1 diagram") {
  const WeightedDiagram wd = reduce_path(kStemLoopPath);
  CHECK(wd.diagram.s() == 1);
  CHECK(diagram_canonical_key(wd.diagram) == diagram_canonical_key(stem_loop_diagram()));
  CHECK(wd.half_length() == 7);  // 2n = 14
  // stem of 3 edges (weight 2), cycle of 4 edges (weight 3)
  std::vector<std::int64_t> ws = wd.weights;
  std::sort(ws.begin(), ws.end());
  CHECK(ws == std::vector<std::int64_t>{2, 3});
}

TEST_CASE("the example double-excursion path reduces to the dumbbell diagram") {
  const WeightedDiagram wd = reduce_path(kDumbbellPath);
  CHECK(wd.diagram.s() == 2);
  CHECK(diagram_canonical_key(wd.diagram) == diagram_canonical_key(dumbbell_diagram()));
  CHECK(wd.half_length() * 2 == static_cast<std::int64_t>(kDumbbellPath.size()) - 1);

  // vertex census for positive-weight paths: n-s+1 distinct vertices
  const std::int64_t n = wd.half_length();
  std::set<int> distinct(kDumbbellPath.begin(), kDumbbellPath.end());
  CHECK(static_cast<std::int64_t>(distinct.size()) == n - 2 + 1);
}

TEST_CASE("reduce_path rejects out-of-scope paths") {
  // odd multiplicities (a plain triangle)
  CHECK_THROWS_AS(reduce_path({0, 1, 2, 0}), validation_error);
  // backtracking
  CHECK_THROWS_AS(reduce_path({0, 1, 0, 1, 0}), validation_error);
  // not closed
  CHECK_THROWS_AS(reduce_path({0, 1, 2}), validation_error);
  // doubled pure cycle: start vertex has degree 2 (erased-stem shape)
  CHECK_THROWS_AS(reduce_path({0, 1, 2, 0, 1, 2, 0}), validation_error);
  // every edge traversed four times (identification regime)
  CHECK_THROWS_AS(reduce_path({0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0}), validation_error);
}

TEST_CASE("materialize/reduce round trip over all small diagrams") {
  Rng rng(7);
  for (int s = 1; s <= 3; ++s) {
    for (const Diagram& d : enumerate_diagrams_s(s)) {
      WeightedDiagram wd;
      wd.diagram = d;
      for (const auto& [a, b] : d.edges)
        wd.weights.push_back(a == b ? 2 + static_cast<std::int64_t>(rng.below(2))
                                    : 1 + static_cast<std::int64_t>(rng.below(3)));
      const std::vector<int> path = materialize_path(wd);
      CHECK(static_cast<std::int64_t>(path.size()) == 2 * wd.half_length() + 1);

      const WeightedDiagram back = reduce_path(path);
      CHECK(diagram_canonical_key(back.diagram) == diagram_canonical_key(d));
      CHECK(back.half_length() == wd.half_length());
      CHECK(circuit_weight_profile(back) == circuit_weight_profile(wd));
    }
  }
}

TEST_CASE("weighted counts: closed forms and spec examples") {
  // s=1: two edges, sum(w+1) = n
  for (std::int64_t n : {3, 7, 20}) CHECK(count_weighted(1, n, false) == n + 1);
  CHECK(count_weighted(1, 7, true) == 4);
  CHECK(count_weighted(2, 20, true) == 1001);    // binom(14,4)
  CHECK(count_weighted(2, 20, false) == 10626);  // binom(24,4)
  CHECK(count_weighted(2, 20, true) <= count_weighted(2, 20, false));
  CHECK_THROWS_AS(count_weighted(2, 5, false), validation_error);

  // brute-force composition counts agree with the binomials
  for (int s : {1, 2}) {
    for (std::int64_t n : {6, 9, 12}) {
      const int parts = 3 * s - 1;
      std::int64_t all = 0, positive = 0;
      std::vector<std::int64_t> x(static_cast<std::size_t>(parts));
      std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t left) {
        if (i == parts - 1) {
          x[i] = left;
          ++all;
          if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v >= 2; }))
            ++positive;
          return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
          x[i] = v;
          rec(i + 1, left - v);
        }
      };
      rec(0, n);
      CHECK(all == count_weighted(s, n, false));
      CHECK(positive == count_weighted(s, n, true));
    }
  }
}

TEST_CASE("path realization counts") {
  WeightedDiagram wd;
  wd.diagram = stem_loop_diagram();
  wd.weights = {1, 2};  // n = 5, s = 1, n-s+1 = 5 labels needed
  CHECK(count_path_realizations(wd, 4) == 0);
  CHECK(count_path_realizations(wd, 10) == 10 * 9 * 8 * 7 * 6);
  CHECK(static_cast<double>(count_path_realizations(wd, 10)) <=
        realization_upper_bound(wd, 10));

  wd.weights = {0, 2};
  CHECK_THROWS_AS(count_path_realizations(wd, 10), validation_error);
}

TEST_CASE("diagram json dump shape") {
  const nlohmann::json j = diagram_to_json(dumbbell_diagram());
  CHECK(j["s"] == 2);
  CHECK(j["vertices"] == 4);
  CHECK(j["root"] == 0);
  CHECK(j["edges"].size() == 5);
  CHECK(j["circuit"].size() == 11);
}
