#include <doctest.h>

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/graph.hpp"

using namespace regspec;

namespace {

int triangle_count(const RegularGraph& g) {
  int t = 0;
  for (const Edge& e : g.edges)
    for (int w = 0; w < g.n_vertices; ++w)
      if (w != e.u && w != e.v && g.has_edge(e.u, w) && g.has_edge(e.v, w)) ++t;
  return t / 3;
}

}  // namespace

TEST_CASE("K4 is the unique 3-regular graph on 4 vertices") {
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    const RegularGraph g = sample_regular_graph(4, 3, seed);
    CHECK(g.edges.size() == 6);
    CHECK(validate_regular(g).empty());
  }
  CHECK(enumerate_labelled_regular(4, 3).size() == 1);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(sample_regular_graph(5, 3, 1), validation_error);  // odd N*d
  CHECK_THROWS_AS(sample_regular_graph(6, 2, 1), validation_error);  // d < 3
  CHECK_THROWS_AS(sample_regular_graph(4, 4, 1), validation_error);  // d >= N
}

TEST_CASE("sampling is deterministic in the seed") {
  const RegularGraph a = sample_regular_graph(24, 3, 1234);
  const RegularGraph b = sample_regular_graph(24, 3, 1234);
  const RegularGraph c = sample_regular_graph(24, 3, 1235);
  CHECK(a.edges == b.edges);
  CHECK(a.edges != c.edges);
}

TEST_CASE("samples pass validation across parameters") {
  for (auto [n, d] : {std::pair{10, 3}, {12, 4}, {16, 5}, {50, 3}})
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      CHECK(validate_regular(sample_regular_graph(n, d, seed)).empty());
}

TEST_CASE("validator reports degree and multi-edge violations") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  CHECK(validate_regular(k4).empty());

  auto edges = k4.edges;
  edges.pop_back();
  CHECK(validate_regular(graph_from_edges(4, 3, edges)).size() >= 2);

  auto doubled = k4.edges;
  doubled.push_back(doubled.front());
  const auto dup = validate_regular(graph_from_edges(4, 3, doubled));
  CHECK(std::any_of(dup.begin(), dup.end(), [](const std::string& s) {
    return s.find("multi-edge") != std::string::npos;
  }));
}

TEST_CASE("subgraph containment is labelled, not up to isomorphism") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  CHECK(contains_subgraph(k4, pattern_from_edges({{0, 1}})));
  CHECK(contains_subgraph(k4, named_pattern("triangle")));

  // K_{3,3} with parts {0,1,2} and {3,4,5}
  std::vector<Edge> edges;
  for (int u = 0; u < 3; ++u)
    for (int v = 3; v < 6; ++v) edges.push_back(make_edge(u, v));
  const RegularGraph k33 = graph_from_edges(6, 3, edges);
  CHECK(validate_regular(k33).empty());
  CHECK_FALSE(contains_subgraph(k33, pattern_from_edges({{0, 1}})));
  CHECK(contains_subgraph(k33, pattern_from_edges({{0, 3}})));

  CHECK_THROWS_AS(contains_subgraph(k4, pattern_from_edges({{0, 9}})), validation_error);
}

TEST_CASE("labelled enumeration matches the classical count on 6 vertices") {
  const auto all = enumerate_labelled_regular(6, 3);
  CHECK(all.size() == 70);
  for (const auto& g : all) CHECK(validate_regular(g).empty());
}

TEST_CASE("pairing sampler is uniform over labelled cubic graphs on 6 vertices") {
  // oracle: brute-force enumeration classified by triangle count
  // (K_{3,3} is triangle-free, the prism has two triangles)
  int labelled_k33 = 0, labelled_prism = 0;
  for (const auto& g : enumerate_labelled_regular(6, 3))
    (triangle_count(g) == 0 ? labelled_k33 : labelled_prism) += 1;
  CHECK(labelled_k33 == 10);
  CHECK(labelled_prism == 60);

  const std::int64_t samples = 100000;
  std::int64_t seen_k33 = 0;
  for (std::int64_t i = 0; i < samples; ++i)
    if (triangle_count(sample_regular_graph(6, 3, 1000 + static_cast<std::uint64_t>(i))) == 0)
      ++seen_k33;
  const double expect_k33 = samples * (labelled_k33 / 70.0);
  const double expect_prism = samples * (labelled_prism / 70.0);
  const double chi2 =
      (seen_k33 - expect_k33) * (seen_k33 - expect_k33) / expect_k33 +
      (samples - seen_k33 - expect_prism) * (samples - seen_k33 - expect_prism) / expect_prism;
  CHECK(chi2 < 6.635);  // df=1, alpha=0.01
}

TEST_CASE("rejection cap fires instead of hanging") {
  CHECK_THROWS_AS(sample_regular_graph(12, 8, 1, /*max_restarts=*/0), resource_cap_error);
}

TEST_CASE("graph json round trip") {
  const RegularGraph g = sample_regular_graph(10, 3, 3);
  const RegularGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.n_vertices == g.n_vertices);
  CHECK(back.degree == g.degree);
  CHECK(back.edges == g.edges);
}
