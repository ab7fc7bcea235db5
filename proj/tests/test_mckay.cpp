#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/mckay.hpp"
#include "regspec/rng.hpp"

using namespace regspec;

TEST_CASE("falling factorial basics and naive-product oracle") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(7, 0) == 1);
  CHECK(falling_factorial(3, 5) == 0);  // b > a

  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t a = 1 + static_cast<std::int64_t>(rng.below(60));
    const std::int64_t b = static_cast<std::int64_t>(rng.below(8));
    std::int64_t naive = 1;
    for (std::int64_t i = 0; i < b; ++i) naive *= a - i;
    if (b > a) naive = 0;
    CHECK(falling_factorial(a, b) == naive);
  }

  CHECK(std::abs(log_falling_factorial(75.0, 3) - std::log(75.0 * 74.0 * 73.0)) <= 1e-10);
}

TEST_CASE("single-edge bounds: base is d/N and the exact probability is bracketed") {
  const SubgraphPattern edge = named_pattern("edge");
  for (auto [n, d] : {std::pair{50, 3}, {80, 3}, {60, 4}}) {
    const FlBounds b = fl_bounds(edge, n, d);
    CHECK(std::abs(b.base - static_cast<double>(d) / n) <= 1e-12);
    // containment probability of a fixed labelled edge is exactly d/(N-1)
    const double exact = static_cast<double>(d) / (n - 1);
    CHECK(b.lower <= exact);
    CHECK(exact <= b.upper);
    CHECK(b.lower <= b.upper);
    CHECK(b.upper <= 1.0);
    CHECK_FALSE(b.lower_clamped);
  }
}

TEST_CASE("bound ordering holds for the larger patterns") {
  for (const char* name : {"path2", "path3", "triangle"}) {
    const FlBounds b = fl_bounds(named_pattern(name), 50, 3);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower >= 0.0);
  }
}

TEST_CASE("hypothesis and degree preconditions are enforced") {
  // E_G - E_L = 49 < 3*4*5 = 60
  CHECK_THROWS_AS(fl_bounds(named_pattern("edge"), 25, 4), validation_error);
  // a degree-4 star exceeds d = 3
  const SubgraphPattern star =
      pattern_from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK_THROWS_AS(fl_bounds(star, 100, 3), validation_error);
}

TEST_CASE("base telescopes under adding an isolated edge") {
  const int n = 60, d = 3;
  const double eg = d * n / 2.0;
  const SubgraphPattern l1 = pattern_from_edges({{0, 1}, {1, 2}});
  const SubgraphPattern l2 = pattern_from_edges({{0, 1}, {1, 2}, {10, 11}});
  const FlBounds b1 = fl_bounds(l1, n, d);
  const FlBounds b2 = fl_bounds(l2, n, d);
  const double increment = d * d / (2.0 * (eg - l1.edge_count()));
  CHECK(std::abs(b2.base / b1.base - increment) <= 1e-12 * increment);
}

TEST_CASE("triangle containment in the one-graph ensemble N=4 is certain") {
  const McEstimate mc = mc_subgraph_frequency(named_pattern("triangle"), 4, 3, 200, 5);
  CHECK(mc.estimate == 1.0);
  CHECK(mc.standard_error == 0.0);
}

TEST_CASE("edge frequency matches the exact symmetry value d/(N-1)") {
  const std::int64_t samples = 20000;
  const McEstimate mc = mc_subgraph_frequency(named_pattern("edge"), 20, 3, samples, 99);
  const double exact = 3.0 / 19.0;
  CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.standard_error);
}

TEST_CASE("monte carlo estimate is independent of the worker count") {
  const McEstimate a = mc_subgraph_frequency(named_pattern("path2"), 30, 3, 4000, 7, 1);
  const McEstimate b = mc_subgraph_frequency(named_pattern("path2"), 30, 3, 4000, 7, 2);
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("mckay report carries the sandwich verdict") {
  const SubgraphPattern edge = named_pattern("edge");
  const FlBounds b = fl_bounds(edge, 50, 3);
  const McEstimate mc = mc_subgraph_frequency(edge, 50, 3, 20000, 3);
  const nlohmann::json j = mckay_report("edge", edge, 50, 3, b, mc);
  CHECK(j["within_bounds"] == true);
  CHECK(j["N"] == 50);
  CHECK(j["lower"].get<double>() <= j["upper"].get<double>());
}
