#include <doctest.h>

#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/graph.hpp"
#include "regspec/weights.hpp"

using namespace regspec;

TEST_CASE("all-ones assigns exactly 1 on every edge") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  const WeightAssignment w = assign_weights(k4, WeightEnsemble::all_ones(), 5);
  for (const auto& z : w.values) CHECK(z == std::complex<double>(1.0, 0.0));
}

TEST_CASE("rademacher draws are signs and reproducible") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  const WeightAssignment a = assign_weights(k4, WeightEnsemble::rademacher(), 17);
  const WeightAssignment b = assign_weights(k4, WeightEnsemble::rademacher(), 17);
  CHECK(a.values == b.values);
  CHECK(a.values.size() == 6);
  for (const auto& z : a.values) {
    CHECK(std::abs(std::abs(z.real()) - 1.0) == 0.0);
    CHECK(z.imag() == 0.0);
  }
}

TEST_CASE("complex-unit weights sit on the unit circle") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  const WeightAssignment w = assign_weights(k4, WeightEnsemble::complex_unit(), 3);
  CHECK(w.complex_field);
  for (const auto& z : w.values) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-12);
}

TEST_CASE("built matrices are Hermitian with d nonzeros per row") {
  const RegularGraph g = sample_regular_graph(12, 3, 9);
  for (const auto& ens : {WeightEnsemble::rademacher(), WeightEnsemble::complex_unit()}) {
    const HermitianMatrix m = build_matrix(g, assign_weights(g, ens, 11));
    CHECK(hermiticity_defect(m) <= 1e-12);
    std::visit(
        [&](const auto& mat) {
          CHECK(mat.dimension() == 12);
          for (const auto& row : mat.rows) CHECK(row.size() == 3);
          for (int i = 0; i < 12; ++i) CHECK(std::abs(mat.dense(i, i)) == 0.0);
        },
        m);
  }
}

TEST_CASE("rademacher matrices have entries in {-1,0,1}") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  const HermitianMatrixR m =
      build_matrix_real(k4, assign_weights(k4, WeightEnsemble::rademacher(), 23));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double v = std::abs(m.dense(i, j));
      CHECK((v == 0.0 || v == 1.0));
    }
}

TEST_CASE("weight count mismatches are rejected") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  WeightAssignment w = assign_weights(k4, WeightEnsemble::rademacher(), 1);
  w.values.pop_back();
  CHECK_THROWS_AS(build_matrix_real(k4, w), validation_error);
  CHECK_THROWS_AS(build_matrix_real(sample_regular_graph(6, 3, 1), w), validation_error);
}

TEST_CASE("finite-support laws are checked for symmetry and unit variance") {
  const auto three_point =
      WeightEnsemble::finite_support({-std::sqrt(2.0), 0.0, std::sqrt(2.0)}, {0.25, 0.5, 0.25});
  const RegularGraph g = sample_regular_graph(10, 3, 2);
  const WeightAssignment w = assign_weights(g, three_point, 4);
  for (const auto& z : w.values)
    CHECK((z.real() == 0.0 || std::abs(std::abs(z.real()) - std::sqrt(2.0)) < 1e-15));

  CHECK_THROWS_AS(WeightEnsemble::finite_support({1.0}, {1.0}), validation_error);
  CHECK_THROWS_AS(WeightEnsemble::finite_support({-2.0, 2.0}, {0.5, 0.5}), validation_error);
  CHECK_THROWS_AS(WeightEnsemble::finite_support({-1.0, 1.0}, {0.25, 0.5}), validation_error);
}

TEST_CASE("empirical second moments match the ensemble contracts") {
  // one draw per edge over many graphs; ~1e5 draws each
  const int graphs = 40;
  const RegularGraph g = sample_regular_graph(1668, 3, 77);  // 2502 edges

  auto accumulate = [&](const WeightEnsemble& ens, auto&& f) {
    double sum = 0.0;
    std::int64_t count = 0;
    for (int r = 0; r < graphs; ++r) {
      const WeightAssignment w = assign_weights(g, ens, 1000 + static_cast<std::uint64_t>(r));
      for (const auto& z : w.values) {
        sum += f(z);
        ++count;
      }
    }
    return std::pair{sum / static_cast<double>(count), count};
  };

  // uniform on [-sqrt(3), sqrt(3)]: Var(S^2) = 9/5 - 1
  auto [m_unif, n_unif] =
      accumulate(WeightEnsemble::symmetric_uniform(),
                 [](const std::complex<double>& z) { return z.real() * z.real(); });
  CHECK(std::abs(m_unif - 1.0) <= 4.0 * std::sqrt(0.8 / static_cast<double>(n_unif)));

  // Re(S)^2 for S uniform on the circle: mean 1/2, variance 1/8
  auto [m_re, n_re] = accumulate(WeightEnsemble::complex_unit(), [](const std::complex<double>& z) {
    return z.real() * z.real();
  });
  CHECK(std::abs(m_re - 0.5) <= 4.0 * std::sqrt(0.125 / static_cast<double>(n_re)));
  auto [m_im, n_im] = accumulate(WeightEnsemble::complex_unit(), [](const std::complex<double>& z) {
    return z.imag() * z.imag();
  });
  CHECK(std::abs(m_im - 0.5) <= 4.0 * std::sqrt(0.125 / static_cast<double>(n_im)));
}

TEST_CASE("weights json dump aligns with the sorted edge list") {
  const RegularGraph k4 = sample_regular_graph(4, 3, 0);
  const WeightAssignment w = assign_weights(k4, WeightEnsemble::rademacher(), 8);
  const nlohmann::json j = weights_to_json(k4, w);
  CHECK(j["edges"].size() == 6);
  CHECK(j["weights"].size() == 6);
  CHECK(j["weights"][0].is_number());

  const nlohmann::json jc =
      weights_to_json(k4, assign_weights(k4, WeightEnsemble::complex_unit(), 8));
  CHECK(jc["weights"][0].is_array());
}
