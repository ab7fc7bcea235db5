#ifndef REGSPEC_WEIGHTS_HPP
#define REGSPEC_WEIGHTS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "regspec/graph.hpp"

namespace regspec {

enum class EnsembleKind {
  rademacher,        // +-1 with probability 1/2 each
  symmetric_uniform, // uniform on [-sqrt(3), sqrt(3)]
  finite_support,    // user-specified symmetric law with unit variance
  complex_unit,      // uniform on the unit circle
  all_ones,          // deterministic 1 (plain adjacency matrix)
};

struct WeightEnsemble {
  EnsembleKind kind = EnsembleKind::rademacher;
  // finite_support only: value/probability pairs, validated symmetric with
  // unit second moment
  std::vector<double> support_values;
  std::vector<double> support_probs;

  bool is_complex() const { return kind == EnsembleKind::complex_unit; }
  std::string name() const;

  static WeightEnsemble rademacher() { return {EnsembleKind::rademacher, {}, {}}; }
  static WeightEnsemble symmetric_uniform() { return {EnsembleKind::symmetric_uniform, {}, {}}; }
  static WeightEnsemble complex_unit() { return {EnsembleKind::complex_unit, {}, {}}; }
  static WeightEnsemble all_ones() { return {EnsembleKind::all_ones, {}, {}}; }
  static WeightEnsemble finite_support(std::vector<double> values, std::vector<double> probs);
  static WeightEnsemble parse(const std::string& name);
};

// One scalar per edge, aligned with the graph's sorted edge list.
struct WeightAssignment {
  bool complex_field = false;
  std::vector<std::complex<double>> values;

  double real_at(std::size_t i) const { return values[i].real(); }
};

WeightAssignment assign_weights(const RegularGraph& graph, const WeightEnsemble& ensemble,
                                std::uint64_t seed);

template <typename Scalar>
struct HermitianMatrixT {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Dense dense;
  // sparse view: per-row (neighbor, weight) pairs, sorted by neighbor
  std::vector<std::vector<std::pair<int, Scalar>>> rows;

  int dimension() const { return static_cast<int>(dense.rows()); }
};

using HermitianMatrixR = HermitianMatrixT<double>;
using HermitianMatrixC = HermitianMatrixT<std::complex<double>>;
using HermitianMatrix = std::variant<HermitianMatrixR, HermitianMatrixC>;

HermitianMatrixR build_matrix_real(const RegularGraph& graph, const WeightAssignment& weights);
HermitianMatrixC build_matrix_complex(const RegularGraph& graph, const WeightAssignment& weights);
HermitianMatrix build_matrix(const RegularGraph& graph, const WeightAssignment& weights);

// max-abs entry of M - M^H (0 by construction for built matrices)
double hermiticity_defect(const HermitianMatrix& m);

nlohmann::json weights_to_json(const RegularGraph& graph, const WeightAssignment& weights);

}  // namespace regspec

#endif  // REGSPEC_WEIGHTS_HPP
