#include "regspec/weights.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "regspec/errors.hpp"
#include "regspec/rng.hpp"

namespace regspec {

std::string WeightEnsemble::name() const {
  switch (kind) {
    case EnsembleKind::rademacher: return "rademacher";
    case EnsembleKind::symmetric_uniform: return "symmetric-uniform";
    case EnsembleKind::finite_support: return "finite-support";
    case EnsembleKind::complex_unit: return "complex-unit";
    case EnsembleKind::all_ones: return "all-ones";
  }
  return "?";
}

WeightEnsemble WeightEnsemble::finite_support(std::vector<double> values,
                                              std::vector<double> probs) {
  if (values.size() != probs.size() || values.empty())
    throw validation_error("finite-support law needs matching nonempty values/probs");
  double total = 0.0, second = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (probs[i] < 0.0) throw validation_error("finite-support probabilities must be >= 0");
    total += probs[i];
    second += probs[i] * values[i] * values[i];
    // symmetry: the mirrored value must carry the same mass
    double mirrored = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k)
      if (std::abs(values[k] + values[i]) < 1e-12) mirrored += probs[k];
    if (std::abs(mirrored - probs[i]) > 1e-9)
      throw validation_error("finite-support law must be symmetric about 0");
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw validation_error("finite-support probabilities must sum to 1");
  if (std::abs(second - 1.0) > 1e-9)
    throw validation_error("finite-support law must have unit second moment");
  WeightEnsemble e;
  e.kind = EnsembleKind::finite_support;
  e.support_values = std::move(values);
  e.support_probs = std::move(probs);
  return e;
}

WeightEnsemble WeightEnsemble::parse(const std::string& name) {
  if (name == "rademacher") return rademacher();
  if (name == "symmetric-uniform" || name == "uniform") return symmetric_uniform();
  if (name == "complex-unit") return complex_unit();
  if (name == "all-ones") return all_ones();
  throw validation_error("unknown ensemble '" + name + "'");
}

WeightAssignment assign_weights(const RegularGraph& graph, const WeightEnsemble& ensemble,
                                std::uint64_t seed) {
  Rng rng(seed);
  WeightAssignment w;
  w.complex_field = ensemble.is_complex();
  w.values.reserve(graph.edges.size());
  const double root3 = std::sqrt(3.0);

  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    switch (ensemble.kind) {
      case EnsembleKind::rademacher:
        w.values.emplace_back(rng.coin() ? 1.0 : -1.0, 0.0);
        break;
      case EnsembleKind::symmetric_uniform:
        w.values.emplace_back(root3 * (2.0 * rng.uniform01() - 1.0), 0.0);
        break;
      case EnsembleKind::finite_support: {
        const double u = rng.uniform01();
        double acc = 0.0;
        double value = ensemble.support_values.back();
        for (std::size_t k = 0; k < ensemble.support_probs.size(); ++k) {
          acc += ensemble.support_probs[k];
          if (u < acc) {
            value = ensemble.support_values[k];
            break;
          }
        }
        w.values.emplace_back(value, 0.0);
        break;
      }
      case EnsembleKind::complex_unit: {
        // normalize a 2d gaussian; uniform on the circle without trig calls
        double x, y, r;
        do {
          x = rng.normal();
          y = rng.normal();
          r = std::hypot(x, y);
        } while (r < 1e-12);
        w.values.emplace_back(x / r, y / r);
        break;
      }
      case EnsembleKind::all_ones:
        w.values.emplace_back(1.0, 0.0);
        break;
    }
  }
  return w;
}

namespace {

template <typename Scalar>
HermitianMatrixT<Scalar> build_typed(const RegularGraph& g, const WeightAssignment& w,
                                     Scalar (*convert)(const std::complex<double>&)) {
  if (w.values.size() != g.edges.size())
    throw validation_error("weight assignment covers " + std::to_string(w.values.size()) +
                           " edges, graph has " + std::to_string(g.edges.size()));
  const int n = g.n_vertices;
  HermitianMatrixT<Scalar> m;
  m.dense.setZero(n, n);
  m.rows.assign(static_cast<std::size_t>(n), {});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [u, v] = g.edges[i];
    const Scalar x = convert(w.values[i]);
    m.dense(u, v) = x;
    if constexpr (std::is_same_v<Scalar, double>) {
      m.dense(v, u) = x;
      m.rows[v].emplace_back(u, x);
    } else {
      m.dense(v, u) = std::conj(x);
      m.rows[v].emplace_back(u, std::conj(x));
    }
    m.rows[u].emplace_back(v, x);
  }
  for (auto& row : m.rows)
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return m;
}

}  // namespace

HermitianMatrixR build_matrix_real(const RegularGraph& g, const WeightAssignment& w) {
  if (w.complex_field) throw validation_error("complex weights cannot build a real matrix");
  return build_typed<double>(g, w, +[](const std::complex<double>& z) { return z.real(); });
}

HermitianMatrixC build_matrix_complex(const RegularGraph& g, const WeightAssignment& w) {
  return build_typed<std::complex<double>>(
      g, w, +[](const std::complex<double>& z) { return z; });
}

HermitianMatrix build_matrix(const RegularGraph& g, const WeightAssignment& w) {
  if (w.complex_field) return build_matrix_complex(g, w);
  return build_matrix_real(g, w);
}

double hermiticity_defect(const HermitianMatrix& m) {
  return std::visit(
      [](const auto& mat) {
        return (mat.dense - mat.dense.adjoint()).cwiseAbs().maxCoeff();
      },
      m);
}

nlohmann::json weights_to_json(const RegularGraph& g, const WeightAssignment& w) {
  nlohmann::json j;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
  auto& ws = j["weights"] = nlohmann::json::array();
  for (const auto& z : w.values) {
    if (w.complex_field)
      ws.push_back({z.real(), z.imag()});
    else
      ws.push_back(z.real());
  }
  return j;
}

}  // namespace regspec
