#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regspec/diagrams.hpp"
#include "regspec/errors.hpp"
#include "regspec/graph.hpp"
#include "regspec/mckay.hpp"
#include "regspec/moments.hpp"
#include "regspec/nbwalk.hpp"
#include "regspec/rng.hpp"
#include "regspec/spectra.hpp"
#include "regspec/weights.hpp"

namespace py = pybind11;
using namespace regspec;

namespace {

WeightEnsemble ensemble_from_arg(const py::object& arg) {
  if (py::isinstance<py::str>(arg)) return WeightEnsemble::parse(arg.cast<std::string>());
  return arg.cast<WeightEnsemble>();
}

}  // namespace

PYBIND11_MODULE(_regspec, m) {
  m.doc() = "spectral statistics of randomly signed random regular graphs";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<resource_cap_error>(m, "ResourceCapError", PyExc_RuntimeError);

  py::class_<Edge>(m, "Edge")
      .def_readonly("u", &Edge::u)
      .def_readonly("v", &Edge::v)
      .def("__repr__", [](const Edge& e) {
        return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
      });

  py::class_<RegularGraph>(m, "RegularGraph")
      .def_readonly("n_vertices", &RegularGraph::n_vertices)
      .def_readonly("degree", &RegularGraph::degree)
      .def_readonly("adjacency", &RegularGraph::adjacency)
      .def_property_readonly("edges",
                             [](const RegularGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const Edge& e : g.edges) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def("has_edge", &RegularGraph::has_edge);

  m.def("sample_regular_graph", &sample_regular_graph, py::arg("n_vertices"), py::arg("degree"),
        py::arg("seed"), py::arg("max_restarts") = kDefaultRestartCap);
  m.def("validate_regular", &validate_regular);
  m.def(
      "graph_from_edges",
      [](int n, int d, const std::vector<std::pair<int, int>>& pairs) {
        std::vector<Edge> edges;
        for (auto [a, b] : pairs) edges.push_back(make_edge(a, b));
        return graph_from_edges(n, d, std::move(edges));
      },
      py::arg("n_vertices"), py::arg("degree"), py::arg("edges"));
  m.def("enumerate_labelled_regular", &enumerate_labelled_regular);
  m.def(
      "contains_subgraph",
      [](const RegularGraph& g, const std::vector<std::pair<int, int>>& pattern) {
        return contains_subgraph(g, pattern_from_edges(pattern));
      },
      py::arg("graph"), py::arg("pattern_edges"));

  py::class_<WeightEnsemble>(m, "WeightEnsemble")
      .def_static("rademacher", &WeightEnsemble::rademacher)
      .def_static("symmetric_uniform", &WeightEnsemble::symmetric_uniform)
      .def_static("complex_unit", &WeightEnsemble::complex_unit)
      .def_static("all_ones", &WeightEnsemble::all_ones)
      .def_static("finite_support", &WeightEnsemble::finite_support, py::arg("values"),
                  py::arg("probs"))
      .def_static("parse", &WeightEnsemble::parse)
      .def_property_readonly("name", &WeightEnsemble::name)
      .def_property_readonly("is_complex", &WeightEnsemble::is_complex);

  py::class_<WeightAssignment>(m, "WeightAssignment")
      .def_readonly("complex_field", &WeightAssignment::complex_field)
      .def_readonly("values", &WeightAssignment::values);

  m.def(
      "assign_weights",
      [](const RegularGraph& g, const py::object& ens, std::uint64_t seed) {
        return assign_weights(g, ensemble_from_arg(ens), seed);
      },
      py::arg("graph"), py::arg("ensemble"), py::arg("seed"));

  // dense matrices cross the boundary as numpy arrays
  m.def(
      "build_matrix",
      [](const RegularGraph& g, const WeightAssignment& w) -> py::object {
        if (w.complex_field) return py::cast(build_matrix_complex(g, w).dense);
        return py::cast(build_matrix_real(g, w).dense);
      },
      py::arg("graph"), py::arg("weights"));

  m.def(
      "nb_matrices",
      [](const Eigen::MatrixXd& mat, int d, int n_max) { return nb_matrices<double>(mat, d, n_max); },
      py::arg("matrix"), py::arg("degree"), py::arg("n_max"));
  m.def(
      "nb_matrices_complex",
      [](const Eigen::MatrixXcd& mat, int d, int n_max) {
        return nb_matrices<std::complex<double>>(mat, d, n_max);
      },
      py::arg("matrix"), py::arg("degree"), py::arg("n_max"));
  m.def(
      "chebyshev_trace",
      [](const RegularGraph& g, const WeightAssignment& w, int n) {
        if (w.complex_field) return chebyshev_trace(build_matrix_complex(g, w), g.degree, n);
        return chebyshev_trace(build_matrix_real(g, w), g.degree, n);
      },
      py::arg("graph"), py::arg("weights"), py::arg("n"));

  m.def(
      "enumerate_nb_closed_paths",
      [](const RegularGraph& g, int n, bool require_even, std::uint64_t work_cap) {
        return enumerate_nb_closed_paths(g, n, require_even, work_cap);
      },
      py::arg("graph"), py::arg("n"), py::arg("require_even_multiplicity"),
      py::arg("work_cap") = kDefaultWorkCap);
  m.def(
      "collect_nb_closed_paths",
      [](const RegularGraph& g, int n, bool require_even, std::uint64_t work_cap) {
        std::vector<std::vector<int>> paths;
        enumerate_nb_closed_paths(g, n, require_even, work_cap, &paths);
        return paths;
      },
      py::arg("graph"), py::arg("n"), py::arg("require_even_multiplicity"),
      py::arg("work_cap") = kDefaultWorkCap);
  m.def("signed_walk_sum", &signed_walk_sum, py::arg("graph"), py::arg("signs"), py::arg("u0"),
        py::arg("un"), py::arg("n"), py::arg("work_cap") = kDefaultWorkCap);

  py::class_<Lemma1Record>(m, "Lemma1Record")
      .def_readonly("path_count", &Lemma1Record::path_count)
      .def_readonly("sign_average", &Lemma1Record::sign_average)
      .def_readonly("equal", &Lemma1Record::equal);
  m.def("verify_lemma1", &verify_lemma1, py::arg("graph"), py::arg("n"),
        py::arg("work_cap") = kDefaultWorkCap);

  py::class_<Diagram>(m, "Diagram")
      .def_readonly("n_vertices", &Diagram::n_vertices)
      .def_readonly("edges", &Diagram::edges)
      .def_readonly("circuit", &Diagram::circuit)
      .def_property_readonly("s", &Diagram::s);
  py::class_<WeightedDiagram>(m, "WeightedDiagram")
      .def_readonly("diagram", &WeightedDiagram::diagram)
      .def_readonly("weights", &WeightedDiagram::weights)
      .def_property_readonly("half_length", &WeightedDiagram::half_length);

  m.def("enumerate_diagrams", &enumerate_diagrams_s, py::arg("s"));
  m.def("d1_count", &d1_count);
  m.def("d1_table", [] { return d1_table(); });
  m.def("diagram_violations", &diagram_violations);
  m.def("diagram_canonical_key", &diagram_canonical_key);
  m.def("count_weighted", &count_weighted, py::arg("s"), py::arg("n"), py::arg("positive_only"));
  m.def("reduce_path", &reduce_path);
  m.def("materialize_path", &materialize_path);
  m.def("count_path_realizations", &count_path_realizations, py::arg("weighted_diagram"),
        py::arg("n_labels"));

  m.def("falling_factorial", &falling_factorial);
  py::class_<FlBounds>(m, "FlBounds")
      .def_readonly("lower", &FlBounds::lower)
      .def_readonly("upper", &FlBounds::upper)
      .def_readonly("base", &FlBounds::base)
      .def_readonly("xi", &FlBounds::xi)
      .def_readonly("Xi", &FlBounds::Xi)
      .def_readonly("lower_clamped", &FlBounds::lower_clamped);
  m.def(
      "fl_bounds",
      [](const std::vector<std::pair<int, int>>& pattern, int n, int d) {
        return fl_bounds(pattern_from_edges(pattern), n, d);
      },
      py::arg("pattern_edges"), py::arg("n_vertices"), py::arg("degree"));
  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("estimate", &McEstimate::estimate)
      .def_readonly("standard_error", &McEstimate::standard_error)
      .def_readonly("n_samples", &McEstimate::n_samples);
  m.def(
      "mc_subgraph_frequency",
      [](const std::vector<std::pair<int, int>>& pattern, int n, int d, std::int64_t samples,
         std::uint64_t seed, int threads) {
        return mc_subgraph_frequency(pattern_from_edges(pattern), n, d, samples, seed, threads);
      },
      py::arg("pattern_edges"), py::arg("n_vertices"), py::arg("degree"), py::arg("n_samples"),
      py::arg("seed"), py::arg("threads") = 0);

  m.def("n_prime", &n_prime);
  m.def("series_p2n", &series_p2n, py::arg("n_vertices"), py::arg("degree"), py::arg("n"),
        py::arg("s_terms") = 0);
  m.def("series_trace_u", &series_trace_u, py::arg("n_vertices"), py::arg("degree"),
        py::arg("n"), py::arg("s_terms") = 0);
  m.def("series_goe", &series_goe, py::arg("n_prime"), py::arg("n"), py::arg("s_terms") = 0);
  m.def("upper_bound_p2n", &upper_bound_p2n, py::arg("n_vertices"), py::arg("degree"),
        py::arg("n"), py::arg("bound_constant"));

  py::enum_<TraceForm>(m, "TraceForm")
      .value("m2n", TraceForm::m2n)
      .value("trace_u", TraceForm::trace_u);
  py::enum_<TraceEstimator>(m, "TraceEstimator")
      .value("automatic", TraceEstimator::automatic)
      .value("exact", TraceEstimator::exact)
      .value("hutchinson", TraceEstimator::hutchinson);
  m.def(
      "mc_trace_moment",
      [](int n, int d, const py::object& ens, int index, std::int64_t samples,
         std::uint64_t seed, TraceForm form, TraceEstimator est, int probes, int threads) {
        return mc_trace_moment(n, d, ensemble_from_arg(ens), index, samples, seed, form, est,
                               probes, threads);
      },
      py::arg("n_vertices"), py::arg("degree"), py::arg("ensemble"), py::arg("index"),
      py::arg("n_samples"), py::arg("seed"), py::arg("form") = TraceForm::trace_u,
      py::arg("estimator") = TraceEstimator::automatic, py::arg("probes") = kDefaultProbes,
      py::arg("threads") = 0);
  m.def("goe_sample_trace", &goe_sample_trace, py::arg("n_prime"), py::arg("index"),
        py::arg("n_samples"), py::arg("seed"), py::arg("zero_diagonal") = true,
        py::arg("threads") = 0);

  m.def(
      "eigenvalues",
      [](const RegularGraph& g, const WeightAssignment& w) {
        return eigenvalues(build_matrix(g, w));
      },
      py::arg("graph"), py::arg("weights"));
  m.def("scaled_max", &scaled_max, py::arg("lambda_max"), py::arg("n_vertices"),
        py::arg("degree"));
  m.def("scaled_min", &scaled_min, py::arg("lambda_min"), py::arg("n_vertices"),
        py::arg("degree"));

  py::class_<ScaledSample>(m, "ScaledSample")
      .def_readonly("index", &ScaledSample::index)
      .def_readonly("seed", &ScaledSample::seed)
      .def_readonly("lambda_min", &ScaledSample::lambda_min)
      .def_readonly("lambda_max", &ScaledSample::lambda_max)
      .def_readonly("scaled_min", &ScaledSample::scaled_min)
      .def_readonly("scaled_max", &ScaledSample::scaled_max);
  m.def(
      "ensemble_scaled_statistics",
      [](int n, int d, const py::object& ens, std::int64_t samples, std::uint64_t seed,
         int threads, int skip_top) {
        return ensemble_scaled_statistics(n, d, ensemble_from_arg(ens), samples, seed, threads,
                                          skip_top);
      },
      py::arg("n_vertices"), py::arg("degree"), py::arg("ensemble"), py::arg("n_samples"),
      py::arg("seed"), py::arg("threads") = 0, py::arg("skip_top") = 0);

  py::enum_<GoeSampler>(m, "GoeSampler")
      .value("dense", GoeSampler::dense)
      .value("tridiagonal", GoeSampler::tridiagonal);
  m.def("goe_scaled_statistics", &goe_scaled_statistics, py::arg("n_prime"),
        py::arg("n_samples"), py::arg("seed"), py::arg("beta") = 1,
        py::arg("sampler") = GoeSampler::tridiagonal, py::arg("threads") = 0);

  py::class_<KsResult>(m, "KsResult")
      .def_readonly("statistic", &KsResult::statistic)
      .def_readonly("threshold", &KsResult::threshold)
      .def_readonly("alpha", &KsResult::alpha)
      .def_readonly("below_threshold", &KsResult::below_threshold);
  m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"), py::arg("alpha") = 0.01);

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("stream_index"));

#ifdef REGSPEC_VERSION
  m.attr("__version__") = REGSPEC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
