// regspec: reproducible experiments on spectra of randomly signed regular
// graphs. Every subcommand embeds its resolved configuration and version in
// the output; per-sample seeds are derived from (seed, sample index), so data
// is byte-identical across reruns and worker counts.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "regspec/diagrams.hpp"
#include "regspec/errors.hpp"
#include "regspec/graph.hpp"
#include "regspec/mckay.hpp"
#include "regspec/moments.hpp"
#include "regspec/nbwalk.hpp"
#include "regspec/rng.hpp"
#include "regspec/spectra.hpp"
#include "regspec/weights.hpp"

#ifndef REGSPEC_VERSION
#define REGSPEC_VERSION "0.0.0-unknown"
#endif

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw regspec::validation_error("cannot open output file '" + path + "'");
  out << text;
}

void emit_json(const std::string& path, json j, const json& config) {
  j["version"] = REGSPEC_VERSION;
  j["config"] = config;
  write_text(path, j.dump() + "\n");
}

// Flags take precedence over config-file keys, which take precedence over
// defaults: any option the command line did not set is looked up in --config.
void apply_config_file(CLI::App* cmd, const std::string& config_path) {
  if (config_path.empty()) return;
  std::ifstream in(config_path);
  if (!in) throw regspec::validation_error("cannot open config file '" + config_path + "'");
  json cfg = json::parse(in);
  for (auto* opt : cmd->get_options()) {
    if (opt->count() > 0) continue;
    for (const std::string& name : opt->get_lnames()) {
      if (!cfg.contains(name)) continue;
      const json& v = cfg.at(name);
      if (v.is_boolean()) {
        if (v.get<bool>()) opt->add_result("true");
      } else if (v.is_string()) {
        opt->add_result(v.get<std::string>());
      } else {
        opt->add_result(v.dump());
      }
      opt->run_callback();
    }
  }
}

struct CommonOpts {
  std::string config_path;
  std::string output = "-";
  std::uint64_t seed = 1;
  int threads = 0;

  void attach(CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");
    cmd->add_option("--output", output, "output path, '-' for stdout");
    if (with_seed) cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
  }

  // execution-only details (worker count, output paths) stay out of the
  // embedded config so that data bytes are identical across worker counts
  json base_config(const CLI::App* cmd) const {
    json c;
    c["subcommand"] = cmd->get_name();
    return c;
  }
};

int run_app(int argc, char** argv);

// ---- subcommand wiring ----------------------------------------------------

void add_sample_graph(CLI::App& app) {
  auto* cmd = app.add_subcommand("sample-graph", "sample a uniform random d-regular graph");
  auto opts = std::make_shared<CommonOpts>();
  auto n = std::make_shared<int>(20);
  auto d = std::make_shared<int>(3);
  auto cap = std::make_shared<std::uint64_t>(regspec::kDefaultRestartCap);
  cmd->add_option("--N", *n, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--restart-cap", *cap, "pairing-model restart cap");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N"] = *n;
    config["d"] = *d;
    config["seed"] = opts->seed;
    config["restart-cap"] = *cap;
    const regspec::RegularGraph g = regspec::sample_regular_graph(*n, *d, opts->seed, *cap);
    json out = regspec::graph_to_json(g);
    emit_json(opts->output, out, config);
  });
}

void add_verify_lemma1(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "verify-lemma1", "exact sign-average of tr M^(n) vs the path count P_n on one graph");
  auto opts = std::make_shared<CommonOpts>();
  auto n_vertices = std::make_shared<int>(8);
  auto d = std::make_shared<int>(3);
  auto n = std::make_shared<int>(6);
  cmd->add_option("--N", *n_vertices, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--n", *n, "walk length");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N"] = *n_vertices;
    config["d"] = *d;
    config["n"] = *n;
    config["seed"] = opts->seed;
    const regspec::RegularGraph g =
        regspec::sample_regular_graph(*n_vertices, *d, opts->seed);
    const regspec::Lemma1Record rec = regspec::verify_lemma1(g, *n);
    json out = regspec::lemma1_to_json(rec, *n);
    out["graph"] = regspec::graph_to_json(g);
    emit_json(opts->output, out, config);
    if (!rec.equal) throw std::runtime_error("sign-average and path count differ");
  });
}

void add_enum_diagrams(CLI::App& app) {
  auto* cmd = app.add_subcommand("enum-diagrams",
                                 "enumerate diagram isomorphism classes up to s-max");
  auto opts = std::make_shared<CommonOpts>();
  auto s_max = std::make_shared<int>(3);
  auto full = std::make_shared<bool>(false);
  cmd->add_option("--s-max", *s_max, "largest diagram parameter");
  cmd->add_flag("--full", *full, "dump every diagram, not only the counts");
  opts->attach(cmd, /*with_seed=*/false);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["s-max"] = *s_max;
    config["full"] = *full;
    json out;
    auto& counts = out["d1"] = json::array();
    for (int s = 1; s <= *s_max; ++s) {
      const auto diagrams = regspec::enumerate_diagrams_s(s);
      counts.push_back({{"s", s}, {"count", diagrams.size()}});
      if (*full) {
        auto& dump = out["diagrams"][std::to_string(s)] = json::array();
        for (const auto& dg : diagrams) dump.push_back(regspec::diagram_to_json(dg));
      }
    }
    emit_json(opts->output, out, config);
  });
}

void add_weighted_counts(CLI::App& app) {
  auto* cmd = app.add_subcommand("weighted-counts",
                                 "weighted-diagram counts and the binomial sandwich");
  auto opts = std::make_shared<CommonOpts>();
  auto s = std::make_shared<int>(2);
  auto n = std::make_shared<std::int64_t>(20);
  cmd->add_option("--s", *s, "diagram parameter");
  cmd->add_option("--n", *n, "half path length");
  opts->attach(cmd, /*with_seed=*/false);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["s"] = *s;
    config["n"] = *n;
    json out;
    out["s"] = *s;
    out["n"] = *n;
    out["all_weights"] = regspec::count_weighted(*s, *n, false);
    out["positive_weights"] = regspec::count_weighted(*s, *n, true);
    out["lower_binomial"] = regspec::binomial(*n - 3 * *s, 3 * *s - 2);
    out["upper_binomial"] = regspec::binomial(*n + 3 * *s - 2, 3 * *s - 2);
    emit_json(opts->output, out, config);
  });
}

void add_mckay_check(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "mckay-check", "Monte Carlo subgraph frequency against the McKay sandwich");
  auto opts = std::make_shared<CommonOpts>();
  auto n_vertices = std::make_shared<int>(50);
  auto d = std::make_shared<int>(3);
  auto pattern = std::make_shared<std::string>("edge");
  auto samples = std::make_shared<std::int64_t>(100000);
  cmd->add_option("--N", *n_vertices, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--pattern", *pattern, "edge | path2 | path3 | triangle");
  cmd->add_option("--samples", *samples, "Monte Carlo samples");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N"] = *n_vertices;
    config["d"] = *d;
    config["pattern"] = *pattern;
    config["samples"] = *samples;
    config["seed"] = opts->seed;
    const regspec::SubgraphPattern pat = regspec::named_pattern(*pattern);
    const regspec::FlBounds bounds = regspec::fl_bounds(pat, *n_vertices, *d);
    const regspec::McEstimate mc = regspec::mc_subgraph_frequency(
        pat, *n_vertices, *d, *samples, opts->seed, opts->threads);
    emit_json(opts->output,
              regspec::mckay_report(*pattern, pat, *n_vertices, *d, bounds, mc), config);
  });
}

void add_moments(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "moments", "Monte Carlo trace moments of the signed ensemble vs the series");
  auto opts = std::make_shared<CommonOpts>();
  auto n_vertices = std::make_shared<int>(1000);
  auto d = std::make_shared<int>(3);
  auto index = std::make_shared<int>(16);
  auto ensemble = std::make_shared<std::string>("rademacher");
  auto samples = std::make_shared<std::int64_t>(200);
  auto form = std::make_shared<std::string>("trace-u");
  auto estimator = std::make_shared<std::string>("auto");
  auto probes = std::make_shared<int>(regspec::kDefaultProbes);
  auto s_terms = std::make_shared<int>(0);
  cmd->add_option("--N", *n_vertices, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--n", *index, "full walk index: tr M^(n) or tr U_n (even n = 2x paper n)");
  cmd->add_option("--ensemble", *ensemble, "rademacher | symmetric-uniform | complex-unit | all-ones");
  cmd->add_option("--samples", *samples, "Monte Carlo samples");
  cmd->add_option("--form", *form, "trace-u | m2n");
  cmd->add_option("--estimator", *estimator, "auto | exact | hutchinson");
  cmd->add_option("--probes", *probes, "Hutchinson probe vectors per sample");
  cmd->add_option("--s-terms", *s_terms, "series truncation depth (0 = default)");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N"] = *n_vertices;
    config["d"] = *d;
    config["n"] = *index;
    config["ensemble"] = *ensemble;
    config["samples"] = *samples;
    config["form"] = *form;
    config["estimator"] = *estimator;
    config["probes"] = *probes;
    config["s-terms"] = *s_terms;
    config["seed"] = opts->seed;

    regspec::TraceForm tf;
    if (*form == "trace-u")
      tf = regspec::TraceForm::trace_u;
    else if (*form == "m2n")
      tf = regspec::TraceForm::m2n;
    else
      throw regspec::validation_error("unknown form '" + *form + "'");
    regspec::TraceEstimator te;
    if (*estimator == "auto")
      te = regspec::TraceEstimator::automatic;
    else if (*estimator == "exact")
      te = regspec::TraceEstimator::exact;
    else if (*estimator == "hutchinson")
      te = regspec::TraceEstimator::hutchinson;
    else
      throw regspec::validation_error("unknown estimator '" + *estimator + "'");

    const regspec::McEstimate mc = regspec::mc_trace_moment(
        *n_vertices, *d, regspec::WeightEnsemble::parse(*ensemble), *index, *samples,
        opts->seed, tf, te, *probes, opts->threads);
    double series = 0.0;
    if (*index % 2 == 0 && *index > 0) {
      series = tf == regspec::TraceForm::trace_u
                   ? regspec::series_trace_u(*n_vertices, *d, *index / 2, *s_terms)
                   : regspec::series_p2n(*n_vertices, *d, *index / 2, *s_terms);
    }
    emit_json(opts->output, regspec::moment_report("moment", config, mc, series), config);
  });
}

void add_goe_compare(CLI::App& app) {
  auto* cmd = app.add_subcommand("goe-compare",
                                 "Monte Carlo GOE trace moments vs the GOE series");
  auto opts = std::make_shared<CommonOpts>();
  auto n_prime = std::make_shared<int>(600);
  auto index = std::make_shared<int>(8);
  auto samples = std::make_shared<std::int64_t>(200);
  auto standard_diag = std::make_shared<bool>(false);
  auto s_terms = std::make_shared<int>(0);
  cmd->add_option("--N-prime", *n_prime, "matrix dimension N'");
  cmd->add_option("--n", *index, "Chebyshev index of tr U_n");
  cmd->add_option("--samples", *samples, "Monte Carlo samples");
  cmd->add_flag("--standard-diagonal", *standard_diag,
                "sample the usual GOE diagonal (variance 2) instead of zero diagonal");
  cmd->add_option("--s-terms", *s_terms, "series truncation depth (0 = default)");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N-prime"] = *n_prime;
    config["n"] = *index;
    config["samples"] = *samples;
    config["standard-diagonal"] = *standard_diag;
    config["s-terms"] = *s_terms;
    config["seed"] = opts->seed;
    const regspec::McEstimate mc = regspec::goe_sample_trace(
        *n_prime, *index, *samples, opts->seed, !*standard_diag, opts->threads);
    double series = 0.0;
    if (*index % 2 == 0 && *index > 0)
      series = regspec::series_goe(*n_prime, *index / 2, *s_terms);
    emit_json(opts->output, regspec::moment_report("goe-moment", config, mc, series), config);
  });
}

void add_spectrum_ensemble(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "spectrum-ensemble", "scaled extreme-eigenvalue samples of the signed ensemble (CSV)");
  auto opts = std::make_shared<CommonOpts>();
  auto n_vertices = std::make_shared<int>(500);
  auto d = std::make_shared<int>(3);
  auto ensemble = std::make_shared<std::string>("rademacher");
  auto samples = std::make_shared<std::int64_t>(300);
  auto skip_top = std::make_shared<int>(0);
  auto summary_path = std::make_shared<std::string>("");
  cmd->add_option("--N", *n_vertices, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--ensemble", *ensemble, "weight ensemble");
  cmd->add_option("--samples", *samples, "number of (graph, weights) draws");
  cmd->add_option("--skip-top", *skip_top,
                  "use the (1+skip)-th largest eigenvalue (1 = exploratory second-eigenvalue "
                  "statistic for all-ones)");
  cmd->add_option("--summary", *summary_path, "optional JSON summary path");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    json config = opts->base_config(cmd);
    config["N"] = *n_vertices;
    config["d"] = *d;
    config["ensemble"] = *ensemble;
    config["samples"] = *samples;
    config["skip-top"] = *skip_top;
    config["seed"] = opts->seed;

    const auto recs = regspec::ensemble_scaled_statistics(
        *n_vertices, *d, regspec::WeightEnsemble::parse(*ensemble), *samples, opts->seed,
        opts->threads, *skip_top);
    std::ostringstream csv;
    csv << "sample_index,lambda_min,lambda_max,scaled_min,scaled_max,seed\r\n";
    for (const auto& r : recs)
      csv << r.index << ',' << format_double(r.lambda_min) << ',' << format_double(r.lambda_max)
          << ',' << format_double(r.scaled_min) << ',' << format_double(r.scaled_max) << ','
          << r.seed << "\r\n";
    write_text(opts->output, csv.str());

    if (!summary_path->empty()) {
      double mean_max = 0, mean_min = 0;
      for (const auto& r : recs) {
        mean_max += r.scaled_max;
        mean_min += r.scaled_min;
      }
      mean_max /= static_cast<double>(recs.size());
      mean_min /= static_cast<double>(recs.size());
      double var_max = 0, var_min = 0;
      for (const auto& r : recs) {
        var_max += (r.scaled_max - mean_max) * (r.scaled_max - mean_max);
        var_min += (r.scaled_min - mean_min) * (r.scaled_min - mean_min);
      }
      if (recs.size() > 1) {
        var_max /= static_cast<double>(recs.size() - 1);
        var_min /= static_cast<double>(recs.size() - 1);
      }
      std::vector<double> maxs, mins;
      for (const auto& r : recs) {
        maxs.push_back(r.scaled_max);
        mins.push_back(r.scaled_min);
      }
      json summary;
      summary["scaled_max"] = {{"mean", mean_max}, {"variance", var_max}};
      summary["scaled_min"] = {{"mean", mean_min}, {"variance", var_min}};
      summary["ks_min_vs_max"] = regspec::ks_to_json(regspec::ks_two_sample(mins, maxs));
      emit_json(*summary_path, summary, config);
    }
  });
}

void add_tw_compare(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "tw-compare", "two-sample KS between signed-ensemble and GOE scaled edges");
  auto opts = std::make_shared<CommonOpts>();
  auto n_vertices = std::make_shared<int>(500);
  auto d = std::make_shared<int>(3);
  auto ensemble = std::make_shared<std::string>("rademacher");
  auto samples = std::make_shared<std::int64_t>(300);
  auto goe_samples = std::make_shared<std::int64_t>(300);
  auto n_prime_opt = std::make_shared<int>(0);
  auto beta = std::make_shared<int>(1);
  auto sampler = std::make_shared<std::string>("tridiagonal");
  auto alpha = std::make_shared<double>(0.01);
  cmd->add_option("--N", *n_vertices, "number of vertices");
  cmd->add_option("--d", *d, "degree");
  cmd->add_option("--ensemble", *ensemble, "weight ensemble");
  cmd->add_option("--samples", *samples, "signed-ensemble draws");
  cmd->add_option("--goe-samples", *goe_samples, "GOE draws");
  cmd->add_option("--N-prime", *n_prime_opt, "GOE dimension (0 = matched floor(d(d-1)/(d-2)^2 N))");
  cmd->add_option("--beta", *beta, "1 = GOE, 2 = GUE");
  cmd->add_option("--goe-sampler", *sampler, "tridiagonal | dense");
  cmd->add_option("--alpha", *alpha, "KS significance level");
  opts->attach(cmd);
  cmd->callback([=] {
    apply_config_file(cmd, opts->config_path);
    const int np = *n_prime_opt > 0
                       ? *n_prime_opt
                       : static_cast<int>(regspec::n_prime(*n_vertices, *d));
    json config = opts->base_config(cmd);
    config["N"] = *n_vertices;
    config["d"] = *d;
    config["ensemble"] = *ensemble;
    config["samples"] = *samples;
    config["goe-samples"] = *goe_samples;
    config["N-prime"] = np;
    config["beta"] = *beta;
    config["goe-sampler"] = *sampler;
    config["alpha"] = *alpha;
    config["seed"] = opts->seed;

    regspec::GoeSampler gs;
    if (*sampler == "tridiagonal")
      gs = regspec::GoeSampler::tridiagonal;
    else if (*sampler == "dense")
      gs = regspec::GoeSampler::dense;
    else
      throw regspec::validation_error("unknown GOE sampler '" + *sampler + "'");

    const auto recs = regspec::ensemble_scaled_statistics(
        *n_vertices, *d, regspec::WeightEnsemble::parse(*ensemble), *samples, opts->seed,
        opts->threads);
    std::vector<double> maxs, mins;
    for (const auto& r : recs) {
      maxs.push_back(r.scaled_max);
      mins.push_back(r.scaled_min);
    }
    const auto goe = regspec::goe_scaled_statistics(
        np, *goe_samples, regspec::derive_seed(opts->seed, 0x60e), *beta, gs, opts->threads);

    json out;
    out["ks_max_vs_goe"] = regspec::ks_to_json(regspec::ks_two_sample(maxs, goe, *alpha));
    out["ks_min_vs_max"] = regspec::ks_to_json(regspec::ks_two_sample(mins, maxs, *alpha));
    double mean_signed = 0, mean_goe = 0;
    for (double v : maxs) mean_signed += v;
    for (double v : goe) mean_goe += v;
    out["scaled_max_mean"] = mean_signed / static_cast<double>(maxs.size());
    out["goe_mean"] = mean_goe / static_cast<double>(goe.size());
    emit_json(opts->output, out, config);
  });
}

int run_app(int argc, char** argv) {
  CLI::App app{"spectral statistics of randomly signed random regular graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(REGSPEC_VERSION));

  add_sample_graph(app);
  add_verify_lemma1(app);
  add_enum_diagrams(app);
  add_weighted_counts(app);
  add_mckay_check(app);
  add_moments(app);
  add_goe_compare(app);
  add_spectrum_ensemble(app);
  add_tw_compare(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const regspec::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const regspec::resource_cap_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
