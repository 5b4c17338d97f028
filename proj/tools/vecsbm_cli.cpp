// Copyright 2026 The vecsbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: graph synthesis, the individual pipeline stages,
// scenario runs and reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vecsbm/corpus.hpp"
#include "vecsbm/embedding.hpp"
#include "vecsbm/harness.hpp"
#include "vecsbm/kmeans.hpp"
#include "vecsbm/metrics.hpp"
#include "vecsbm/parallel.hpp"
#include "vecsbm/pipeline.hpp"
#include "vecsbm/sbm.hpp"
#include "vecsbm/spectral.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace vecsbm;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = default_threads();
  double scale = 1.0;
  fs::path out_dir = ".";
  std::string format = "csv";
};

// Prints a flat key/value result as one CSV row (with header) or JSON.
void emit(const Globals& g, const json& obj) {
  if (g.format == "json") {
    std::cout << obj.dump(2) << '\n';
    return;
  }
  std::string header, row;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    header += (header.empty() ? "" : ",") + it.key();
    row += (row.empty() ? "" : ",") +
           (it->is_string() ? it->get<std::string>() : it->dump());
  }
  std::cout << header << '\n' << row << '\n';
}

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return g.out_dir / name;
}

struct ModelOptions {
  std::string kind = "planted";
  NodeId n = 10000;
  int K = 2;
  double c = 5.0;
  double lambda = 0.9;
  std::string scaling = "constant";
  std::optional<double> gamma, beta;
  double power = -2.5;
  double theta_min = 10.0;
  std::string normalization = "mean_one";

  void add(CLI::App* app) {
    app->add_option("--model", kind, "planted or dcsbm")
        ->check(CLI::IsMember({"planted", "dcsbm"}));
    app->add_option("-n,--nodes", n, "Number of nodes");
    app->add_option("-K,--communities", K, "Number of communities");
    app->add_option("-c,--sparsity", c, "c (constant) or c' (logarithmic)");
    app->add_option("--lambda", lambda, "Separation in (0, 1]");
    app->add_option("--scaling", scaling)
        ->check(CLI::IsMember({"constant", "log", "logarithmic"}));
    app->add_option("--gamma", gamma, "Weight of community 1 (K = 2)");
    app->add_option("--beta", beta, "Relative density of community 2 (K = 2)");
    app->add_option("--power", power, "DC-SBM power-law exponent");
    app->add_option("--theta-min", theta_min, "DC-SBM minimum theta");
    app->add_option("--normalization", normalization)
        ->check(CLI::IsMember({"mean_one", "sum_to_one"}));
  }

  DcSbmSpec spec() const {
    DcSbmSpec s;
    s.base.n = n;
    s.base.K = K;
    s.base.sparsity = c;
    s.base.lambda = lambda;
    s.base.scaling = parse_scaling(scaling);
    s.base.gamma = gamma;
    s.base.beta = beta;
    s.power = power;
    s.theta_min = theta_min;
    s.normalization = parse_normalization(normalization);
    return s;
  }
};

struct VecOptions {
  int r = 10, l = 60, w = 8, d = 50, m = 5, epochs = TrainConfig{}.epochs;
  double step = 0.025, final_step = 1e-4, exponent = 1.0;
  std::string mode = "dual";

  void add(CLI::App* app, bool walks_only = false) {
    app->add_option("-r,--walks-per-node", r);
    app->add_option("-l,--walk-length", l, "Nodes per walk");
    if (walks_only) return;
    app->add_option("-w,--window", w);
    app->add_option("-d,--dimension", d);
    app->add_option("-m,--negatives", m);
    app->add_option("--epochs", epochs);
    app->add_option("--step", step, "Initial SGD step");
    app->add_option("--final-step", final_step);
    app->add_option("--unigram-exponent", exponent);
    app->add_option("--mode", mode)->check(CLI::IsMember({"dual", "tied"}));
  }

  VecConfig config() const {
    VecConfig c;
    c.walks_per_node = r;
    c.walk_length = l;
    c.window = w;
    c.train.dimension = d;
    c.train.negatives = m;
    c.train.epochs = epochs;
    c.train.initial_step = step;
    c.train.final_step = final_step;
    c.train.unigram_exponent = exponent;
    c.train.mode = parse_vector_mode(mode);
    return c;
  }
};

EmbeddingMatrix<double> read_embedding(const fs::path& path) {
  if (fs::exists(path.string() + ".json")) return read_embedding_binary(path);
  return read_embedding_text(path);
}

void write_run_outputs(const Globals& g, const ExperimentSpec& spec,
                       const std::vector<RunRecord>& records) {
  write_file_atomic(out_path(g, "spec.json"), to_json(spec).dump(2) + "\n");
  write_records_csv(out_path(g, "records.csv"), records);
  write_timings_csv(out_path(g, "timings.csv"), records);
  const SweepSummary summary = sweep_report(spec, records);
  write_summary_csv(out_path(g, "summary.csv"), summary);
  write_file_atomic(out_path(g, "summary.json"), to_json(summary).dump(2) + "\n");
  if (spec.algorithms.size() > 1) {
    const auto tau = default_tau_grid();
    for (const char* metric : {"nmi", "ccr"}) {
      const auto table = result_table(records, metric);
      if (table.values.cols() == 0) continue;
      write_profile_csv(out_path(g, std::string("profile_") + metric + ".csv"),
                        performance_profile(table, tau));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection with random-walk node embeddings"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads,
                 "Worker threads (default: VECSBM_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--scale", g.scale, "Shrink or grow scenario sizes")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--format", g.format, "Console output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Sample an SBM or DC-SBM graph");
  ModelOptions gen_model;
  gen_model.add(gen);
  gen->callback([&] {
    const DcSbmSpec spec = gen_model.spec();
    const bool dc = gen_model.kind == "dcsbm";
    const SampledGraph s = dc ? sample_dcsbm(spec, g.seed)
                              : sample_sbm(expand(spec.base), g.seed);
    write_edge_list(out_path(g, "graph.edges"), s.graph);
    write_labels(out_path(g, "labels.txt"), s.labels);
    const auto& b = spec.base;
    json meta{{"model", gen_model.kind},
              {"n", b.n},
              {"K", b.K},
              {"sparsity", b.sparsity},
              {"lambda", b.lambda},
              {"scaling", to_string(b.scaling)},
              {"seed", g.seed},
              {"edges", s.graph.num_edges()},
              {"isolated", s.graph.num_isolated()},
              {"weak_threshold", weak_threshold(b.K, b.lambda)},
              {"exact_threshold", exact_threshold(b.K, b.lambda)},
              {"max_weak_k", max_weak_k(b.sparsity, b.lambda)}};
    if (b.gamma) meta["gamma"] = *b.gamma;
    if (b.beta) meta["beta"] = *b.beta;
    if (dc) {
      meta["power"] = spec.power;
      meta["theta_min"] = spec.theta_min;
      meta["normalization"] = to_string(spec.normalization);
    }
    write_file_atomic(out_path(g, "graph.json"), meta.dump(2) + "\n");
    emit(g, {{"nodes", s.graph.num_nodes()},
             {"edges", s.graph.num_edges()},
             {"isolated", s.graph.num_isolated()}});
  });

  // walk
  auto* walk = app.add_subcommand("walk", "Generate random-walk corpus");
  fs::path walk_graph;
  VecOptions walk_opts;
  int pair_window = 0;
  walk->add_option("graph", walk_graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  walk_opts.add(walk, true);
  walk->add_option("--pairs", pair_window,
                   "Also write positive/negative pair counts for this window");
  int walk_negatives = 5;
  walk->add_option("-m,--negatives", walk_negatives, "Negatives per positive for --pairs");
  walk->callback([&] {
    const LoadedGraph lg = load_edge_list(walk_graph);
    const WalkCorpus corpus = generate_walks(lg.graph, walk_opts.r, walk_opts.l,
                                             g.seed, g.threads);
    write_walks(out_path(g, "walks.txt"), corpus);
    write_id_map(out_path(g, "id_map.tsv"), lg.ids);
    json out{{"walks", corpus.num_walks()}, {"tokens", corpus.total_tokens()}};
    if (pair_window > 0) {
      PairCounts pc = positive_pairs(corpus, pair_window, g.threads);
      sample_negatives(pc, walk_negatives, derive_seed(g.seed, 1));
      write_pair_counts(out_path(g, "pairs_positive.txt"), pc.positive);
      write_pair_counts(out_path(g, "pairs_negative.txt"), pc.negative);
      out["positive_pairs"] = pc.positive.size();
      out["negative_pairs"] = pc.negative.size();
    }
    emit(g, out);
  });

  // embed
  auto* embed = app.add_subcommand("embed", "Learn node embeddings");
  fs::path embed_graph, embed_walks;
  VecOptions embed_opts;
  bool embed_binary = false;
  std::string embed_method = "sgd";
  embed->add_option("--graph", embed_graph, "Edge-list file (walks generated)")
      ->check(CLI::ExistingFile);
  embed->add_option("--walks", embed_walks, "Existing walk corpus")
      ->check(CLI::ExistingFile);
  embed_opts.add(embed);
  embed->add_option("--method", embed_method, "sgd or pmi (matrix factorization)")
      ->check(CLI::IsMember({"sgd", "pmi"}));
  embed->add_flag("--binary", embed_binary, "Raw binary output with JSON sidecar");
  embed->callback([&] {
    if (embed_graph.empty() == embed_walks.empty())
      throw CLI::ValidationError("embed", "give exactly one of --graph, --walks");
    WalkCorpus corpus;
    if (!embed_walks.empty()) {
      corpus = read_walks(embed_walks);
    } else {
      const LoadedGraph lg = load_edge_list(embed_graph);
      corpus = generate_walks(lg.graph, embed_opts.r, embed_opts.l,
                              derive_seed(g.seed, 1), g.threads);
      write_id_map(out_path(g, "id_map.tsv"), lg.ids);
    }
    VecConfig cfg = embed_opts.config();
    cfg.train.seed = derive_seed(g.seed, 2);
    cfg.train.threads = g.threads;
    const fs::path path = out_path(g, embed_binary ? "embedding.bin" : "embedding.txt");
    if (embed_method == "pmi") {
      PairCounts pc = positive_pairs(corpus, cfg.window, g.threads);
      sample_negatives(pc, cfg.train.negatives, cfg.train.seed,
                       cfg.train.unigram_exponent);
      const auto emb = pmi_factorize(pc, cfg.train.dimension);
      embed_binary ? write_embedding_binary(path, emb)
                   : write_embedding_text(path, emb);
    } else {
      const auto model = sgd_train<float>(corpus, cfg.window, cfg.train);
      embed_binary ? write_embedding_binary(path, model.embedding())
                   : write_embedding_text(path, model.embedding());
    }
    emit(g, {{"nodes", corpus.num_nodes()},
             {"dimension", cfg.train.dimension},
             {"output", path.string()}});
  });

  // cluster
  auto* cluster = app.add_subcommand("cluster", "K-means on embeddings, or spectral clustering");
  fs::path cluster_input;
  int cluster_k = 2;
  int cluster_restarts = 10;
  std::string cluster_method = "kmeans";
  cluster->add_option("input", cluster_input,
                      "Embedding file (kmeans) or edge list (spectral)")
      ->required()->check(CLI::ExistingFile);
  cluster->add_option("-K,--communities", cluster_k)->check(CLI::PositiveNumber);
  cluster->add_option("--restarts", cluster_restarts)->check(CLI::PositiveNumber);
  cluster->add_option("--method", cluster_method)
      ->check(CLI::IsMember({"kmeans", "spectral"}));
  cluster->callback([&] {
    LabelVector labels;
    if (cluster_method == "spectral") {
      const LoadedGraph lg = load_edge_list(cluster_input);
      SpectralConfig sc;
      sc.k = cluster_k;
      sc.seed = g.seed;
      sc.kmeans_restarts = cluster_restarts;
      labels = spectral_cluster(lg.graph, sc).labels;
    } else {
      KMeansConfig kc;
      kc.k = cluster_k;
      kc.restarts = cluster_restarts;
      kc.seed = g.seed;
      kc.threads = g.threads;
      labels = kmeans(read_embedding(cluster_input), kc).labels;
    }
    write_labels(out_path(g, "pred.txt"), labels);
    emit(g, {{"nodes", labels.size()}, {"communities", labels.num_communities()}});
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Score predicted labels against ground truth");
  fs::path eval_truth, eval_pred;
  eval->add_option("truth", eval_truth)->required()->check(CLI::ExistingFile);
  eval->add_option("pred", eval_pred)->required()->check(CLI::ExistingFile);
  eval->callback([&] {
    const LabelVector truth = load_labels(eval_truth);
    const LabelVector pred = load_labels(eval_pred);
    emit(g, {{"nmi", nmi(truth, pred)}, {"ccr", ccr(truth, pred)}});
  });

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a catalog scenario or a JSON experiment spec");
  std::string run_id;
  fs::path run_config, run_edges, run_labels;
  std::optional<int> run_replicates;
  bool run_list = false;
  run_cmd->add_option("scenario", run_id, "Scenario id");
  run_cmd->add_option("--config", run_config, "JSON experiment spec")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--edges", run_edges, "Edge list for dataset scenarios");
  run_cmd->add_option("--labels", run_labels, "Labels for dataset scenarios");
  run_cmd->add_option("--replicates", run_replicates)->check(CLI::PositiveNumber);
  run_cmd->add_flag("--list", run_list, "List scenario ids");
  run_cmd->callback([&] {
    if (run_list) {
      for (const auto& id : scenario_ids())
        std::cout << id << '\t' << scenario(id).description << '\n';
      return;
    }
    if (run_id.empty() == run_config.empty())
      throw CLI::ValidationError("run", "give a scenario id or --config");
    ExperimentSpec spec = run_config.empty() ? scenario(run_id) : load_spec(run_config);
    if (!run_edges.empty()) spec.dataset.edges = run_edges;
    if (!run_labels.empty()) spec.dataset.labels = run_labels;
    if (app.get_option("--seed")->count() > 0 || run_config.empty()) spec.seed = g.seed;
    spec = scaled(spec, g.scale);
    if (run_replicates) spec.replicates = *run_replicates;
    RunOptions opts;
    opts.threads = g.threads;
    opts.on_record = [](const RunRecord& r) {
      std::cerr << "[point " << r.point << " rep " << r.replicate << "]";
      if (!r.error.empty()) std::cerr << " error: " << r.error;
      for (const auto& x : r.runs) {
        std::cerr << ' ' << x.algorithm;
        if (x.ok()) std::fprintf(stderr, " nmi=%.4f ccr=%.4f (%.1fs)", x.nmi, x.ccr, x.seconds);
        else std::cerr << " error: " << x.error;
      }
      std::cerr << '\n';
    };
    const auto records = run(spec, opts);
    write_run_outputs(g, spec, records);
    const SweepSummary summary = sweep_report(spec, records);
    if (g.format == "json") {
      std::cout << to_json(summary).dump(2) << '\n';
    } else {
      std::cout << "point,sweep_value,algorithm,count,nmi_mean,nmi_std,ccr_mean,ccr_std\n";
      for (const auto& r : summary.rows)
        std::printf("%zu,%g,%s,%d,%.4f,%.4f,%.4f,%.4f\n", r.point, r.sweep_value,
                    r.algorithm.c_str(), r.count, r.nmi_mean, r.nmi_std,
                    r.ccr_mean, r.ccr_std);
    }
  });

  // profile
  auto* profile = app.add_subcommand("profile", "Performance profiles from run records");
  std::vector<fs::path> profile_records;
  std::string profile_metric = "nmi";
  profile->add_option("records", profile_records, "records.csv files")
      ->required()->check(CLI::ExistingFile);
  profile->add_option("--metric", profile_metric)->check(CLI::IsMember({"nmi", "ccr"}));
  profile->callback([&] {
    std::vector<RunRecord> all;
    for (const auto& p : profile_records) {
      auto r = read_records_csv(p);
      all.insert(all.end(), r.begin(), r.end());
    }
    const auto table = result_table(all, profile_metric);
    if (table.values.cols() == 0)
      throw std::runtime_error("no experiment has results for every algorithm");
    const auto pp = performance_profile(table, default_tau_grid());
    const fs::path path = out_path(g, "profile_" + profile_metric + ".csv");
    write_profile_csv(path, pp);
    json out{{"experiments", table.values.cols()}, {"output", path.string()}};
    for (std::size_t a = 0; a < pp.algorithms.size(); ++a)
      out["pp0_" + pp.algorithms[a]] = pp.curves(static_cast<Eigen::Index>(a), 0);
    emit(g, out);
  });

  // fit
  auto* fit = app.add_subcommand("fit", "Planted-partition fit of a labelled graph");
  fs::path fit_graph, fit_labels;
  bool fit_lcc = false;
  fit->add_option("graph", fit_graph)->required()->check(CLI::ExistingFile);
  fit->add_option("labels", fit_labels)->required()->check(CLI::ExistingFile);
  fit->add_flag("--largest-component", fit_lcc, "Restrict to the largest component");
  fit->callback([&] {
    DatasetSpec ds;
    ds.edges = fit_graph;
    ds.labels = fit_labels;
    ds.largest_component = fit_lcc;
    const LoadedDataset data = load_dataset(ds);
    const auto f = fit_planted_partition(data.graph, data.labels);
    emit(g, {{"nodes", data.graph.num_nodes()},
             {"edges", data.graph.num_edges()},
             {"isolated", data.graph.num_isolated()},
             {"K", data.labels.num_communities()},
             {"lambda", f.lambda},
             {"c_prime", f.sparsity},
             {"max_p", f.max_weight}});
  });

  // degrees
  auto* degrees = app.add_subcommand("degrees", "Degree histograms: real graph vs fitted SBM");
  fs::path deg_graph, deg_labels;
  int deg_replicates = 200;
  bool deg_lcc = true;
  degrees->add_option("graph", deg_graph)->required()->check(CLI::ExistingFile);
  degrees->add_option("labels", deg_labels)->required()->check(CLI::ExistingFile);
  degrees->add_option("--replicates", deg_replicates)->check(CLI::PositiveNumber);
  degrees->add_flag("!--all-components", deg_lcc, "Keep every component");
  degrees->callback([&] {
    DatasetSpec ds;
    ds.edges = deg_graph;
    ds.labels = deg_labels;
    ds.largest_component = deg_lcc;
    const LoadedDataset data = load_dataset(ds);
    const auto report = degree_report(data.graph, data.labels, deg_replicates, g.seed);
    const fs::path path = out_path(g, "degrees.csv");
    write_degree_report_csv(path, report);
    emit(g, {{"nodes", data.graph.num_nodes()},
             {"max_real_degree", report.real.rbegin()->first},
             {"max_synthetic_degree", report.synthetic.empty() ? 0 : report.synthetic.rbegin()->first},
             {"output", path.string()}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
