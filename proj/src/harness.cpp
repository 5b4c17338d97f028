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


#include "vecsbm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vecsbm/random.hpp"

namespace vecsbm {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kPlanted: return "planted";
    case ModelKind::kDcSbm: return "dcsbm";
    case ModelKind::kDataset: return "dataset";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "planted" || s == "sbm") return ModelKind::kPlanted;
  if (s == "dcsbm") return ModelKind::kDcSbm;
  if (s == "dataset") return ModelKind::kDataset;
  throw std::invalid_argument("unknown model kind '" + s + "'");
}

namespace {

const std::set<std::string> kModelKeys{"n", "K", "c", "lambda",
                                       "gamma", "beta", "log"};
const std::set<std::string> kAlgorithmKeys{"r", "l", "w", "d", "m", "epochs"};

int as_int(const std::string& key, double v) {
  if (v != std::floor(v) || v < 0 || v > 2e9)
    throw std::invalid_argument("sweep value for '" + key +
                                "' must be a nonnegative integer");
  return static_cast<int>(v);
}

void apply(ExperimentSpec& s, const std::string& key, double v) {
  auto& pp = s.planted();
  if (key == "n") pp.n = static_cast<NodeId>(as_int(key, v));
  else if (key == "K") pp.K = as_int(key, v);
  else if (key == "c") pp.sparsity = v;
  else if (key == "lambda") pp.lambda = v;
  else if (key == "gamma") pp.gamma = v;
  else if (key == "beta") pp.beta = v;
  else if (key == "log")
    pp.scaling = v != 0.0 ? Scaling::kLogarithmic : Scaling::kConstant;
  else if (key == "r") s.vec.walks_per_node = as_int(key, v);
  else if (key == "l") s.vec.walk_length = as_int(key, v);
  else if (key == "w") s.vec.window = as_int(key, v);
  else if (key == "d") s.vec.train.dimension = as_int(key, v);
  else if (key == "m") s.vec.train.negatives = as_int(key, v);
  else if (key == "epochs") s.vec.train.epochs = as_int(key, v);
  else throw std::invalid_argument("unknown sweep key '" + key + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Keeps CSV cells single-field.
std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

LabelVector densify(const std::vector<int>& raw) {
  std::vector<int> values(raw.begin(), raw.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<int> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = static_cast<int>(
                 std::lower_bound(values.begin(), values.end(), raw[i]) -
                 values.begin()) +
             1;
  return LabelVector(std::move(out), static_cast<int>(values.size()));
}

double sweep_value_of(const ExperimentSpec& spec, std::size_t index) {
  if (index < spec.points.size() && !spec.sweep_variable.empty()) {
    auto it = spec.points[index].find(spec.sweep_variable);
    if (it != spec.points[index].end()) return it->second;
  }
  return static_cast<double>(index);
}

std::uint64_t scenario_base_seed(const ExperimentSpec& spec) {
  return derive_seed(spec.seed, stable_hash(spec.scenario));
}

// Graphs depend only on the model overrides of a point, so points that vary
// algorithm parameters share their graphs.
std::uint64_t graph_seed(const ExperimentSpec& spec, std::size_t point,
                         int replicate) {
  SweepPoint model;
  if (point < spec.points.size())
    for (const auto& [k, v] : spec.points[point])
      if (kModelKeys.count(k)) model[k] = v;
  const std::uint64_t key = stable_hash("graph|" + point_label(model));
  return derive_seed(derive_seed(scenario_base_seed(spec), key),
                     spec.fixed_graph ? 0 : static_cast<std::uint64_t>(replicate));
}

std::uint64_t algorithm_seed(const ExperimentSpec& spec, std::size_t point,
                             int replicate, const std::string& algorithm) {
  std::uint64_t s = derive_seed(scenario_base_seed(spec),
                                stable_hash("algo|" + std::to_string(point)));
  s = derive_seed(s, static_cast<std::uint64_t>(replicate));
  return derive_seed(s, stable_hash(algorithm));
}

}  // namespace

std::string point_label(const SweepPoint& point) {
  std::string out;
  for (const auto& [k, v] : point) {
    if (!out.empty()) out += ';';
    out += k + '=' + format_double(v);
  }
  return out;
}

void ExperimentSpec::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  for (const auto& a : algorithms)
    if (a != "vec" && a != "sc")
      throw std::invalid_argument("unknown algorithm '" + a + "'");
  if (model == ModelKind::kDataset) {
    if (dataset.edges.empty() || dataset.labels.empty())
      throw std::invalid_argument(
          "dataset model needs both an edge-list and a label path");
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(points.size(), 1); ++i) {
    const ExperimentSpec s = resolve_point(*this, i);
    if (s.model == ModelKind::kDcSbm) s.dcsbm.validate();
    else if (s.model == ModelKind::kPlanted) s.planted().validate();
    if (s.model != ModelKind::kDataset) expand(s.planted()).validate();
    if (s.vec.walks_per_node < 1 || s.vec.walk_length < 1 || s.vec.window < 1)
      throw std::invalid_argument("r, l and w must be >= 1");
    s.vec.train.validate();
  }
}

ExperimentSpec resolve_point(const ExperimentSpec& spec, std::size_t index) {
  ExperimentSpec s = spec;
  if (index < spec.points.size())
    for (const auto& [k, v] : spec.points[index]) apply(s, k, v);
  else if (index > 0)
    throw std::out_of_range("sweep point index out of range");
  return s;
}

// --- JSON ------------------------------------------------------------------

nlohmann::json to_json(const ExperimentSpec& s) {
  using nlohmann::json;
  const auto& pp = s.planted();
  json model{{"kind", to_string(s.model)},
             {"n", pp.n},
             {"K", pp.K},
             {"sparsity", pp.sparsity},
             {"lambda", pp.lambda},
             {"scaling", to_string(pp.scaling)}};
  if (pp.gamma) model["gamma"] = *pp.gamma;
  if (pp.beta) model["beta"] = *pp.beta;
  if (s.model == ModelKind::kDcSbm) {
    model["power"] = s.dcsbm.power;
    model["theta_min"] = s.dcsbm.theta_min;
    model["normalization"] = to_string(s.dcsbm.normalization);
  }
  if (s.model == ModelKind::kDataset) {
    model["edges"] = s.dataset.edges.string();
    model["labels"] = s.dataset.labels.string();
    model["symmetrize"] = s.dataset.symmetrize;
    model["largest_component"] = s.dataset.largest_component;
  }
  const auto& t = s.vec.train;
  json vec{{"walks_per_node", s.vec.walks_per_node},
           {"walk_length", s.vec.walk_length},
           {"window", s.vec.window},
           {"dimension", t.dimension},
           {"negatives", t.negatives},
           {"epochs", t.epochs},
           {"initial_step", t.initial_step},
           {"final_step", t.final_step},
           {"init_scale", t.init_scale},
           {"unigram_exponent", t.unigram_exponent},
           {"mode", to_string(t.mode)},
           {"kmeans_restarts", s.vec.kmeans_restarts}};
  json sc{{"tolerance", s.sc.tolerance},
          {"kmeans_restarts", s.sc.kmeans_restarts}};
  json points = json::array();
  for (const auto& p : s.points) points.push_back(p);
  return json{{"scenario", s.scenario},
              {"description", s.description},
              {"model", model},
              {"algorithms", s.algorithms},
              {"vec", vec},
              {"sc", sc},
              {"replicates", s.replicates},
              {"fixed_graph", s.fixed_graph},
              {"seed", s.seed},
              {"sweep", {{"variable", s.sweep_variable}, {"points", points}}}};
}

namespace {

ExperimentSpec spec_from_json_unchecked(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
  for (const char* key : {"model", "vec", "sc", "sweep"})
    if (j.contains(key) && !j.at(key).is_object())
      throw std::invalid_argument(std::string("'") + key + "' must be a JSON object");
  ExperimentSpec s;
  // Start from a catalog entry when one is named and known.
  if (j.contains("scenario")) {
    const auto id = j.at("scenario").get<std::string>();
    const auto ids = scenario_ids();
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) s = scenario(id);
    s.scenario = id;
  }
  auto get = [](const nlohmann::json& obj, const char* key, auto& out) {
    if (obj.contains(key)) obj.at(key).get_to(out);
  };
  get(j, "description", s.description);
  if (j.contains("model")) {
    const auto& m = j.at("model");
    if (m.contains("kind")) s.model = parse_model_kind(m.at("kind"));
    auto& pp = s.planted();
    get(m, "n", pp.n);
    get(m, "K", pp.K);
    get(m, "sparsity", pp.sparsity);
    get(m, "lambda", pp.lambda);
    if (m.contains("scaling")) pp.scaling = parse_scaling(m.at("scaling"));
    if (m.contains("gamma")) pp.gamma = m.at("gamma").get<double>();
    if (m.contains("beta")) pp.beta = m.at("beta").get<double>();
    get(m, "power", s.dcsbm.power);
    get(m, "theta_min", s.dcsbm.theta_min);
    if (m.contains("normalization"))
      s.dcsbm.normalization = parse_normalization(m.at("normalization"));
    if (m.contains("edges"))
      s.dataset.edges = m.at("edges").get<std::string>();
    if (m.contains("labels"))
      s.dataset.labels = m.at("labels").get<std::string>();
    get(m, "symmetrize", s.dataset.symmetrize);
    get(m, "largest_component", s.dataset.largest_component);
  }
  get(j, "algorithms", s.algorithms);
  if (j.contains("vec")) {
    const auto& v = j.at("vec");
    get(v, "walks_per_node", s.vec.walks_per_node);
    get(v, "walk_length", s.vec.walk_length);
    get(v, "window", s.vec.window);
    get(v, "dimension", s.vec.train.dimension);
    get(v, "negatives", s.vec.train.negatives);
    get(v, "epochs", s.vec.train.epochs);
    get(v, "initial_step", s.vec.train.initial_step);
    get(v, "final_step", s.vec.train.final_step);
    get(v, "init_scale", s.vec.train.init_scale);
    get(v, "unigram_exponent", s.vec.train.unigram_exponent);
    if (v.contains("mode")) s.vec.train.mode = parse_vector_mode(v.at("mode"));
    get(v, "kmeans_restarts", s.vec.kmeans_restarts);
  }
  if (j.contains("sc")) {
    get(j.at("sc"), "tolerance", s.sc.tolerance);
    get(j.at("sc"), "kmeans_restarts", s.sc.kmeans_restarts);
  }
  get(j, "replicates", s.replicates);
  get(j, "fixed_graph", s.fixed_graph);
  get(j, "seed", s.seed);
  if (j.contains("sweep")) {
    const auto& sw = j.at("sweep");
    get(sw, "variable", s.sweep_variable);
    if (sw.contains("points")) {
      s.points.clear();
      for (const auto& p : sw.at("points"))
        s.points.push_back(p.get<SweepPoint>());
    }
  }
  s.validate();
  return s;
}

}  // namespace

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  try {
    return spec_from_json_unchecked(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  }
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

std::string spec_hash(const ExperimentSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    stable_hash(to_json(spec).dump())));
  return buf;
}

// --- Scenario catalog ---------------------------------------------------------

namespace {

std::vector<SweepPoint> sweep(const std::string& key,
                              std::initializer_list<double> values) {
  std::vector<SweepPoint> out;
  for (double v : values) out.push_back({{key, v}});
  return out;
}

ExperimentSpec planted(const std::string& id, const std::string& description,
                       Scaling scaling, int K, NodeId n, double sparsity) {
  ExperimentSpec s;
  s.scenario = id;
  s.description = description;
  s.model = ModelKind::kPlanted;
  auto& pp = s.planted();
  pp.scaling = scaling;
  pp.K = K;
  pp.n = n;
  pp.sparsity = sparsity;
  pp.lambda = 0.9;
  return s;
}

ExperimentSpec dcsbm_row(const std::string& id, Scaling scaling, int K,
                         double sparsity) {
  ExperimentSpec s = planted(id, "degree-corrected SBM, n=1000", scaling, K,
                             1000, sparsity);
  s.model = ModelKind::kDcSbm;
  s.replicates = 20;
  return s;
}

ExperimentSpec dataset(const std::string& id, const std::string& description) {
  ExperimentSpec s;
  s.scenario = id;
  s.description = description;
  s.model = ModelKind::kDataset;
  s.replicates = 3;
  return s;
}

ExperimentSpec catalog(const std::string& id) {
  const auto C = Scaling::kConstant;
  const auto L = Scaling::kLogarithmic;
  if (id == "weak-c") {
    auto s = planted(id, "weak-recovery transition in c", C, 2, 10000, 5);
    s.sweep_variable = "c";
    s.points = sweep("c", {1, 1.5, 2, 2.5, 3, 3.5, 4, 5, 6, 8, 10, 12});
    return s;
  }
  if (id == "weak-n") {
    auto s = planted(id, "weak recovery as n grows, c=5", C, 2, 10000, 5);
    s.sweep_variable = "n";
    s.points = sweep("n", {1000, 2000, 5000, 10000, 20000, 50000, 100000});
    return s;
  }
  if (id == "cross-k5") {
    auto s = planted(id, "K=5 below the sufficient weak bound", C, 5, 1000, 10);
    s.sweep_variable = "c";
    s.points = sweep("c", {2, 4, 6, 8, 10, 12, 15, 20, 25});
    return s;
  }
  if (id == "vary-k") {
    auto s = planted(id, "number of communities, c=10", C, 2, 10000, 10);
    s.sweep_variable = "K";
    s.points = sweep("K", {2, 3, 4, 5, 6, 7, 8, 9, 10});
    return s;
  }
  if (id == "gamma") {
    auto s = planted(id, "unbalanced community weights, c=8", C, 2, 10000, 8);
    s.sweep_variable = "gamma";
    s.points = sweep("gamma", {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9});
    return s;
  }
  if (id == "beta") {
    auto s = planted(id, "unequal within-community density, c=8", C, 2, 10000, 8);
    s.sweep_variable = "beta";
    s.points = sweep("beta", {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
    return s;
  }
  if (id == "exact-c") {
    auto s = planted(id, "exact-recovery transition in c'", L, 2, 10000, 2);
    s.sweep_variable = "c";
    s.points = sweep("c", {0.3, 0.6, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5, 6});
    return s;
  }
  for (const char* cp : {"0.6", "2.5", "4.5"}) {
    if (id == std::string("exact-n-") + cp) {
      auto s = planted(id, std::string("exact recovery as n grows, c'=") + cp,
                       L, 2, 10000, std::stod(cp));
      s.sweep_variable = "n";
      s.points = sweep("n", {1000, 2000, 5000, 10000, 20000, 50000});
      return s;
    }
  }
  if (id.rfind("params-", 0) == 0) {
    auto s = planted(id, "VEC parameter sensitivity, K=5, c'=2", L, 5, 10000, 2);
    s.algorithms = {"vec"};
    const std::string key = id.substr(7);
    s.sweep_variable = key;
    if (key == "r") s.points = sweep("r", {1, 2, 5, 10, 20});
    else if (key == "l") s.points = sweep("l", {10, 30, 60, 90, 120});
    else if (key == "w") s.points = sweep("w", {1, 2, 3, 5, 8, 12});
    else if (key == "d") s.points = sweep("d", {2, 5, 10, 25, 50, 100});
    else throw std::invalid_argument("unknown scenario '" + id + "'");
    return s;
  }
  if (id == "table2-sim1" || id == "table2-sim2") {
    auto s = id == "table2-sim1"
                 ? planted(id, "randomness of paths, constant scaling", C, 5,
                           10000, 15)
                 : planted(id, "randomness of paths, log scaling", L, 2, 10000,
                           2);
    s.algorithms = {"vec"};
    s.fixed_graph = true;
    s.replicates = 10;
    return s;
  }
  if (id == "pp") {
    auto s = planted(id, "performance-profile study, constant scaling", C, 2,
                     1000, 5);
    s.sweep_variable = "setting";
    for (double c : {2, 5, 10, 15})
      for (double K : {2, 5, 10})
        for (double n : {1e2, 1e3, 1e4, 1e5})
          s.points.push_back({{"c", c}, {"K", K}, {"n", n}});
    return s;
  }
  if (id == "table4-const-k2") return dcsbm_row(id, C, 2, 10);
  if (id == "table4-const-k5") return dcsbm_row(id, C, 5, 10);
  if (id == "table4-log-k2") return dcsbm_row(id, L, 2, 2);
  if (id == "table4-log-k5") return dcsbm_row(id, L, 5, 2);
  if (id == "table4") {
    auto s = dcsbm_row(id, C, 2, 10);
    s.sweep_variable = "setting";
    s.points = {{{"K", 2}, {"c", 10}, {"log", 0}},
                {{"K", 5}, {"c", 10}, {"log", 0}},
                {{"K", 2}, {"c", 2}, {"log", 1}},
                {{"K", 5}, {"c", 2}, {"log", 1}}};
    return s;
  }
  if (id == "blogs")
    return dataset(id, "political blogs, largest connected component");
  if (id == "amazon")
    return dataset(id, "amazon co-purchase, largest connected component");
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

}  // namespace

std::vector<std::string> scenario_ids() {
  return {"weak-c",        "weak-n",          "cross-k5",
          "vary-k",        "gamma",           "beta",
          "exact-c",       "exact-n-0.6",     "exact-n-2.5",
          "exact-n-4.5",   "params-r",        "params-l",
          "params-w",      "params-d",        "table2-sim1",
          "table2-sim2",   "pp",              "table4",
          "table4-const-k2", "table4-const-k5", "table4-log-k2",
          "table4-log-k5", "blogs",           "amazon"};
}

ExperimentSpec scenario(const std::string& id) {
  if (id == "fig1") {
    auto s = catalog("weak-c");
    s.scenario = id;
    return s;
  }
  if (id == "fig4") {
    auto s = catalog("cross-k5");
    s.scenario = id;
    return s;
  }
  return catalog(id);
}

ExperimentSpec scaled(ExperimentSpec spec, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale must be positive");
  if (factor == 1.0 || spec.model == ModelKind::kDataset) return spec;
  auto shrink = [&](double n, double K) {
    return std::max(std::round(n * factor), 4.0 * K);
  };
  auto& pp = spec.planted();
  pp.n = static_cast<NodeId>(shrink(pp.n, pp.K));
  for (auto& p : spec.points) {
    if (auto it = p.find("n"); it != p.end()) {
      const double K = p.count("K") ? p.at("K") : pp.K;
      it->second = shrink(it->second, K);
    }
  }
  spec.replicates =
      std::max(1, static_cast<int>(std::ceil(spec.replicates * factor)));
  return spec;
}

// --- Running ------------------------------------------------------------------

LoadedDataset load_dataset(const DatasetSpec& spec) {
  LoadedGraph lg = load_edge_list(spec.edges, spec.symmetrize);
  // Two columns: "id label" keyed by edge-list token; one: line = dense id.
  bool keyed = false;
  {
    std::ifstream in(spec.labels);
    if (!in) throw std::runtime_error("cannot open " + spec.labels.string());
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string a, b;
      if (!(ls >> a) || a[0] == '#' || a[0] == '%') continue;
      keyed = static_cast<bool>(ls >> b);
      break;
    }
  }
  LabelVector labels = keyed ? load_labels(spec.labels, lg.ids)
                             : load_labels(spec.labels);
  if (labels.size() != lg.graph.num_nodes())
    throw std::runtime_error("label file has " + std::to_string(labels.size()) +
                             " entries for " +
                             std::to_string(lg.graph.num_nodes()) + " nodes");
  LoadedDataset out;
  out.original_nodes = lg.graph.num_nodes();
  out.isolated = lg.graph.num_isolated();
  if (!spec.largest_component) {
    out.graph = std::move(lg.graph);
    out.labels = std::move(labels);
    out.ids = std::move(lg.ids);
    return out;
  }
  std::vector<NodeId> kept;
  out.graph = largest_component(lg.graph, &kept);
  std::vector<int> raw(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    raw[i] = labels[kept[i]];
    out.ids.tokens.push_back(lg.ids.tokens[kept[i]]);
  }
  out.labels = densify(raw);
  return out;
}

namespace {

SampledGraph make_graph(const ExperimentSpec& s, std::uint64_t seed) {
  if (s.model == ModelKind::kDcSbm) return sample_dcsbm(s.dcsbm, seed);
  return sample_sbm(expand(s.planted()), seed);
}

AlgorithmRun run_algorithm(const std::string& algorithm, const ExperimentSpec& s,
                           const Graph& g, const LabelVector& truth, int K,
                           std::uint64_t seed, int threads) {
  AlgorithmRun out;
  out.algorithm = algorithm;
  out.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    LabelVector pred;
    if (algorithm == "vec") {
      VecConfig cfg = s.vec;
      cfg.threads = threads;
      pred = run_vec(g, K, cfg, seed).labels;
    } else {
      SpectralConfig cfg = s.sc;
      cfg.k = K;
      cfg.seed = seed;
      pred = spectral_cluster(g, cfg).labels;
    }
    out.nmi = nmi(truth, pred);
    out.ccr = ccr(truth, pred);
  } catch (const std::exception& e) {
    out.error = e.what();
    out.nmi = out.ccr = std::numeric_limits<double>::quiet_NaN();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0).count();
  return out;
}

}  // namespace

std::vector<RunRecord> run(const ExperimentSpec& spec,
                           const RunOptions& options) {
  spec.validate();
  const std::string hash = spec_hash(spec);
  const std::size_t num_points = std::max<std::size_t>(spec.points.size(), 1);
  const std::size_t jobs = num_points * static_cast<std::size_t>(spec.replicates);

  // Real datasets are loaded once and shared read-only.
  std::optional<LoadedDataset> data;
  std::string data_error;
  if (spec.model == ModelKind::kDataset) {
    try {
      data = load_dataset(spec.dataset);
    } catch (const std::exception& e) {
      data_error = e.what();
    }
  }

  std::vector<RunRecord> records(jobs);
  std::mutex collector;
  std::atomic<std::size_t> next{0};
  const int pool = static_cast<int>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, options.threads)),
                              1, jobs));
  const int inner = pool == 1 ? std::max(1, options.threads) : 1;

  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < jobs;) {
      const std::size_t point = job / static_cast<std::size_t>(spec.replicates);
      const int replicate = static_cast<int>(job % static_cast<std::size_t>(spec.replicates));
      RunRecord rec;
      rec.scenario = spec.scenario;
      rec.spec_hash = hash;
      rec.point = point;
      rec.point_label =
          point < spec.points.size() ? point_label(spec.points[point]) : "";
      rec.sweep_value = sweep_value_of(spec, point);
      rec.replicate = replicate;
      try {
        const ExperimentSpec s = resolve_point(spec, point);
        SampledGraph sampled;
        const Graph* g;
        const LabelVector* truth;
        int K;
        if (data) {
          g = &data->graph;
          truth = &data->labels;
          K = data->labels.num_communities();
        } else if (!data_error.empty()) {
          throw std::runtime_error(data_error);
        } else {
          rec.graph_seed = graph_seed(spec, point, replicate);
          sampled = make_graph(s, rec.graph_seed);
          g = &sampled.graph;
          truth = &sampled.labels;
          K = s.planted().K;
        }
        rec.num_nodes = g->num_nodes();
        rec.num_edges = g->num_edges();
        for (const auto& a : spec.algorithms)
          rec.runs.push_back(run_algorithm(
              a, s, *g, *truth, K, algorithm_seed(spec, point, replicate, a),
              inner));
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      std::lock_guard lock(collector);
      if (options.on_record) options.on_record(rec);
      records[job] = std::move(rec);
    }
  };
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
  }
  return records;
}

// --- Reports --------------------------------------------------------------------

namespace {

struct Moments {
  double mean = 0, std = 0, half = 0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  if (x.empty()) {
    m.mean = m.std = m.half = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0;
    for (double v : x) ss += (v - m.mean) * (v - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(x.size() - 1));
  }
  m.half = m.std / std::sqrt(static_cast<double>(x.size()));
  return m;
}

}  // namespace

SweepSummary sweep_report(const ExperimentSpec& spec,
                          const std::vector<RunRecord>& records) {
  SweepSummary out;
  out.scenario = spec.scenario;
  out.sweep_variable = spec.sweep_variable;
  std::size_t max_point = 0;
  for (const auto& r : records) max_point = std::max(max_point, r.point);
  for (std::size_t p = 0; p <= max_point && !records.empty(); ++p) {
    for (const auto& a : spec.algorithms) {
      SummaryRow row;
      row.point = p;
      row.algorithm = a;
      std::vector<double> n, c;
      double seconds = 0;
      bool any = false;
      for (const auto& r : records) {
        if (r.point != p) continue;
        any = true;
        row.point_label = r.point_label;
        row.sweep_value = r.sweep_value;
        const AlgorithmRun* run = nullptr;
        for (const auto& x : r.runs)
          if (x.algorithm == a) run = &x;
        if (!run || !run->ok()) {
          ++row.failures;
          continue;
        }
        n.push_back(run->nmi);
        c.push_back(run->ccr);
        seconds += run->seconds;
      }
      if (!any) continue;
      row.count = static_cast<int>(n.size());
      const Moments mn = moments(n), mc = moments(c);
      row.nmi_mean = mn.mean, row.nmi_std = mn.std, row.nmi_half_width = mn.half;
      row.ccr_mean = mc.mean, row.ccr_std = mc.std, row.ccr_half_width = mc.half;
      row.seconds_mean = n.empty() ? 0.0 : seconds / static_cast<double>(n.size());
      out.rows.push_back(row);
    }
    if (spec.model == ModelKind::kDataset) continue;
    ExperimentSpec s;
    try {
      s = resolve_point(spec, p);
    } catch (const std::exception&) {
      continue;
    }
    const auto& pp = s.planted();
    out.annotations.push_back(
        {"max_p", p, pp.gamma ? std::max(*pp.gamma, 1 - *pp.gamma) : 1.0 / pp.K});
    // Thresholds are stated for the symmetric planted-partition model.
    if (s.model != ModelKind::kPlanted || pp.gamma || pp.beta) continue;
    if (pp.scaling == Scaling::kConstant) {
      out.annotations.push_back({"c_weak", p, weak_threshold(pp.K, pp.lambda)});
      out.annotations.push_back(
          {"max_weak_k", p, static_cast<double>(max_weak_k(pp.sparsity, pp.lambda))});
    } else {
      out.annotations.push_back({"c_exact", p, exact_threshold(pp.K, pp.lambda)});
    }
  }
  return out;
}

ExperimentResultTable result_table(const std::vector<RunRecord>& records,
                                   const std::string& metric) {
  if (metric != "nmi" && metric != "ccr")
    throw std::invalid_argument("metric must be nmi or ccr");
  ExperimentResultTable t;
  for (const auto& r : records)
    for (const auto& x : r.runs)
      if (std::find(t.algorithms.begin(), t.algorithms.end(), x.algorithm) ==
          t.algorithms.end())
        t.algorithms.push_back(x.algorithm);
  std::vector<std::vector<double>> columns;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    std::vector<double> col(t.algorithms.size(),
                            std::numeric_limits<double>::quiet_NaN());
    for (const auto& x : r.runs) {
      if (!x.ok()) continue;
      const auto i = std::find(t.algorithms.begin(), t.algorithms.end(),
                               x.algorithm) - t.algorithms.begin();
      col[static_cast<std::size_t>(i)] = metric == "nmi" ? x.nmi : x.ccr;
    }
    if (std::none_of(col.begin(), col.end(), [](double v) { return std::isnan(v); }))
      columns.push_back(std::move(col));
  }
  t.values.resize(static_cast<Eigen::Index>(t.algorithms.size()),
                  static_cast<Eigen::Index>(columns.size()));
  for (std::size_t e = 0; e < columns.size(); ++e)
    for (std::size_t a = 0; a < t.algorithms.size(); ++a)
      t.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(e)) =
          columns[e][a];
  return t;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

constexpr const char* kRecordHeader =
    "scenario,spec_hash,point,point_label,sweep_value,replicate,algorithm,"
    "nmi,ccr,graph_seed,algorithm_seed,nodes,edges,status";

}  // namespace

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    const std::string prefix =
        sanitize(r.scenario) + ',' + r.spec_hash + ',' + std::to_string(r.point) +
        ',' + sanitize(r.point_label) + ',' + format_double(r.sweep_value) + ',' +
        std::to_string(r.replicate) + ',';
    const std::string graph = std::to_string(r.graph_seed);
    const std::string size =
        std::to_string(r.num_nodes) + ',' + std::to_string(r.num_edges);
    if (!r.error.empty()) {
      out << prefix << ",nan,nan," << graph << ",," << size << ",error: "
          << sanitize(r.error) << '\n';
      continue;
    }
    for (const auto& x : r.runs)
      out << prefix << x.algorithm << ',' << format_double(x.nmi) << ','
          << format_double(x.ccr) << ',' << graph << ',' << x.seed << ',' << size
          << ',' << (x.ok() ? "ok" : "error: " + sanitize(x.error)) << '\n';
  }
  write_file_atomic(path, out.str());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

}  // namespace

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader)
    throw ParseError("unexpected records header", 1);
  std::vector<RunRecord> out;
  std::size_t ln = 1;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 14) throw ParseError("expected 14 fields", ln);
    try {
      const std::size_t point = std::stoull(f[2]);
      const int replicate = std::stoi(f[5]);
      if (out.empty() || out.back().point != point ||
          out.back().replicate != replicate || out.back().scenario != f[0]) {
        RunRecord r;
        r.scenario = f[0];
        r.spec_hash = f[1];
        r.point = point;
        r.point_label = f[3];
        r.sweep_value = parse_double(f[4]);
        r.replicate = replicate;
        r.graph_seed = std::stoull(f[9]);
        r.num_nodes = std::stoull(f[11]);
        r.num_edges = std::stoull(f[12]);
        out.push_back(std::move(r));
      }
      RunRecord& r = out.back();
      if (f[6].empty()) {
        r.error = f[13].rfind("error: ", 0) == 0 ? f[13].substr(7) : f[13];
        continue;
      }
      AlgorithmRun x;
      x.algorithm = f[6];
      x.nmi = parse_double(f[7]);
      x.ccr = parse_double(f[8]);
      x.seed = std::stoull(f[10]);
      if (f[13] != "ok")
        x.error = f[13].rfind("error: ", 0) == 0 ? f[13].substr(7) : f[13];
      r.runs.push_back(std::move(x));
    } catch (const std::logic_error&) {
      throw ParseError("malformed record", ln);
    }
  }
  return out;
}

void write_timings_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "scenario,point,replicate,algorithm,seconds\n";
  for (const auto& r : records)
    for (const auto& x : r.runs)
      out << sanitize(r.scenario) << ',' << r.point << ',' << r.replicate << ','
          << x.algorithm << ',' << format_double(x.seconds) << '\n';
  write_file_atomic(path, out.str());
}

void write_summary_csv(const std::filesystem::path& path,
                       const SweepSummary& summary) {
  std::ostringstream out;
  out << "scenario,sweep_variable,point,point_label,sweep_value,algorithm,"
         "count,failures,nmi_mean,nmi_std,nmi_half_width,ccr_mean,ccr_std,"
         "ccr_half_width,c_weak,c_exact,max_weak_k,max_p\n";
  for (const auto& row : summary.rows) {
    std::map<std::string, double> notes;
    for (const auto& a : summary.annotations)
      if (a.point == row.point) notes[a.name] = a.value;
    auto note = [&](const char* name) {
      auto it = notes.find(name);
      return it == notes.end() ? std::string() : format_double(it->second);
    };
    out << sanitize(summary.scenario) << ',' << summary.sweep_variable << ','
        << row.point << ',' << sanitize(row.point_label) << ','
        << format_double(row.sweep_value) << ',' << row.algorithm << ','
        << row.count << ',' << row.failures << ',' << format_double(row.nmi_mean)
        << ',' << format_double(row.nmi_std) << ','
        << format_double(row.nmi_half_width) << ','
        << format_double(row.ccr_mean) << ',' << format_double(row.ccr_std)
        << ',' << format_double(row.ccr_half_width) << ',' << note("c_weak")
        << ',' << note("c_exact") << ',' << note("max_weak_k") << ','
        << note("max_p") << '\n';
  }
  write_file_atomic(path, out.str());
}

nlohmann::json to_json(const SweepSummary& summary) {
  using nlohmann::json;
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json rows = json::array();
  for (const auto& r : summary.rows)
    rows.push_back({{"point", r.point},
                    {"point_label", r.point_label},
                    {"sweep_value", num(r.sweep_value)},
                    {"algorithm", r.algorithm},
                    {"count", r.count},
                    {"failures", r.failures},
                    {"nmi", {{"mean", num(r.nmi_mean)},
                             {"std", num(r.nmi_std)},
                             {"half_width", num(r.nmi_half_width)}}},
                    {"ccr", {{"mean", num(r.ccr_mean)},
                             {"std", num(r.ccr_std)},
                             {"half_width", num(r.ccr_half_width)}}},
                    {"seconds_mean", num(r.seconds_mean)}});
  json notes = json::array();
  for (const auto& a : summary.annotations)
    notes.push_back({{"name", a.name}, {"point", a.point}, {"value", a.value}});
  return {{"scenario", summary.scenario},
          {"sweep_variable", summary.sweep_variable},
          {"rows", rows},
          {"annotations", notes}};
}

void write_profile_csv(const std::filesystem::path& path,
                       const PerformanceProfile& profile) {
  std::ostringstream out;
  out << "tau";
  for (const auto& a : profile.algorithms) out << ',' << a;
  out << '\n';
  for (std::size_t t = 0; t < profile.tau.size(); ++t) {
    out << format_double(profile.tau[t]);
    for (Eigen::Index a = 0; a < profile.curves.rows(); ++a)
      out << ',' << format_double(profile.curves(a, static_cast<Eigen::Index>(t)));
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

DegreeReport degree_report(const Graph& g, const LabelVector& labels,
                           int replicates, std::uint64_t seed) {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  DegreeReport out;
  out.fit = fit_planted_partition(g, labels);
  out.replicates = replicates;
  for (const auto& [deg, count] : degree_distribution(g))
    out.real[deg] = static_cast<double>(count);
  const SbmParams params = fitted_params(out.fit, g.num_nodes());
  for (int r = 0; r < replicates; ++r) {
    const auto sampled = sample_sbm(params, derive_seed(seed, static_cast<std::uint64_t>(r)));
    for (const auto& [deg, count] : degree_distribution(sampled.graph))
      out.synthetic[deg] += static_cast<double>(count) / replicates;
  }
  return out;
}

void write_degree_report_csv(const std::filesystem::path& path,
                             const DegreeReport& report) {
  std::set<std::size_t> degrees;
  for (const auto& [d, _] : report.real) degrees.insert(d);
  for (const auto& [d, _] : report.synthetic) degrees.insert(d);
  std::ostringstream out;
  out << "degree,real_count,synthetic_mean_count\n";
  for (std::size_t d : degrees) {
    auto r = report.real.find(d);
    auto s = report.synthetic.find(d);
    out << d << ',' << format_double(r == report.real.end() ? 0.0 : r->second)
        << ',' << format_double(s == report.synthetic.end() ? 0.0 : s->second)
        << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace vecsbm
