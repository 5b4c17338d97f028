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


// Experiment orchestration: scenario catalog, replicated sweeps, seeding and
// result persistence.

#ifndef VECSBM_HARNESS_HPP_
#define VECSBM_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vecsbm/graph.hpp"
#include "vecsbm/metrics.hpp"
#include "vecsbm/pipeline.hpp"
#include "vecsbm/sbm.hpp"
#include "vecsbm/spectral.hpp"

namespace vecsbm {

enum class ModelKind { kPlanted, kDcSbm, kDataset };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

struct DatasetSpec {
  std::filesystem::path edges;
  std::filesystem::path labels;
  bool symmetrize = true;
  bool largest_component = true;
};

// Overrides applied to the base spec at one sweep point. Keys:
//   model:     n, K, c, lambda, gamma, beta, log (0 constant / 1 log)
//   algorithm: r, l, w, d, m, epochs
using SweepPoint = std::map<std::string, double>;

struct ExperimentSpec {
  std::string scenario = "custom";
  std::string description;
  ModelKind model = ModelKind::kPlanted;
  DcSbmSpec dcsbm;  // dcsbm.base is the planted-partition spec
  DatasetSpec dataset;
  std::vector<std::string> algorithms{"vec", "sc"};
  VecConfig vec;
  SpectralConfig sc;
  int replicates = 5;
  // One graph per sweep point; replicates only vary the algorithm seeds.
  bool fixed_graph = false;
  std::uint64_t seed = 1;
  std::string sweep_variable;
  std::vector<SweepPoint> points;  // empty: a single point at the base spec

  void validate() const;
  const PlantedPartitionSpec& planted() const { return dcsbm.base; }
  PlantedPartitionSpec& planted() { return dcsbm.base; }
};

nlohmann::json to_json(const ExperimentSpec& spec);
// Missing keys keep their defaults. Throws std::invalid_argument on unknown
// enum values or an invalid result.
ExperimentSpec spec_from_json(const nlohmann::json& j);
ExperimentSpec load_spec(const std::filesystem::path& path);
// 16 hex digits; stable across platforms and runs.
std::string spec_hash(const ExperimentSpec& spec);

std::vector<std::string> scenario_ids();
// Throws std::invalid_argument for unknown ids.
ExperimentSpec scenario(const std::string& id);
// Shrinks (or grows) every node count by `factor` and the replicate count
// with it, never below one replicate or 4K nodes.
ExperimentSpec scaled(ExperimentSpec spec, double factor);

// Spec with the overrides of point `index` applied (points may be empty).
ExperimentSpec resolve_point(const ExperimentSpec& spec, std::size_t index);
std::string point_label(const SweepPoint& point);

struct AlgorithmRun {
  std::string algorithm;
  double nmi = 0.0;
  double ccr = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  std::string error;  // empty on success
  bool ok() const { return error.empty(); }
};

struct RunRecord {
  std::string scenario;
  std::string spec_hash;
  std::size_t point = 0;
  std::string point_label;
  double sweep_value = 0.0;
  int replicate = 0;
  std::uint64_t graph_seed = 0;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::string error;  // graph stage failure; algorithms then empty
  std::vector<AlgorithmRun> runs;
};

struct RunOptions {
  // Worker pool size. Jobs (point, replicate) run concurrently with
  // single-threaded algorithms, so results do not depend on this value.
  int threads = 1;
  std::function<void(const RunRecord&)> on_record;  // serialized
};

// Records come back ordered by (point, replicate). Stage errors are recorded
// and the remaining replicates still run.
std::vector<RunRecord> run(const ExperimentSpec& spec,
                           const RunOptions& options = {});

struct LoadedDataset {
  Graph graph;
  LabelVector labels;
  NodeIdMap ids;
  std::size_t original_nodes = 0;
  std::size_t isolated = 0;  // in the graph as loaded
};

LoadedDataset load_dataset(const DatasetSpec& spec);

struct SummaryRow {
  std::size_t point = 0;
  std::string point_label;
  double sweep_value = 0.0;
  std::string algorithm;
  int count = 0;
  int failures = 0;
  double nmi_mean = 0.0, nmi_std = 0.0, nmi_half_width = 0.0;
  double ccr_mean = 0.0, ccr_std = 0.0, ccr_half_width = 0.0;
  double seconds_mean = 0.0;
};

struct Annotation {
  std::string name;  // c_weak, c_exact, max_weak_k, max_p
  std::size_t point = 0;
  double value = 0.0;
};

struct SweepSummary {
  std::string scenario;
  std::string sweep_variable;
  std::vector<SummaryRow> rows;
  std::vector<Annotation> annotations;
};

// Mean, sample standard deviation and std/sqrt(count) per (point,
// algorithm), over successful runs.
SweepSummary sweep_report(const ExperimentSpec& spec,
                          const std::vector<RunRecord>& records);

// Experiments are (point, replicate) pairs where every algorithm succeeded.
ExperimentResultTable result_table(const std::vector<RunRecord>& records,
                                   const std::string& metric);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
void write_timings_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records);
void write_summary_csv(const std::filesystem::path& path,
                       const SweepSummary& summary);
nlohmann::json to_json(const SweepSummary& summary);
void write_profile_csv(const std::filesystem::path& path,
                       const PerformanceProfile& profile);

struct DegreeReport {
  PlantedPartitionFit fit;
  int replicates = 0;
  std::map<std::size_t, double> real;       // degree -> node count
  std::map<std::size_t, double> synthetic;  // degree -> mean node count
};

DegreeReport degree_report(const Graph& g, const LabelVector& labels,
                           int replicates, std::uint64_t seed);
void write_degree_report_csv(const std::filesystem::path& path,
                             const DegreeReport& report);

// Writes to a temporary sibling and renames, so readers never see a partial
// file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace vecsbm

#endif  // VECSBM_HARNESS_HPP_
