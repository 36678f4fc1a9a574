/*
 * Copyright 2026 The pdstree Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PDSTREE_ENGINE_H_
#define PDSTREE_ENGINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdstree/error.h"
#include "pdstree/schema.h"
#include "pdstree/split.h"
#include "pdstree/stream.h"
#include "pdstree/tree.h"
#include "pdstree/worker_pool.h"

namespace pdstree {

struct EngineConfig {
  int mappers = 1;
  int64_t records_per_round = 100;
  int bins = 10;
  SplitConfig split;
  uint64_t seed = 0;
  std::optional<int64_t> max_rounds;
  // When non-empty, every round's merged statistics are written to
  // <stats_dir>/round-<i>.stats.
  std::string stats_dir;
  // Test-then-train accuracy over the training stream.
  bool prequential = false;

  void Validate() const;
};

// Statistics one mapper accumulated for the current round, keyed by leaf.
struct MapperState {
  int mapper_index = 0;
  std::map<LeafId, LeafStats> local;

  void Clear() { local.clear(); }
  bool empty() const { return local.empty(); }
};

// Per-leaf statistics accumulated since each leaf was created.
using GlobalStats = std::map<LeafId, LeafStats>;

struct RoundReport {
  int64_t round = 0;
  int64_t records = 0;
  int splits = 0;
  int evaluations = 0;
  double elapsed_seconds = 0;
  double map_seconds = 0;
  double reduce_seconds = 0;
  double decide_seconds = 0;
};

struct SplitRecord {
  int64_t round = 0;
  LeafId leaf = 0;
  SplitTest test;

  bool operator==(const SplitRecord&) const = default;
};

// Contiguous shards in batch order; the first |batch| mod P shards receive
// one extra record.
std::vector<std::span<const Instance>> PartitionRound(
    std::span<const Instance> batch, int mappers);

// Routes each record of the shard and accumulates it into that leaf's local
// statistics. `local_budget` must be at least the round size so that local
// histograms stay lossless.
MapperState MapShard(const DecisionTree& tree, std::span<const Instance> shard,
                     int local_budget, int mapper_index = 0);

// Merges the mapper states into `prior`. Locals are folded in ascending
// mapper_index order into one lossless per-leaf round summary, compressed to
// `bins`, and then merged into the persistent per-leaf statistics.
GlobalStats Reduce(std::span<const MapperState> locals, GlobalStats prior,
                   int bins);

// Reduce output file:
//   STATS bins=<B> leaves=<count>
//   LEAF <leaf_id> N <n> CLASSES <c0>,<c1>,...
//   HIST <leaf_id> <attr> <class> <p1>:<m1>;<p2>:<m2>;...
//   NOM <leaf_id> <attr> <class> <c0>,<c1>,...
std::string FormatReduceOutput(const GlobalStats& stats, int bins);
GlobalStats ParseReduceOutput(std::string_view text);
void WriteReduceOutput(const GlobalStats& stats, int bins,
                       const std::string& path);
GlobalStats ReadReduceOutput(const std::string& path);

struct ControllerResult {
  std::vector<SplitRecord> splits;
  int evaluations = 0;
};

// Refreshes every leaf's prediction from `stats`, then evaluates leaves in
// ascending id (only those in `touched` when given). A split leaf's
// statistics are dropped; its children start empty and are labeled with the
// majority of their side of the chosen split.
ControllerResult ControllerStep(DecisionTree& tree, GlobalStats& stats,
                                const SplitConfig& config,
                                const std::set<LeafId>* touched = nullptr,
                                int64_t round = 0);

// Holds the controller-side state between rounds.
class Trainer {
 public:
  Trainer(Schema schema, EngineConfig config);

  // Runs one map / reduce / decide round over `batch`.
  RoundReport RunRound(std::span<const Instance> batch);

  const DecisionTree& tree() const { return tree_; }
  const GlobalStats& global_stats() const { return global_; }
  const std::vector<MapperState>& mapper_states() const { return mappers_; }
  const std::vector<SplitRecord>& split_log() const { return split_log_; }
  int64_t rounds() const { return round_; }
  int64_t evaluations() const { return evaluations_; }
  const EngineConfig& config() const { return config_; }

 private:
  EngineConfig config_;
  DecisionTree tree_;
  GlobalStats global_;
  std::vector<MapperState> mappers_;
  std::unique_ptr<WorkerPool> pool_;
  std::vector<SplitRecord> split_log_;
  int64_t round_ = 0;
  int64_t evaluations_ = 0;
};

struct TrainResult {
  DecisionTree tree;
  std::vector<RoundReport> rounds;
  std::vector<SplitRecord> split_log;
  int64_t evaluations = 0;
  int64_t consumed = 0;
  // Prequential counts; zero unless EngineConfig::prequential.
  int64_t prequential_correct = 0;
  int64_t prequential_total = 0;
};

// Ingestion failure during training. Carries the reports of completed rounds.
class TrainingAborted : public Error {
 public:
  TrainingAborted(const Error& cause, std::vector<RoundReport> partial);
  const std::vector<RoundReport>& partial_reports() const { return partial_; }

 private:
  std::vector<RoundReport> partial_;
};

// Single pass over `source`: rounds of up to records_per_round instances
// until the stream ends or max_rounds is reached.
TrainResult TrainStream(StreamSource& source, const Schema& schema,
                        const EngineConfig& config);

}  // namespace pdstree

#endif  // PDSTREE_ENGINE_H_
