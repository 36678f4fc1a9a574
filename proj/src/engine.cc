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

#include "pdstree/engine.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdstree/text.h"

namespace pdstree {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int ArgMax(const std::vector<double>& counts) {
  int best = 0;
  for (size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[best]) best = static_cast<int>(k);
  }
  return best;
}

}  // namespace

void EngineConfig::Validate() const {
  if (mappers < 1) throw Error(ErrorCode::kInvalidArgument, "mappers must be >= 1");
  if (records_per_round < 1) {
    throw Error(ErrorCode::kInvalidArgument, "records per round must be >= 1");
  }
  if (bins < 2) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 2");
  if (max_rounds && *max_rounds < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_rounds must be >= 0");
  }
  split.Validate();
}

std::vector<std::span<const Instance>> PartitionRound(
    std::span<const Instance> batch, int mappers) {
  if (mappers < 1) throw Error(ErrorCode::kInvalidArgument, "mappers must be >= 1");
  std::vector<std::span<const Instance>> shards;
  shards.reserve(mappers);
  const size_t base = batch.size() / mappers;
  const size_t extra = batch.size() % mappers;
  size_t offset = 0;
  for (int i = 0; i < mappers; ++i) {
    const size_t size = base + (static_cast<size_t>(i) < extra ? 1 : 0);
    shards.push_back(batch.subspan(offset, size));
    offset += size;
  }
  return shards;
}

MapperState MapShard(const DecisionTree& tree, std::span<const Instance> shard,
                     int local_budget, int mapper_index) {
  MapperState state;
  state.mapper_index = mapper_index;
  for (const Instance& instance : shard) {
    const LeafId leaf = tree.Route(instance);
    auto it = state.local.find(leaf);
    if (it == state.local.end()) {
      it = state.local.emplace(leaf, LeafStats::Empty(tree.schema(), local_budget))
               .first;
    }
    it->second.Add(instance);
  }
  return state;
}

GlobalStats Reduce(std::span<const MapperState> locals, GlobalStats prior,
                   int bins) {
  std::vector<const MapperState*> ordered;
  for (const MapperState& state : locals) ordered.push_back(&state);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const MapperState* a, const MapperState* b) {
                     return a->mapper_index < b->mapper_index;
                   });

  std::set<LeafId> leaves;
  for (const MapperState* state : ordered) {
    for (const auto& [leaf, stats] : state->local) leaves.insert(leaf);
  }
  for (LeafId leaf : leaves) {
    std::optional<LeafStats> round;
    for (const MapperState* state : ordered) {
      const auto it = state->local.find(leaf);
      if (it == state->local.end()) continue;
      if (!round) {
        round = it->second;
      } else {
        round->Merge(it->second);
      }
    }
    LeafStats compressed = round->WithBudget(bins);
    auto existing = prior.find(leaf);
    if (existing == prior.end()) {
      prior.emplace(leaf, std::move(compressed));
    } else {
      existing->second.Merge(compressed);
    }
  }
  return prior;
}

std::string FormatReduceOutput(const GlobalStats& stats, int bins) {
  std::string out = "STATS bins=" + std::to_string(bins) +
                    " leaves=" + std::to_string(stats.size()) + "\n";
  for (const auto& [leaf, leaf_stats] : stats) {
    const std::string id = std::to_string(leaf);
    out += "LEAF " + id + " N " + std::to_string(leaf_stats.n) + " CLASSES " +
           JoinNumbers(leaf_stats.class_counts, ',') + "\n";
    for (size_t a = 0; a < leaf_stats.attributes.size(); ++a) {
      const auto& attr = leaf_stats.attributes[a];
      const std::string prefix = id + " " + std::to_string(a) + " ";
      for (size_t k = 0; k < attr.histograms.size(); ++k) {
        out += "HIST " + prefix + std::to_string(k) + " " +
               attr.histograms[k].Serialize() + "\n";
      }
      for (size_t k = 0; k < attr.nominal.size(); ++k) {
        out += "NOM " + prefix + std::to_string(k) + " " +
               JoinNumbers(attr.nominal[k].counts, ',') + "\n";
      }
    }
  }
  return out;
}

namespace {

int64_t FieldInt(std::string_view token, int line) {
  const auto value = ParseInt(token);
  if (!value) {
    throw Error(ErrorCode::kSyntax, "expected integer, got '" + std::string(token) + "'",
                line);
  }
  return *value;
}

std::vector<int64_t> IntList(std::string_view token, int line) {
  std::vector<int64_t> values;
  for (std::string_view item : SplitString(token, ',')) {
    values.push_back(FieldInt(item, line));
  }
  return values;
}

}  // namespace

GlobalStats ParseReduceOutput(std::string_view text) {
  const auto lines = SplitString(text, '\n');
  GlobalStats stats;
  int bins = 0;
  int64_t expected_leaves = -1;
  LeafStats* current = nullptr;
  LeafId current_id = -1;
  int line_number = 0;
  for (std::string_view raw : lines) {
    ++line_number;
    if (Trim(raw).empty()) continue;
    // Split on single spaces; an empty histogram leaves a trailing empty token.
    const auto tokens = SplitString(raw, ' ');
    const std::string_view kind = tokens[0];
    if (line_number == 1) {
      if (kind != "STATS" || tokens.size() != 3 ||
          !tokens[1].starts_with("bins=") || !tokens[2].starts_with("leaves=")) {
        throw Error(ErrorCode::kSyntax, "expected STATS header", line_number);
      }
      bins = static_cast<int>(FieldInt(tokens[1].substr(5), line_number));
      expected_leaves = FieldInt(tokens[2].substr(7), line_number);
      if (bins < 1) throw Error(ErrorCode::kSyntax, "bad bin budget", line_number);
      continue;
    }
    if (kind == "LEAF") {
      if (tokens.size() != 6 || tokens[2] != "N" || tokens[4] != "CLASSES") {
        throw Error(ErrorCode::kSyntax, "malformed LEAF line", line_number);
      }
      current_id = FieldInt(tokens[1], line_number);
      if (!stats.empty() && current_id <= stats.rbegin()->first) {
        throw Error(ErrorCode::kSyntax, "LEAF lines out of order", line_number);
      }
      LeafStats leaf;
      leaf.n = FieldInt(tokens[3], line_number);
      leaf.class_counts = IntList(tokens[5], line_number);
      int64_t sum = 0;
      for (int64_t c : leaf.class_counts) sum += c;
      if (sum != leaf.n || leaf.class_counts.size() < 2) {
        throw Error(ErrorCode::kSyntax, "class counts disagree with N", line_number);
      }
      current = &stats.emplace(current_id, std::move(leaf)).first->second;
      continue;
    }
    if (kind != "HIST" && kind != "NOM") {
      throw Error(ErrorCode::kSyntax, "unknown record '" + std::string(kind) + "'",
                  line_number);
    }
    if (tokens.size() != 5) {
      throw Error(ErrorCode::kSyntax, "malformed " + std::string(kind) + " line",
                  line_number);
    }
    if (current == nullptr || FieldInt(tokens[1], line_number) != current_id) {
      throw Error(ErrorCode::kSyntax, "statistics line outside its LEAF block",
                  line_number);
    }
    const int64_t attr = FieldInt(tokens[2], line_number);
    const int64_t klass = FieldInt(tokens[3], line_number);
    const int64_t num_attrs = static_cast<int64_t>(current->attributes.size());
    if (klass == 0) {
      if (attr != num_attrs) {
        throw Error(ErrorCode::kSyntax, "attribute lines out of order", line_number);
      }
      current->attributes.emplace_back();
    } else if (attr != num_attrs - 1) {
      throw Error(ErrorCode::kSyntax, "attribute lines out of order", line_number);
    }
    auto& attr_stats = current->attributes.back();
    const size_t have = attr_stats.histograms.size() + attr_stats.nominal.size();
    if (static_cast<size_t>(klass) != have ||
        klass >= current->num_classes()) {
      throw Error(ErrorCode::kSyntax, "class lines out of order", line_number);
    }
    try {
      if (kind == "HIST") {
        if (!attr_stats.nominal.empty()) {
          throw Error(ErrorCode::kSyntax, "mixed HIST/NOM for one attribute");
        }
        attr_stats.histograms.push_back(StreamingHistogram::Parse(tokens[4], bins));
      } else {
        if (!attr_stats.histograms.empty()) {
          throw Error(ErrorCode::kSyntax, "mixed HIST/NOM for one attribute");
        }
        NominalCounts counts;
        counts.counts = IntList(tokens[4], line_number);
        attr_stats.nominal.push_back(std::move(counts));
      }
    } catch (const Error& e) {
      if (e.line() > 0) throw;
      throw Error(e.code(), e.what(), line_number);
    }
  }
  if (bins == 0) throw Error(ErrorCode::kSyntax, "missing STATS header", 1);
  if (static_cast<int64_t>(stats.size()) != expected_leaves) {
    throw Error(ErrorCode::kSyntax, "leaf count disagrees with header", line_number);
  }
  return stats;
}

void WriteReduceOutput(const GlobalStats& stats, int bins,
                       const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  file << FormatReduceOutput(stats, bins);
  if (!file) throw Error(ErrorCode::kIo, "write failure on '" + path + "'");
}

GlobalStats ReadReduceOutput(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return ParseReduceOutput(buffer.str());
}

ControllerResult ControllerStep(DecisionTree& tree, GlobalStats& stats,
                                const SplitConfig& config,
                                const std::set<LeafId>* touched,
                                int64_t round) {
  ControllerResult result;
  std::vector<LeafId> leaves;
  for (const auto& [leaf, leaf_stats] : stats) leaves.push_back(leaf);
  for (LeafId leaf : leaves) {
    const LeafStats& leaf_stats = stats.at(leaf);
    if (leaf_stats.n > 0) {
      tree.SetLeafSummary(leaf, leaf_stats.MajorityClass(), leaf_stats.n);
    }
    if (touched != nullptr && !touched->contains(leaf)) continue;
    if (leaf_stats.n < config.n_min) continue;
    ++result.evaluations;
    const auto best_two = TryFindBestTwo(leaf_stats, config);
    if (!best_two) continue;
    const SplitDecision decision =
        DecideSplit(best_two->best, best_two->second_gain, leaf_stats.n, config);
    if (!decision.should_split()) continue;
    const auto [left, right] = tree.ApplySplit(leaf, decision.test);
    tree.SetLeafSummary(left, ArgMax(best_two->best.left_counts), 0);
    tree.SetLeafSummary(right, ArgMax(best_two->best.right_counts), 0);
    stats.erase(leaf);
    result.splits.push_back({round, leaf, decision.test});
  }
  return result;
}

Trainer::Trainer(Schema schema, EngineConfig config)
    : config_(std::move(config)), tree_(std::move(schema)) {
  config_.Validate();
  mappers_.resize(config_.mappers);
  for (int i = 0; i < config_.mappers; ++i) mappers_[i].mapper_index = i;
  if (config_.mappers > 1) pool_ = std::make_unique<WorkerPool>(config_.mappers);
  if (!config_.stats_dir.empty()) {
    std::filesystem::create_directories(config_.stats_dir);
  }
}

RoundReport Trainer::RunRound(std::span<const Instance> batch) {
  RoundReport report;
  report.round = round_;
  report.records = static_cast<int64_t>(batch.size());
  const auto start = Clock::now();

  const int local_budget = static_cast<int>(
      std::max<int64_t>(config_.bins, config_.records_per_round));
  const auto shards = PartitionRound(batch, config_.mappers);
  auto map_task = [&](int i) {
    mappers_[i] = MapShard(tree_, shards[i], local_budget, i);
  };
  if (pool_) {
    pool_->Run(config_.mappers, map_task);
  } else {
    for (int i = 0; i < config_.mappers; ++i) map_task(i);
  }
  report.map_seconds = SecondsSince(start);

  const auto reduce_start = Clock::now();
  std::set<LeafId> touched;
  for (const MapperState& state : mappers_) {
    for (const auto& [leaf, stats] : state.local) touched.insert(leaf);
  }
  global_ = Reduce(mappers_, std::move(global_), config_.bins);
  if (!config_.stats_dir.empty()) {
    WriteReduceOutput(global_, config_.bins,
                      (std::filesystem::path(config_.stats_dir) /
                       ("round-" + std::to_string(round_) + ".stats"))
                          .string());
  }
  for (MapperState& state : mappers_) state.Clear();
  report.reduce_seconds = SecondsSince(reduce_start);

  const auto decide_start = Clock::now();
  ControllerResult decided =
      ControllerStep(tree_, global_, config_.split, &touched, round_);
  report.decide_seconds = SecondsSince(decide_start);

  report.splits = static_cast<int>(decided.splits.size());
  report.evaluations = decided.evaluations;
  evaluations_ += decided.evaluations;
  split_log_.insert(split_log_.end(), decided.splits.begin(), decided.splits.end());
  ++round_;
  report.elapsed_seconds = SecondsSince(start);
  return report;
}

TrainingAborted::TrainingAborted(const Error& cause,
                                 std::vector<RoundReport> partial)
    : Error(cause.code(), cause.message(), cause.line()),
      partial_(std::move(partial)) {}

TrainResult TrainStream(StreamSource& source, const Schema& schema,
                        const EngineConfig& config) {
  Trainer trainer(schema, config);
  TrainResult result{trainer.tree(), {}, {}, 0, 0, 0, 0};
  std::vector<Instance> batch;
  batch.reserve(static_cast<size_t>(std::min<int64_t>(config.records_per_round, 1 << 20)));
  while (!config.max_rounds || trainer.rounds() < *config.max_rounds) {
    batch.clear();
    try {
      while (static_cast<int64_t>(batch.size()) < config.records_per_round) {
        auto instance = source.Next();
        if (!instance) break;
        batch.push_back(std::move(*instance));
      }
    } catch (const Error& e) {
      throw TrainingAborted(e, std::move(result.rounds));
    }
    if (batch.empty()) break;
    if (config.prequential) {
      for (const Instance& instance : batch) {
        if (trainer.tree().Predict(instance) == instance.label) {
          ++result.prequential_correct;
        }
      }
      result.prequential_total += static_cast<int64_t>(batch.size());
    }
    result.rounds.push_back(trainer.RunRound(batch));
  }
  result.tree = trainer.tree();
  result.split_log = trainer.split_log();
  result.evaluations = trainer.evaluations();
  result.consumed = source.consumed();
  return result;
}

}  // namespace pdstree
