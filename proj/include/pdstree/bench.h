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

#ifndef PDSTREE_BENCH_H_
#define PDSTREE_BENCH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdstree/datagen.h"
#include "pdstree/engine.h"
#include "pdstree/stream.h"
#include "pdstree/tree.h"

namespace pdstree {

struct PrequentialAccuracy {
  int64_t correct = 0;
  int64_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
  // Percentage with two decimals, e.g. "83.11".
  std::string Percent() const;
};

// Predict-only accuracy of `tree` over the whole stream.
// Throws kEmptyEvaluationSet on an empty stream.
PrequentialAccuracy Evaluate(const DecisionTree& tree, StreamSource& stream);

// Where training and holdout records come from: a synthetic concept or a
// CSV file with its schema.
struct DataSource {
  std::optional<GeneratorConfig> generator;
  int64_t records = 0;  // generator only
  std::string csv_path;
  std::string eval_csv_path;
  Schema schema;

  static DataSource FromGenerator(const GeneratorConfig& config, int64_t records);
  static DataSource FromCsv(const std::string& csv, const std::string& schema_path,
                            const std::string& eval_csv = "");

  std::unique_ptr<StreamSource> OpenTraining() const;
  // Independent draw from the same concept, or the evaluation CSV.
  // Returns nullptr when no holdout is available.
  std::unique_ptr<StreamSource> OpenHoldout(int64_t records) const;

 private:
  std::optional<Concept> concept_;
};

enum class SweepAxis { kBatch, kAttrs, kBins };

SweepAxis ParseSweepAxis(const std::string& name);
std::string SweepAxisName(SweepAxis axis);

struct SweepPoint {
  int64_t value = 0;
  PrequentialAccuracy accuracy;
  double elapsed_seconds = 0;
  TreeMetrics metrics;
  int64_t evaluations = 0;
  int64_t rounds = 0;
  // Records the training stream yielded in the first run.
  int64_t consumed = 0;
};

struct SweepOptions {
  SweepAxis axis = SweepAxis::kBatch;
  std::vector<int64_t> values;
  DataSource data;
  int64_t eval_records = 10'000;
  EngineConfig engine;
  // Each point is trained this many times; the fastest run is reported.
  int repeats = 1;
};

// Points run sequentially in ascending order of value. Training time covers
// the engine only; records are materialized before the clock starts.
std::vector<SweepPoint> RunSweep(const SweepOptions& options);

// Header line plus one row per point; columns are fixed per axis:
//   batch: records accuracy time evaluations rounds depth nodes leaves
//   attrs: attributes depth nodes leaves time accuracy evaluations
//   bins:  bins time accuracy evaluations depth nodes leaves
std::string FormatSweepTsv(SweepAxis axis, const std::vector<SweepPoint>& points);

// round records splits evaluations elapsed map reduce decide
std::string FormatRoundsTsv(const std::vector<RoundReport>& rounds);

}  // namespace pdstree

#endif  // PDSTREE_BENCH_H_
