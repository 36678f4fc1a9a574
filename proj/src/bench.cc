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

#include "pdstree/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "pdstree/error.h"
#include "pdstree/text.h"

namespace pdstree {

std::string PrequentialAccuracy::Percent() const {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", 100.0 * value());
  return buffer;
}

PrequentialAccuracy Evaluate(const DecisionTree& tree, StreamSource& stream) {
  PrequentialAccuracy accuracy;
  while (auto instance = stream.Next()) {
    if (tree.Predict(*instance) == instance->label) ++accuracy.correct;
    ++accuracy.total;
  }
  if (accuracy.total == 0) {
    throw Error(ErrorCode::kEmptyEvaluationSet, "evaluation stream is empty");
  }
  return accuracy;
}

DataSource DataSource::FromGenerator(const GeneratorConfig& config,
                                     int64_t records) {
  DataSource source;
  source.generator = config;
  source.records = records;
  source.concept_ = GenerateConcept(config);
  source.schema = source.concept_->schema;
  return source;
}

DataSource DataSource::FromCsv(const std::string& csv,
                               const std::string& schema_path,
                               const std::string& eval_csv) {
  DataSource source;
  source.csv_path = csv;
  source.eval_csv_path = eval_csv;
  source.schema = ReadSchemaFile(schema_path);
  return source;
}

std::unique_ptr<StreamSource> DataSource::OpenTraining() const {
  if (concept_) {
    return std::make_unique<GeneratedStream>(*concept_, *generator, records);
  }
  return OpenCsvStream(csv_path, schema);
}

std::unique_ptr<StreamSource> DataSource::OpenHoldout(int64_t count) const {
  if (concept_) {
    return std::make_unique<GeneratedStream>(*concept_, *generator, count,
                                             kHoldoutStreamId);
  }
  if (eval_csv_path.empty()) return nullptr;
  return OpenCsvStream(eval_csv_path, schema);
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "batch") return SweepAxis::kBatch;
  if (name == "attrs") return SweepAxis::kAttrs;
  if (name == "bins") return SweepAxis::kBins;
  throw Error(ErrorCode::kInvalidArgument, "unknown sweep axis '" + name + "'");
}

std::string SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBatch: return "batch";
    case SweepAxis::kAttrs: return "attrs";
    case SweepAxis::kBins: return "bins";
  }
  return "";
}

namespace {

std::vector<Instance> Drain(StreamSource& stream) {
  std::vector<Instance> out;
  while (auto instance = stream.Next()) out.push_back(std::move(*instance));
  return out;
}

}  // namespace

std::vector<SweepPoint> RunSweep(const SweepOptions& options) {
  if (options.values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one value");
  }
  if (options.repeats < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repeats must be >= 1");
  }
  if (options.axis == SweepAxis::kAttrs && !options.data.generator) {
    throw Error(ErrorCode::kInvalidArgument,
                "the attribute sweep needs a synthetic data source");
  }
  std::vector<int64_t> values = options.values;
  std::sort(values.begin(), values.end());

  std::vector<SweepPoint> points;
  std::optional<DataSource> shared;
  if (options.axis != SweepAxis::kAttrs) shared = options.data;

  for (int64_t value : values) {
    EngineConfig engine = options.engine;
    std::optional<DataSource> own;
    switch (options.axis) {
      case SweepAxis::kBatch:
        engine.records_per_round = value;
        break;
      case SweepAxis::kBins:
        engine.bins = static_cast<int>(value);
        break;
      case SweepAxis::kAttrs: {
        GeneratorConfig config = *options.data.generator;
        config.numeric_attrs = static_cast<int>(value);
        config.nominal_attrs = 0;
        config.concept_depth = static_cast<int>(std::min<int64_t>(value, 10));
        own = DataSource::FromGenerator(config, options.data.records);
        break;
      }
    }
    const DataSource& data = own ? *own : *shared;
    engine.stats_dir.clear();

    std::vector<Instance> records;
    {
      auto stream = data.OpenTraining();
      records = Drain(*stream);
    }

    SweepPoint point;
    point.value = value;
    std::optional<TrainResult> result;
    for (int r = 0; r < options.repeats; ++r) {
      VectorStream stream(records);
      const auto start = std::chrono::steady_clock::now();
      TrainResult run = TrainStream(stream, data.schema, engine);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (r == 0 || elapsed < point.elapsed_seconds) point.elapsed_seconds = elapsed;
      if (!result) result = std::move(run);
    }
    point.metrics = result->tree.Metrics();
    point.evaluations = result->evaluations;
    point.rounds = static_cast<int64_t>(result->rounds.size());
    point.consumed = result->consumed;
    if (auto holdout = data.OpenHoldout(options.eval_records)) {
      point.accuracy = Evaluate(result->tree, *holdout);
    }
    points.push_back(point);
  }
  return points;
}

std::string FormatSweepTsv(SweepAxis axis, const std::vector<SweepPoint>& points) {
  std::string out;
  auto seconds = [](double s) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", s);
    return std::string(buffer);
  };
  switch (axis) {
    case SweepAxis::kBatch:
      out = "records\taccuracy\ttime\tevaluations\trounds\tdepth\tnodes\tleaves\n";
      for (const auto& p : points) {
        out += std::to_string(p.value) + "\t" + p.accuracy.Percent() + "\t" +
               seconds(p.elapsed_seconds) + "\t" + std::to_string(p.evaluations) +
               "\t" + std::to_string(p.rounds) + "\t" +
               std::to_string(p.metrics.depth) + "\t" +
               std::to_string(p.metrics.node_count) + "\t" +
               std::to_string(p.metrics.leaf_count) + "\n";
      }
      break;
    case SweepAxis::kAttrs:
      out = "attributes\tdepth\tnodes\tleaves\ttime\taccuracy\tevaluations\n";
      for (const auto& p : points) {
        out += std::to_string(p.value) + "\t" + std::to_string(p.metrics.depth) +
               "\t" + std::to_string(p.metrics.node_count) + "\t" +
               std::to_string(p.metrics.leaf_count) + "\t" +
               seconds(p.elapsed_seconds) + "\t" + p.accuracy.Percent() + "\t" +
               std::to_string(p.evaluations) + "\n";
      }
      break;
    case SweepAxis::kBins:
      out = "bins\ttime\taccuracy\tevaluations\tdepth\tnodes\tleaves\n";
      for (const auto& p : points) {
        out += std::to_string(p.value) + "\t" + seconds(p.elapsed_seconds) + "\t" +
               p.accuracy.Percent() + "\t" + std::to_string(p.evaluations) + "\t" +
               std::to_string(p.metrics.depth) + "\t" +
               std::to_string(p.metrics.node_count) + "\t" +
               std::to_string(p.metrics.leaf_count) + "\n";
      }
      break;
  }
  return out;
}

std::string FormatRoundsTsv(const std::vector<RoundReport>& rounds) {
  std::string out = "round\trecords\tsplits\tevaluations\telapsed\tmap\treduce\tdecide\n";
  char buffer[160];
  for (const auto& r : rounds) {
    std::snprintf(buffer, sizeof(buffer), "%lld\t%lld\t%d\t%d\t%.6f\t%.6f\t%.6f\t%.6f\n",
                  static_cast<long long>(r.round), static_cast<long long>(r.records),
                  r.splits, r.evaluations, r.elapsed_seconds, r.map_seconds,
                  r.reduce_seconds, r.decide_seconds);
    out += buffer;
  }
  return out;
}

}  // namespace pdstree
