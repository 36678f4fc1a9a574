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

// Command-line driver: train / eval / sweep / genstream.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdstree/bench.h"
#include "pdstree/datagen.h"
#include "pdstree/engine.h"
#include "pdstree/error.h"
#include "pdstree/schema.h"
#include "pdstree/stream.h"
#include "pdstree/tree.h"

namespace {

constexpr int kUsageError = 2;

struct DataFlags {
  std::string preset;
  std::string input;
  std::string schema;
  std::string eval_input;
  int64_t records = -1;
  double noise = -1;
  uint64_t seed = 1;
  int64_t eval_records = 10'000;

  void Register(CLI::App& app) {
    app.add_option("--preset", preset, "Synthetic stream preset (d1..d5)");
    app.add_option("--input", input, "CSV stream (class label last)");
    app.add_option("--schema", schema, "Schema file for --input");
    app.add_option("--eval-input", eval_input, "CSV holdout stream for --input");
    app.add_option("--records", records, "Override the preset record count");
    app.add_option("--noise", noise, "Override the preset label noise")
        ->check(CLI::Range(0.0, 0.999));
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--eval-records", eval_records, "Holdout records for synthetic data")
        ->check(CLI::NonNegativeNumber);
  }

  pdstree::DataSource Build() const {
    if (!preset.empty() && !input.empty()) {
      throw CLI::ValidationError("--preset and --input are mutually exclusive");
    }
    if (!preset.empty()) {
      pdstree::Preset p = pdstree::GetPreset(preset);
      p.config.seed = seed;
      if (noise >= 0) p.config.noise = noise;
      return pdstree::DataSource::FromGenerator(p.config, records >= 0 ? records : p.records);
    }
    if (input.empty() || schema.empty()) {
      throw CLI::ValidationError("need --preset, or --input with --schema");
    }
    return pdstree::DataSource::FromCsv(input, schema, eval_input);
  }
};

struct EngineFlags {
  int64_t batch = 100;
  int mappers = 1;
  int bins = 10;
  double delta = 1e-4;
  double tau = 0.05;
  int64_t nmin = 200;
  int candidates = 10;
  int nominal_cap = 12;
  int64_t max_rounds = -1;

  void Register(CLI::App& app) {
    app.add_option("--batch", batch, "Records per round (G)")->check(CLI::PositiveNumber);
    app.add_option("--mappers", mappers, "Parallel mappers (P)")->check(CLI::PositiveNumber);
    app.add_option("--bins", bins, "Histogram bin budget (B)")->check(CLI::Range(2, 1 << 20));
    app.add_option("--delta", delta, "Split confidence parameter")->check(CLI::Range(1e-300, 0.999999));
    app.add_option("--tau", tau, "Tie threshold")->check(CLI::NonNegativeNumber);
    app.add_option("--nmin", nmin, "Minimum leaf instances before evaluation")
        ->check(CLI::PositiveNumber);
    app.add_option("--candidates", candidates, "Candidate thresholds per numeric attribute")
        ->check(CLI::Range(2, 1 << 20));
    app.add_option("--nominal-cap", nominal_cap, "Largest nominal domain enumerated exhaustively")
        ->check(CLI::Range(1, 30));
    app.add_option("--max-rounds", max_rounds, "Stop after this many rounds")
        ->check(CLI::NonNegativeNumber);
  }

  pdstree::EngineConfig Build(uint64_t seed) const {
    pdstree::EngineConfig config;
    config.records_per_round = batch;
    config.mappers = mappers;
    config.bins = bins;
    config.split.delta = delta;
    config.split.tau = tau;
    config.split.n_min = nmin;
    config.split.candidates = candidates;
    config.split.nominal_cap = nominal_cap;
    config.seed = seed;
    if (max_rounds >= 0) config.max_rounds = max_rounds;
    return config;
  }
};

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw pdstree::Error(pdstree::ErrorCode::kIo, "cannot write " + path.string());
  file << content;
}

std::string ReadFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw pdstree::Error(pdstree::ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string MetricsTsv(const pdstree::TreeMetrics& m) {
  return "depth\tnodes\tleaves\n" + std::to_string(m.depth) + "\t" +
         std::to_string(m.node_count) + "\t" + std::to_string(m.leaf_count) + "\n";
}

int RunTrain(const DataFlags& data_flags, const EngineFlags& engine_flags,
             const std::string& out, bool no_stats, bool prequential) {
  const pdstree::DataSource data = data_flags.Build();
  pdstree::EngineConfig config = engine_flags.Build(data_flags.seed);
  config.prequential = prequential;
  const std::filesystem::path out_dir(out);
  std::filesystem::create_directories(out_dir);
  if (!no_stats) config.stats_dir = out_dir.string();

  auto stream = data.OpenTraining();
  std::optional<pdstree::TrainResult> trained;
  try {
    trained = pdstree::TrainStream(*stream, data.schema, config);
  } catch (const pdstree::TrainingAborted& e) {
    WriteFile(out_dir / "rounds.tsv", pdstree::FormatRoundsTsv(e.partial_reports()));
    std::cerr << "training aborted after " << e.partial_reports().size()
              << " rounds: " << e.what() << "\n";
    return 1;
  }
  const pdstree::TrainResult& result = *trained;
  WriteFile(out_dir / "model.tree", result.tree.Serialize());
  WriteFile(out_dir / "schema.txt", pdstree::FormatSchema(data.schema));
  WriteFile(out_dir / "rounds.tsv", pdstree::FormatRoundsTsv(result.rounds));
  const pdstree::TreeMetrics metrics = result.tree.Metrics();
  WriteFile(out_dir / "metrics.tsv", MetricsTsv(metrics));

  std::cout << "records\t" << result.consumed << "\n"
            << "rounds\t" << result.rounds.size() << "\n"
            << "evaluations\t" << result.evaluations << "\n"
            << "depth\t" << metrics.depth << "\n"
            << "nodes\t" << metrics.node_count << "\n"
            << "leaves\t" << metrics.leaf_count << "\n";
  if (prequential && result.prequential_total > 0) {
    pdstree::PrequentialAccuracy acc{result.prequential_correct, result.prequential_total};
    std::cout << "prequential_accuracy\t" << acc.Percent() << "%\n";
  }
  if (data_flags.eval_records > 0) {
    if (auto holdout = data.OpenHoldout(data_flags.eval_records)) {
      const auto acc = pdstree::Evaluate(result.tree, *holdout);
      std::cout << "holdout_accuracy\t" << acc.Percent() << "%\n";
    }
  }
  return 0;
}

int RunEval(const DataFlags& data_flags, const std::string& model_path) {
  const pdstree::DataSource data = data_flags.Build();
  const pdstree::DecisionTree tree =
      pdstree::DecisionTree::Parse(ReadFile(model_path), data.schema);
  std::unique_ptr<pdstree::StreamSource> stream;
  if (data.generator) {
    stream = data.OpenHoldout(data_flags.eval_records);
  } else {
    stream = data.OpenTraining();
  }
  const auto acc = pdstree::Evaluate(tree, *stream);
  std::cout << "records\t" << acc.total << "\n"
            << "correct\t" << acc.correct << "\n"
            << "accuracy\t" << acc.Percent() << "%\n";
  return 0;
}

int RunSweep(const DataFlags& data_flags, const EngineFlags& engine_flags,
             const std::string& axis, const std::vector<int64_t>& values,
             const std::string& out, int repeats) {
  pdstree::SweepOptions options;
  options.axis = pdstree::ParseSweepAxis(axis);
  options.values = values;
  options.data = data_flags.Build();
  options.eval_records = data_flags.eval_records;
  options.engine = engine_flags.Build(data_flags.seed);
  options.repeats = repeats;
  const auto points = pdstree::RunSweep(options);
  const std::string tsv = pdstree::FormatSweepTsv(options.axis, points);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    WriteFile(std::filesystem::path(out) / "sweep.tsv", tsv);
  }
  std::cout << tsv;
  return 0;
}

int RunGenstream(const DataFlags& data_flags, const std::string& out) {
  if (data_flags.preset.empty()) throw CLI::ValidationError("genstream needs --preset");
  pdstree::Preset preset = pdstree::GetPreset(data_flags.preset);
  preset.config.seed = data_flags.seed;
  if (data_flags.noise >= 0) preset.config.noise = data_flags.noise;
  const int64_t records = data_flags.records >= 0 ? data_flags.records : preset.records;
  const pdstree::Concept target = pdstree::GenerateConcept(preset.config);

  const std::filesystem::path out_dir(out);
  std::filesystem::create_directories(out_dir);
  WriteFile(out_dir / "schema.txt", pdstree::FormatSchema(target.schema));
  WriteFile(out_dir / "concept.tree", target.tree.Serialize());

  auto dump = [&](const std::filesystem::path& path, int64_t count, uint64_t stream_id) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw pdstree::Error(pdstree::ErrorCode::kIo, "cannot write " + path.string());
    pdstree::GeneratedStream stream(target, preset.config, count, stream_id);
    while (auto instance = stream.Next()) {
      file << pdstree::FormatInstance(*instance, target.schema) << '\n';
    }
  };
  dump(out_dir / "data.csv", records, 0);
  if (data_flags.eval_records > 0) {
    dump(out_dir / "holdout.csv", data_flags.eval_records, pdstree::kHoldoutStreamId);
  }
  std::cout << "wrote " << records << " records to " << (out_dir / "data.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel single-pass streaming CART trainer"};
  app.require_subcommand(1);

  DataFlags train_data, eval_data, sweep_data, gen_data;
  EngineFlags train_engine, sweep_engine;
  std::string train_out = "out", sweep_out, gen_out = "data", model_path, axis;
  std::vector<int64_t> values;
  bool no_stats = false, prequential = false;
  int repeats = 1;

  CLI::App* train = app.add_subcommand("train", "Train on a stream");
  train_data.Register(*train);
  train_engine.Register(*train);
  train->add_option("--out", train_out, "Output directory");
  train->add_flag("--no-stats", no_stats, "Skip writing round-<i>.stats files");
  train->add_flag("--prequential", prequential, "Also report test-then-train accuracy");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a model on a stream");
  eval_data.Register(*eval);
  eval->add_option("--model", model_path, "Model file (tree format)")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one experimental axis");
  sweep->add_option("axis", axis, "batch | attrs | bins")
      ->required()
      ->check(CLI::IsMember({"batch", "attrs", "bins"}));
  sweep->add_option("--values", values, "Comma-separated axis values")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep->add_option("--repeats", repeats, "Runs per point (fastest reported)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "Directory for sweep.tsv");
  sweep_data.Register(*sweep);
  sweep_engine.Register(*sweep);

  CLI::App* gen = app.add_subcommand("genstream", "Write a preset stream as CSV + schema");
  gen_data.Register(*gen);
  gen->add_option("--out", gen_out, "Output directory");

  try {
    app.parse(argc, argv);
    if (*train) return RunTrain(train_data, train_engine, train_out, no_stats, prequential);
    if (*eval) return RunEval(eval_data, model_path);
    if (*sweep) return RunSweep(sweep_data, sweep_engine, axis, values, sweep_out, repeats);
    if (*gen) return RunGenstream(gen_data, gen_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  } catch (const pdstree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
