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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "pdstree/bench.h"
#include "pdstree/datagen.h"
#include "pdstree/engine.h"
#include "pdstree/histogram.h"
#include "pdstree/split.h"

namespace pdstree {
namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, a, b, c, d);
  return buffer;
}

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Instance> Drain(StreamSource& stream) {
  std::vector<Instance> out;
  while (auto inst = stream.Next()) out.push_back(std::move(*inst));
  return out;
}

// Single-pass audit shared by every training run in the suite.
struct PassAudit {
  int runs = 0;
  int violations = 0;
  std::string first_violation;

  void Check(const std::string& what, int64_t expected, int64_t consumed,
             bool drained_after) {
    ++runs;
    if (consumed != expected || !drained_after) {
      if (violations++ == 0) {
        first_violation = what + ": expected " + std::to_string(expected) +
                          " consumed " + std::to_string(consumed) +
                          (drained_after ? "" : " (stream yielded again)");
      }
    }
  }
};

PassAudit audit;

// Trains on `stream` and records whether it was read exactly once.
TrainResult AuditedTrain(const std::string& what, StreamSource& stream, int64_t expected,
                         const Schema& schema, const EngineConfig& config) {
  TrainResult result = TrainStream(stream, schema, config);
  const bool drained = !stream.Next().has_value();
  audit.Check(what, expected, stream.consumed(), drained && result.consumed == expected);
  return result;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = SecondsSince(start);
  if (!outcome.pass) ++failures;
  std::printf("%s %2d %s | %s | %.1fs\n", outcome.pass ? "PASS" : "FAIL", id, title.c_str(),
              outcome.detail.c_str(), elapsed);
  std::fflush(stdout);
}

// Serial and parallel runs give the same tree and byte-identical stats.
Outcome SerialParallelIdentity() {
  const auto start = Clock::now();
  Preset d1 = GetPreset("d1");
  d1.config.seed = 7;
  const Concept target = GenerateConcept(d1.config);
  const fs::path root = fs::temp_directory_path() /
                        ("pdstree_acceptance_" + std::to_string(::getpid()));
  std::optional<TrainResult> reference;
  size_t rounds = 0, mismatched_files = 0;
  bool trees_equal = true;
  for (int p : {1, 2, 4, 8}) {
    const fs::path dir = root / ("p" + std::to_string(p));
    fs::remove_all(dir);
    GeneratedStream stream(target, d1.config, d1.records);
    EngineConfig config;
    config.mappers = p;
    config.records_per_round = 100;
    config.bins = 10;
    config.stats_dir = dir.string();
    TrainResult result = AuditedTrain("identity P=" + std::to_string(p), stream, d1.records,
                                      target.schema, config);
    if (!reference) {
      reference = std::move(result);
      rounds = reference->rounds.size();
      continue;
    }
    trees_equal = trees_equal && TreesEqual(reference->tree, result.tree) &&
                  reference->split_log == result.split_log;
    for (size_t i = 0; i < rounds; ++i) {
      const std::string name = "round-" + std::to_string(i) + ".stats";
      if (ReadAll(root / "p1" / name) != ReadAll(dir / name)) ++mismatched_files;
    }
  }
  fs::remove_all(root);
  const double elapsed = SecondsSince(start);
  const bool pass = trees_equal && mismatched_files == 0 && rounds == 100 &&
                    reference->split_log.size() > 0 && elapsed < 30;
  return {pass, "P in {1,2,4,8}; " + std::to_string(rounds) + " rounds, " +
                    std::to_string(reference->split_log.size()) + " splits, trees " +
                    (trees_equal ? "equal" : "DIFFER") + ", " +
                    std::to_string(mismatched_files) + " stats files differ, " +
                    Format("%.1fs (limit 30s)", elapsed)};
}

// Batch-size sweep over one nominal stream; shared by two criteria.
struct BatchSweep {
  std::vector<int64_t> batches = {1, 20, 200, 800};
  std::vector<std::string> accuracy;
  std::vector<int64_t> evaluations;
  std::vector<double> seconds;
  double elapsed = 0;
};

BatchSweep RunBatchSweep() {
  const auto start = Clock::now();
  GeneratorConfig gen;
  gen.numeric_attrs = 0;
  gen.nominal_attrs = 6;
  gen.nominal_domain = 4;
  gen.classes = 3;
  gen.concept_depth = 4;
  gen.noise = 0.1;
  gen.seed = 1;
  const int64_t records = 100000;
  const DataSource data = DataSource::FromGenerator(gen, records);
  std::vector<Instance> training;
  {
    auto stream = data.OpenTraining();
    training = Drain(*stream);
  }
  BatchSweep sweep;
  for (int64_t g : sweep.batches) {
    EngineConfig config;
    config.records_per_round = g;
    double best = 1e300;
    std::optional<TrainResult> first;
    for (int repeat = 0; repeat < 3; ++repeat) {
      VectorStream stream(training);
      const auto t0 = Clock::now();
      TrainResult result = AuditedTrain("batch G=" + std::to_string(g), stream, records,
                                        data.schema, config);
      best = std::min(best, SecondsSince(t0));
      if (!first) first = std::move(result);
    }
    auto holdout = data.OpenHoldout(10000);
    sweep.accuracy.push_back(Evaluate(first->tree, *holdout).Percent());
    sweep.evaluations.push_back(first->evaluations);
    sweep.seconds.push_back(best);
  }
  sweep.elapsed = SecondsSince(start);
  return sweep;
}

Outcome AccuracyInvariance(const BatchSweep& sweep) {
  // G in {20, 200, 800}: indices 1..3.
  const bool same = sweep.accuracy[1] == sweep.accuracy[2] &&
                    sweep.accuracy[2] == sweep.accuracy[3];
  return {same && sweep.elapsed < 120,
          "accuracy G=20/200/800: " + sweep.accuracy[1] + "/" + sweep.accuracy[2] + "/" +
              sweep.accuracy[3] + "%, sweep " + Format("%.1fs (limit 120s)", sweep.elapsed)};
}

Outcome BatchTimeTrend(const BatchSweep& sweep) {
  bool decreasing = true;
  std::string evals;
  for (size_t i = 0; i < sweep.evaluations.size(); ++i) {
    if (i > 0 && sweep.evaluations[i] >= sweep.evaluations[i - 1]) decreasing = false;
    evals += (i ? "/" : "") + std::to_string(sweep.evaluations[i]);
  }
  const double ratio = sweep.seconds.front() / sweep.seconds.back();
  return {decreasing && ratio >= 2.0,
          "evaluations G=1/20/200/800: " + evals + Format("; time G=1 %.3fs vs G=800 %.3fs, ratio %.1f (need >= 2)",
                                                          sweep.seconds.front(), sweep.seconds.back(), ratio)};
}

SweepOptions PresetSweep(SweepAxis axis, std::vector<int64_t> values, int64_t records) {
  Preset d1 = GetPreset("d1");
  d1.config.seed = 1;
  SweepOptions options;
  options.axis = axis;
  options.values = std::move(values);
  options.data = DataSource::FromGenerator(d1.config, records);
  options.eval_records = 5000;
  options.repeats = 3;
  return options;
}

void AuditSweep(const std::string& what, const std::vector<SweepPoint>& points,
                int64_t records) {
  for (const auto& p : points) {
    audit.Check(what + "=" + std::to_string(p.value), records, p.consumed, true);
  }
}

Outcome BinTrend() {
  const auto start = Clock::now();
  const int64_t records = 200000;
  const auto points = RunSweep(PresetSweep(SweepAxis::kBins, {2, 10}, records));
  AuditSweep("bins", points, records);
  const double elapsed = SecondsSince(start);
  return {points[1].elapsed_seconds > points[0].elapsed_seconds && elapsed < 180,
          Format("elapsed B=2 %.3fs, B=10 %.3fs; %.1fs (limit 180s)", points[0].elapsed_seconds,
                 points[1].elapsed_seconds, elapsed)};
}

Outcome AttributeTrend() {
  const int64_t records = 100000;
  const auto points = RunSweep(PresetSweep(SweepAxis::kAttrs, {2, 5, 10}, records));
  AuditSweep("attrs", points, records);
  const bool increasing = points[0].elapsed_seconds < points[1].elapsed_seconds &&
                          points[1].elapsed_seconds < points[2].elapsed_seconds;
  return {increasing, Format("elapsed attrs=2/5/10: %.3f/%.3f/%.3fs", points[0].elapsed_seconds,
                             points[1].elapsed_seconds, points[2].elapsed_seconds)};
}

Outcome SplitOracle() {
  const auto start = Clock::now();
  const Schema schema = ParseSchema(
      "attr x0 numeric\nattr x1 numeric\nattr n0 nominal a,b,c,d\nclasses p,q,r\n");
  const int bins = 10;
  int matches = 0, cases = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed + 500);
    const int n = 20 + static_cast<int>(rng() % 181);
    const int distinct = 2 + static_cast<int>(rng() % (bins - 1));
    std::vector<Instance> data;
    LeafStats stats = LeafStats::Empty(schema, bins);
    for (int i = 0; i < n; ++i) {
      const double x0 = static_cast<double>(rng() % distinct) * 0.25;
      const double x1 = static_cast<double>(rng() % distinct);
      const int n0 = static_cast<int>(rng() % 4);
      int label = static_cast<int>(rng() % 3);
      if (rng() % 2 == 0) label = x1 < distinct / 2 ? (n0 % 2) : 2;
      data.push_back({{x0, x1, static_cast<double>(n0)}, label});
      stats.Add(data.back());
    }
    const auto oracle = testing::BruteForceBestSplit(data, schema);
    const auto found = TryFindBestTwo(stats, SplitConfig());
    ++cases;
    if (oracle.has_value() == found.has_value() &&
        (!oracle || (found->best.attribute == oracle->attribute &&
                     found->best.test == oracle->test))) {
      ++matches;
    }
  }
  const double elapsed = SecondsSince(start);
  return {matches == cases && elapsed < 10,
          std::to_string(matches) + "/" + std::to_string(cases) + " datasets match" +
              Format(", %.2fs (limit 10s)", elapsed)};
}

Outcome HistogramProperties() {
  const auto start = Clock::now();
  const int n = 1000, budget = 32;
  const double bound = static_cast<double>(n) / budget;
  int budget_violations = 0, mass_violations = 0, error_violations = 0;
  double worst = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    for (int shape = 0; shape < 2; ++shape) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unit(0, 1);
      std::normal_distribution<double> normal(0, 1);
      StreamingHistogram h(budget);
      std::vector<double> sample;
      for (int i = 0; i < n; ++i) {
        const double x = shape == 0 ? unit(rng) : normal(rng);
        sample.push_back(x);
        h.Update(x);
        if (h.size() > budget) ++budget_violations;
      }
      double mass = 0;
      for (const Bin& b : h.bins()) mass += b.count;
      if (mass != n || h.total() != n) ++mass_violations;
      double seed_worst = 0;
      for (double b : sample) {
        seed_worst = std::max(seed_worst,
                              std::abs(h.Sum(b) - testing::ExactCountAtMost(sample, b)));
      }
      worst = std::max(worst, seed_worst);
      if (seed_worst > bound) ++error_violations;
    }
  }
  const double elapsed = SecondsSince(start);
  return {budget_violations == 0 && mass_violations == 0 && error_violations == 0 &&
              elapsed < 10,
          Format("100 seeds x {uniform, normal}, n=1000, B=32: worst |sum-exact| %.2f vs n/B %.2f; ",
                 worst, bound) +
              std::to_string(budget_violations) + " budget, " + std::to_string(mass_violations) +
              " mass, " + std::to_string(error_violations) + " error violations" +
              Format("; %.2fs (limit 10s)", elapsed)};
}

Outcome BoundBehaviour() {
  int monotone_violations = 0;
  const std::vector<double> deltas = {0.5, 0.1, 0.05, 1e-2, 1e-4, 1e-7, 1e-12};
  for (int64_t n = 1; n <= 10000000; n = n * 3 + 1) {
    for (size_t i = 0; i < deltas.size(); ++i) {
      if (!(HoeffdingBound(n, deltas[i]) > HoeffdingBound(n * 3 + 1, deltas[i]))) {
        ++monotone_violations;
      }
      if (i > 0 && !(HoeffdingBound(n, deltas[i]) > HoeffdingBound(n, deltas[i - 1]))) {
        ++monotone_violations;
      }
    }
  }
  const Schema schema = ParseSchema("attr a numeric\nattr b numeric\nclasses p,q\n");
  SplitConfig config;
  config.delta = 1e-7;
  config.tau = 0;
  int splits = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed + 77);
    std::uniform_real_distribution<double> unit(0, 1);
    LeafStats stats = LeafStats::Empty(schema, 10);
    for (int i = 0; i < 10000; ++i) {
      stats.Add({{unit(rng), unit(rng)}, static_cast<int>(rng() % 2)});
    }
    const BestTwo two = FindBestTwo(stats, config);
    if (DecideSplit(two.best, two.second_gain, stats.n, config).should_split()) ++splits;
  }
  return {monotone_violations == 0 && splits <= 5,
          std::to_string(monotone_violations) + " monotonicity violations; noise splits in " +
              std::to_string(splits) + "/100 runs (limit 5)"};
}

Outcome ConceptRecovery() {
  GeneratorConfig gen;
  gen.numeric_attrs = 3;
  gen.classes = 2;
  gen.concept_depth = 3;
  gen.noise = 0;
  gen.seed = 1;
  const int64_t records = 500000;
  const DataSource data = DataSource::FromGenerator(gen, records);
  EngineConfig config;
  config.records_per_round = 1000;
  config.mappers = 4;
  config.split.delta = 1e-4;
  auto stream = data.OpenTraining();
  const TrainResult result = AuditedTrain("recovery", *stream, records, data.schema, config);
  auto holdout = data.OpenHoldout(10000);
  const PrequentialAccuracy accuracy = Evaluate(result.tree, *holdout);
  return {accuracy.value() >= 0.99,
          "holdout accuracy " + accuracy.Percent() + "% (need >= 99.00), " +
              std::to_string(result.tree.Metrics().leaf_count) + " leaves"};
}

Outcome SinglePassAudit() {
  return {audit.violations == 0 && audit.runs > 0,
          std::to_string(audit.runs) + " training runs audited, " +
              std::to_string(audit.violations) + " violations" +
              (audit.first_violation.empty() ? "" : " (" + audit.first_violation + ")")};
}

}  // namespace
}  // namespace pdstree

int main() {
  using namespace pdstree;
  Report(1, "serial/parallel tree identity", SerialParallelIdentity);
  const BatchSweep batch = RunBatchSweep();
  Report(2, "accuracy invariance across batch size", [&] { return AccuracyInvariance(batch); });
  Report(3, "batch size time trend", [&] { return BatchTimeTrend(batch); });
  Report(4, "bin count time trend", BinTrend);
  Report(5, "attribute count time trend", AttributeTrend);
  Report(6, "split oracle equivalence", SplitOracle);
  Report(7, "histogram properties", HistogramProperties);
  Report(8, "split bound behaviour", BoundBehaviour);
  Report(10, "concept recovery", ConceptRecovery);
  // Runs last so that it covers every training run above.
  Report(9, "single-pass audit", SinglePassAudit);
  std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
