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

#include "pdstree/datagen.h"

#include <algorithm>
#include <functional>

#include "pdstree/error.h"

namespace pdstree {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Distributions are written out by hand so streams are identical across
// standard library implementations.
double UniformReal(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t UniformIndex(std::mt19937_64& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

}  // namespace

void GeneratorConfig::Validate() const {
  if (numeric_attrs < 0 || nominal_attrs < 0 || numeric_attrs + nominal_attrs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "generator needs at least one attribute");
  }
  if (nominal_attrs > 0 && nominal_domain < 2) {
    throw Error(ErrorCode::kInvalidArgument, "nominal domain must have >= 2 values");
  }
  if (classes < 2) throw Error(ErrorCode::kTooFewClasses, "generator needs K >= 2");
  if (concept_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "concept depth must be >= 1");
  }
  if (!(noise >= 0 && noise < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must lie in [0, 1)");
  }
}

Concept GenerateConcept(const GeneratorConfig& config) {
  config.Validate();
  Schema schema;
  for (int i = 0; i < config.numeric_attrs; ++i) {
    schema.attributes.push_back({"x" + std::to_string(i), AttributeKind::kNumeric, {}});
  }
  for (int i = 0; i < config.nominal_attrs; ++i) {
    AttributeSpec spec{"n" + std::to_string(i), AttributeKind::kNominal, {}};
    for (int v = 0; v < config.nominal_domain; ++v) {
      spec.domain.push_back("v" + std::to_string(v));
    }
    schema.attributes.push_back(std::move(spec));
  }
  for (int k = 0; k < config.classes; ++k) {
    schema.classes.push_back("c" + std::to_string(k));
  }

  std::mt19937_64 rng(SplitMix64(config.seed ^ 0x636f6e63657074ULL));
  DecisionTree tree(schema);
  const int num_attrs = schema.num_attributes();
  std::vector<double> lower(num_attrs, 0.0), upper(num_attrs, 1.0);

  std::function<void(LeafId, int)> grow = [&](LeafId leaf, int depth) {
    if (depth >= config.concept_depth) return;
    const int attr = static_cast<int>(UniformIndex(rng, num_attrs));
    if (schema.attributes[attr].is_numeric()) {
      const double lo = lower[attr], hi = upper[attr];
      const double threshold = lo + (hi - lo) * UniformReal(rng);
      const auto [left, right] = tree.ApplySplit(leaf, SplitTest::Threshold(attr, threshold));
      upper[attr] = threshold;
      grow(left, depth + 1);
      upper[attr] = hi;
      lower[attr] = threshold;
      grow(right, depth + 1);
      lower[attr] = lo;
    } else {
      const int domain = schema.attributes[attr].domain_size();
      std::vector<int> subset;
      while (subset.empty() || static_cast<int>(subset.size()) == domain) {
        subset.clear();
        for (int v = 0; v < domain; ++v) {
          if (rng() & 1) subset.push_back(v);
        }
      }
      const auto [left, right] =
          tree.ApplySplit(leaf, SplitTest::Subset(attr, std::move(subset)));
      grow(left, depth + 1);
      grow(right, depth + 1);
    }
  };
  grow(0, 1);

  const std::vector<LeafId> leaves = tree.LeafIds();
  std::vector<int> labels(leaves.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<int>(i % static_cast<size_t>(config.classes));
  }
  for (size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[UniformIndex(rng, i)]);
  }
  for (size_t i = 0; i < leaves.size(); ++i) {
    tree.SetLeafSummary(leaves[i], labels[i], 0);
  }
  return Concept{std::move(schema), std::move(tree)};
}

GeneratedStream::GeneratedStream(const Concept& target,
                                 const GeneratorConfig& config, int64_t count,
                                 uint64_t stream_id)
    : concept_(target.tree),
      config_(config),
      remaining_(count),
      rng_(SplitMix64(SplitMix64(config.seed) ^ (stream_id * 0x9e3779b97f4a7c15ULL + 1))) {
  config_.Validate();
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "negative record count");
}

std::optional<Instance> GeneratedStream::Produce() {
  if (remaining_ <= 0) return std::nullopt;
  --remaining_;
  const Schema& schema = concept_.schema();
  Instance instance;
  instance.values.resize(schema.attributes.size());
  for (size_t a = 0; a < schema.attributes.size(); ++a) {
    const auto& spec = schema.attributes[a];
    instance.values[a] =
        spec.is_numeric()
            ? UniformReal(rng_)
            : static_cast<double>(UniformIndex(rng_, static_cast<uint64_t>(spec.domain_size())));
  }
  instance.label = concept_.Predict(instance);
  if (UniformReal(rng_) < config_.noise) {
    const int other = static_cast<int>(
        UniformIndex(rng_, static_cast<uint64_t>(config_.classes - 1)));
    instance.label = other >= instance.label ? other + 1 : other;
  }
  return instance;
}

std::vector<std::string> PresetNames() { return {"d1", "d2", "d3", "d4", "d5"}; }

Preset GetPreset(std::string_view name) {
  struct Row {
    const char* name;
    int64_t records;
    int attributes;
    int classes;
  };
  static constexpr Row kRows[] = {
      {"d1", 10'000, 5, 2},      {"d2", 500'000, 70, 5},
      {"d3", 1'500'000, 20, 10}, {"d4", 4'000'000, 10, 5},
      {"d5", 4'000'000, 15, 2},
  };
  for (const Row& row : kRows) {
    if (name != row.name) continue;
    Preset preset;
    preset.name = row.name;
    preset.records = row.records;
    preset.config.numeric_attrs = row.attributes;
    preset.config.nominal_attrs = 0;
    preset.config.classes = row.classes;
    preset.config.concept_depth = std::min(row.attributes, 10);
    preset.config.noise = 0.15;
    return preset;
  }
  throw Error(ErrorCode::kUnknownPreset, "unknown preset '" + std::string(name) + "'");
}

}  // namespace pdstree
