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

#ifndef PDSTREE_DATAGEN_H_
#define PDSTREE_DATAGEN_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pdstree/schema.h"
#include "pdstree/stream.h"
#include "pdstree/tree.h"

namespace pdstree {

struct GeneratorConfig {
  int numeric_attrs = 5;
  int nominal_attrs = 0;
  int nominal_domain = 4;
  int classes = 2;
  int concept_depth = 5;
  double noise = 0.15;
  uint64_t seed = 1;

  void Validate() const;
};

struct Concept {
  Schema schema;
  DecisionTree tree;
};

// Random full binary concept tree of depth `concept_depth`. Numeric tests
// draw a threshold inside the attribute's still-feasible interval on the
// path; nominal tests draw a random proper subset. Leaf labels are assigned
// round-robin over the classes and then shuffled.
Concept GenerateConcept(const GeneratorConfig& config);

// Uniform attribute values labeled by the concept, with each label replaced
// by a uniformly chosen other class with probability `noise`. Streams with
// different `stream_id` are independent draws from the same concept.
class GeneratedStream : public StreamSource {
 public:
  GeneratedStream(const Concept& target, const GeneratorConfig& config,
                  int64_t count, uint64_t stream_id = 0);

 protected:
  std::optional<Instance> Produce() override;

 private:
  DecisionTree concept_;
  GeneratorConfig config_;
  int64_t remaining_;
  std::mt19937_64 rng_;
};

struct Preset {
  std::string name;
  GeneratorConfig config;
  int64_t records = 0;
};

// d1..d5: record/attribute/class counts of the five synthetic benchmark
// streams; all-numeric attributes, concept depth min(attributes, 10).
Preset GetPreset(std::string_view name);
std::vector<std::string> PresetNames();

// Stream id used for holdout evaluation streams.
inline constexpr uint64_t kHoldoutStreamId = 1;

}  // namespace pdstree

#endif  // PDSTREE_DATAGEN_H_
