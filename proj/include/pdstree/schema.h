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

#ifndef PDSTREE_SCHEMA_H_
#define PDSTREE_SCHEMA_H_

#include <string>
#include <string_view>
#include <vector>

namespace pdstree {

enum class AttributeKind { kNumeric, kNominal };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  // Category labels, nominal attributes only.
  std::vector<std::string> domain;

  bool is_numeric() const { return kind == AttributeKind::kNumeric; }
  int domain_size() const { return static_cast<int>(domain.size()); }

  bool operator==(const AttributeSpec&) const = default;
};

struct Schema {
  std::vector<AttributeSpec> attributes;
  std::vector<std::string> classes;

  int num_attributes() const { return static_cast<int>(attributes.size()); }
  int num_classes() const { return static_cast<int>(classes.size()); }

  // Throws Error if names are duplicated, K < 2, or a domain is malformed.
  void Validate() const;

  bool operator==(const Schema&) const = default;
};

// One stream record. Nominal values are stored as their domain index.
struct Instance {
  std::vector<double> values;
  int label = 0;

  bool operator==(const Instance&) const = default;
};

// Parses the line-oriented schema file:
//   attr <name> numeric
//   attr <name> nominal v1,v2,...
//   classes c1,c2,...
Schema ParseSchema(std::string_view text);
std::string FormatSchema(const Schema& schema);

// Parses one CSV record, class label last. `line` is only used to decorate
// errors.
Instance ParseInstance(std::string_view line, const Schema& schema,
                       int line_number = 0);
std::string FormatInstance(const Instance& instance, const Schema& schema);

// Throws kSchemaMismatch when the instance does not conform to the schema.
void ValidateInstance(const Instance& instance, const Schema& schema);

}  // namespace pdstree

#endif  // PDSTREE_SCHEMA_H_
