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

#include "pdstree/schema.h"

#include <cmath>
#include <set>

#include "pdstree/error.h"
#include "pdstree/text.h"

namespace pdstree {
namespace {

std::vector<std::string> ParseLabelList(std::string_view list, int line) {
  std::vector<std::string> labels;
  for (std::string_view part : SplitString(list, ',')) {
    part = Trim(part);
    if (part.empty()) throw Error(ErrorCode::kSyntax, "empty label", line);
    labels.emplace_back(part);
  }
  return labels;
}

void CheckUnique(const std::vector<std::string>& names, const char* what,
                 int line) {
  std::set<std::string_view> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kDuplicateName,
                  std::string("duplicate ") + what + " '" + name + "'", line);
    }
  }
}

}  // namespace

void Schema::Validate() const {
  std::vector<std::string> names;
  for (const auto& attr : attributes) {
    names.push_back(attr.name);
    if (attr.is_numeric() && !attr.domain.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "numeric attribute '" + attr.name + "' has a domain");
    }
    if (!attr.is_numeric()) {
      if (attr.domain.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "nominal attribute '" + attr.name + "' has no values");
      }
      CheckUnique(attr.domain, "nominal value", 0);
    }
  }
  CheckUnique(names, "attribute", 0);
  CheckUnique(classes, "class", 0);
  if (classes.size() < 2) {
    throw Error(ErrorCode::kTooFewClasses, "at least two classes required");
  }
}

Schema ParseSchema(std::string_view text) {
  Schema schema;
  bool saw_classes = false;
  int line_number = 0;
  std::set<std::string> attribute_names;
  for (std::string_view raw : SplitString(text, '\n')) {
    ++line_number;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (saw_classes) {
      throw Error(ErrorCode::kSyntax, "content after 'classes' line",
                  line_number);
    }
    std::vector<std::string_view> tokens;
    for (std::string_view tok : SplitString(line, ' ')) {
      if (!Trim(tok).empty()) tokens.push_back(Trim(tok));
    }
    if (tokens[0] == "attr") {
      if (tokens.size() < 3) {
        throw Error(ErrorCode::kSyntax, "expected 'attr <name> <kind>'",
                    line_number);
      }
      AttributeSpec spec;
      spec.name = std::string(tokens[1]);
      if (tokens[2] == "numeric" && tokens.size() == 3) {
        spec.kind = AttributeKind::kNumeric;
      } else if (tokens[2] == "nominal" && tokens.size() == 4) {
        spec.kind = AttributeKind::kNominal;
        spec.domain = ParseLabelList(tokens[3], line_number);
        CheckUnique(spec.domain, "nominal value", line_number);
      } else {
        throw Error(ErrorCode::kSyntax,
                    "expected 'numeric' or 'nominal v1,v2,...'", line_number);
      }
      if (!attribute_names.insert(spec.name).second) {
        throw Error(ErrorCode::kDuplicateName,
                    "duplicate attribute '" + spec.name + "'", line_number);
      }
      schema.attributes.push_back(std::move(spec));
    } else if (tokens[0] == "classes") {
      if (tokens.size() != 2) {
        throw Error(ErrorCode::kSyntax, "expected 'classes c1,c2,...'",
                    line_number);
      }
      schema.classes = ParseLabelList(tokens[1], line_number);
      CheckUnique(schema.classes, "class", line_number);
      if (schema.classes.size() < 2) {
        throw Error(ErrorCode::kTooFewClasses,
                    "at least two classes required", line_number);
      }
      saw_classes = true;
    } else {
      throw Error(ErrorCode::kSyntax,
                  "unknown directive '" + std::string(tokens[0]) + "'",
                  line_number);
    }
  }
  if (!saw_classes) {
    throw Error(ErrorCode::kSyntax, "missing 'classes' line", line_number);
  }
  schema.Validate();
  return schema;
}

std::string FormatSchema(const Schema& schema) {
  std::string out;
  for (const auto& attr : schema.attributes) {
    out += "attr " + attr.name;
    if (attr.is_numeric()) {
      out += " numeric\n";
    } else {
      out += " nominal ";
      for (size_t i = 0; i < attr.domain.size(); ++i) {
        if (i > 0) out += ',';
        out += attr.domain[i];
      }
      out += '\n';
    }
  }
  out += "classes ";
  for (size_t i = 0; i < schema.classes.size(); ++i) {
    if (i > 0) out += ',';
    out += schema.classes[i];
  }
  out += '\n';
  return out;
}

Instance ParseInstance(std::string_view line, const Schema& schema,
                       int line_number) {
  const auto fields = SplitString(Trim(line), ',');
  const size_t expected = schema.attributes.size() + 1;
  if (fields.size() != expected) {
    throw Error(ErrorCode::kFieldCountMismatch,
                "expected " + std::to_string(expected) + " fields, got " +
                    std::to_string(fields.size()),
                line_number);
  }
  Instance instance;
  instance.values.reserve(schema.attributes.size());
  for (size_t i = 0; i < schema.attributes.size(); ++i) {
    const auto& attr = schema.attributes[i];
    const std::string_view field = Trim(fields[i]);
    if (attr.is_numeric()) {
      const auto value = ParseReal(field);
      if (!value) {
        throw Error(ErrorCode::kSyntax,
                    "bad numeric value '" + std::string(field) + "'",
                    line_number);
      }
      if (!std::isfinite(*value)) {
        throw Error(ErrorCode::kNonFiniteValue,
                    "non-finite value for '" + attr.name + "'", line_number);
      }
      instance.values.push_back(*value);
    } else {
      int index = -1;
      for (int v = 0; v < attr.domain_size(); ++v) {
        if (attr.domain[v] == field) {
          index = v;
          break;
        }
      }
      if (index < 0) {
        throw Error(ErrorCode::kUnknownNominalValue, std::string(field),
                    line_number);
      }
      instance.values.push_back(index);
    }
  }
  const std::string_view label = Trim(fields.back());
  instance.label = -1;
  for (int k = 0; k < schema.num_classes(); ++k) {
    if (schema.classes[k] == label) {
      instance.label = k;
      break;
    }
  }
  if (instance.label < 0) {
    throw Error(ErrorCode::kUnknownClassLabel, std::string(label),
                line_number);
  }
  return instance;
}

std::string FormatInstance(const Instance& instance, const Schema& schema) {
  ValidateInstance(instance, schema);
  std::string out;
  for (size_t i = 0; i < schema.attributes.size(); ++i) {
    const auto& attr = schema.attributes[i];
    if (attr.is_numeric()) {
      out += FormatReal(instance.values[i]);
    } else {
      out += attr.domain[static_cast<size_t>(instance.values[i])];
    }
    out += ',';
  }
  out += schema.classes[instance.label];
  return out;
}

void ValidateInstance(const Instance& instance, const Schema& schema) {
  if (instance.values.size() != schema.attributes.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "instance has " + std::to_string(instance.values.size()) +
                    " values, schema has " +
                    std::to_string(schema.attributes.size()) + " attributes");
  }
  if (instance.label < 0 || instance.label >= schema.num_classes()) {
    throw Error(ErrorCode::kSchemaMismatch, "class index out of range");
  }
  for (size_t i = 0; i < schema.attributes.size(); ++i) {
    const double value = instance.values[i];
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kSchemaMismatch, "non-finite attribute value");
    }
    const auto& attr = schema.attributes[i];
    if (!attr.is_numeric() &&
        (value < 0 || value >= attr.domain_size() || value != std::floor(value))) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "nominal index out of domain for '" + attr.name + "'");
    }
  }
}

}  // namespace pdstree
