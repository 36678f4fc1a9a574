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

#include "pdstree/stream.h"

#include <sstream>

#include "pdstree/error.h"
#include "pdstree/text.h"

namespace pdstree {

std::optional<Instance> StreamSource::Next() {
  if (exhausted_) return std::nullopt;
  std::optional<Instance> instance = Produce();
  if (!instance) {
    exhausted_ = true;
    return std::nullopt;
  }
  ++consumed_;
  return instance;
}

VectorStream::VectorStream(std::vector<Instance> instances)
    : instances_(std::move(instances)) {}

std::optional<Instance> VectorStream::Produce() {
  if (cursor_ >= instances_.size()) {
    instances_.clear();
    instances_.shrink_to_fit();
    return std::nullopt;
  }
  return std::move(instances_[cursor_++]);
}

CsvStream::CsvStream(const std::string& path, Schema schema)
    : file_(path), schema_(std::move(schema)) {
  if (!file_) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
}

std::optional<Instance> CsvStream::Produce() {
  std::string line;
  while (std::getline(file_, line)) {
    ++record_;
    if (Trim(line).empty()) continue;
    return ParseInstance(line, schema_, record_);
  }
  if (file_.bad()) throw Error(ErrorCode::kIo, "read failure", record_);
  return std::nullopt;
}

std::unique_ptr<StreamSource> OpenCsvStream(const std::string& path,
                                            const Schema& schema) {
  return std::make_unique<CsvStream>(path, schema);
}

Schema ReadSchemaFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return ParseSchema(buffer.str());
}

}  // namespace pdstree
