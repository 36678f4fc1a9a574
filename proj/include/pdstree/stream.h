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

#ifndef PDSTREE_STREAM_H_
#define PDSTREE_STREAM_H_

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdstree/schema.h"

namespace pdstree {

// Forward-only, single-consumer source of instances. Every instance is
// yielded at most once and there is no way to rewind; once Next() has
// returned nullopt it keeps doing so.
class StreamSource {
 public:
  virtual ~StreamSource() = default;

  std::optional<Instance> Next();

  // Number of instances handed out so far.
  int64_t consumed() const { return consumed_; }
  bool exhausted() const { return exhausted_; }

 protected:
  virtual std::optional<Instance> Produce() = 0;

 private:
  int64_t consumed_ = 0;
  bool exhausted_ = false;
};

// Yields a fixed list of instances, moving them out as they are consumed.
class VectorStream : public StreamSource {
 public:
  explicit VectorStream(std::vector<Instance> instances);

 protected:
  std::optional<Instance> Produce() override;

 private:
  std::vector<Instance> instances_;
  size_t cursor_ = 0;
};

// Reads CSV records lazily. Parse errors carry the 1-based record number.
class CsvStream : public StreamSource {
 public:
  CsvStream(const std::string& path, Schema schema);

 protected:
  std::optional<Instance> Produce() override;

 private:
  std::ifstream file_;
  Schema schema_;
  int record_ = 0;
};

std::unique_ptr<StreamSource> OpenCsvStream(const std::string& path,
                                            const Schema& schema);

Schema ReadSchemaFile(const std::string& path);

}  // namespace pdstree

#endif  // PDSTREE_STREAM_H_
