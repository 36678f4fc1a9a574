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

#ifndef PDSTREE_ERROR_H_
#define PDSTREE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdstree {

enum class ErrorCode {
  kSyntax,
  kDuplicateName,
  kTooFewClasses,
  kFieldCountMismatch,
  kUnknownNominalValue,
  kUnknownClassLabel,
  kNonFiniteValue,
  kIo,
  kOutOfRange,
  kBinBudgetMismatch,
  kEmptyHistogram,
  kInvalidArgument,
  kUnknownLeaf,
  kNotALeaf,
  kSchemaMismatch,
  kInconsistentCounts,
  kNoCandidates,
  kUnknownPreset,
  kEmptyEvaluationSet,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. `line` is
// the 1-based line/record number for parse errors, 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  // The message without the code and line decoration.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  int line_;
  std::string message_;
};

}  // namespace pdstree

#endif  // PDSTREE_ERROR_H_
