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

#include "pdstree/error.h"

namespace pdstree {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "Syntax";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kTooFewClasses: return "TooFewClasses";
    case ErrorCode::kFieldCountMismatch: return "FieldCountMismatch";
    case ErrorCode::kUnknownNominalValue: return "UnknownNominalValue";
    case ErrorCode::kUnknownClassLabel: return "UnknownClassLabel";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBinBudgetMismatch: return "BinBudgetMismatch";
    case ErrorCode::kEmptyHistogram: return "EmptyHistogram";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownLeaf: return "UnknownLeaf";
    case ErrorCode::kNotALeaf: return "NotALeaf";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kInconsistentCounts: return "InconsistentCounts";
    case ErrorCode::kNoCandidates: return "NoCandidates";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kEmptyEvaluationSet: return "EmptyEvaluationSet";
  }
  return "Unknown";
}

namespace {

std::string Decorate(ErrorCode code, const std::string& message, int line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, int line)
    : std::runtime_error(Decorate(code, message, line)),
      code_(code),
      line_(line),
      message_(message) {}

}  // namespace pdstree
