// Copyright 2026 The M2T Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef M2T_ERROR_H_
#define M2T_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace m2t {

// Every failure the toolkit reports is an Error tagged with one of these.
enum class ErrorKind {
  kSyntaxError,
  kUnknownDialogueAct,
  kUnknownAttribute,
  kUnknownRelation,
  kDuplicateAttribute,
  kAmbiguousCommaSplit,
  kEscapingRequired,
  kInvalidValue,
  kNoTemplateForSignature,
  kInsufficientTriples,
  kEndpointUnavailable,
  kUnmappedRelation,
  kEmbeddedNewline,
  kMarkerCollision,
  kInsufficientCorpus,
  kBackendError,
  kAuthMissing,
  kBudgetExceeded,
  kUnparsableTestMr,
  kDegenerateSample,
  kOutOfRangeLabel,
  kStoreMissing,
  kEmptyGroup,
  kValidationError,
  kIoError,
  kConfigError,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace m2t

#endif  // M2T_ERROR_H_
