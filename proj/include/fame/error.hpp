// Copyright 2026 The fame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fame {

enum class ErrorCode {
  MissingSidecar,
  DanglingPartReference,
  MalformedContactKind,
  MalformedFile,
  UnknownPartId,
  EmptySelection,
  DegenerateBBox,
  AlignmentImpossible,
  NoContacts,
  NoAnchorLabels,
  UnknownLabel,
  MissingProvenance,
  NoApplicableModel,
  EmptyGeneration,
  DatasetInvalid,
  UnknownSession,
  WrongStatus,
  UnknownShapeId,
  UnknownGeneration,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries a machine-readable code and a
/// detail string naming the offending file/field/id where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string detail = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fame
