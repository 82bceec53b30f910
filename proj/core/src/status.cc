/*
 * Copyright 2026 Google LLC
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dpsc/status.h"

#include <string>
#include <string_view>

#include "absl/strings/string_view.h"

namespace dpsc {
namespace {

std::string Format(std::string_view name, std::string_view detail) {
  std::string out(name);
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

absl::Status MalformedVarintError(std::string_view detail) {
  return absl::DataLossError(Format("MalformedVarint", detail));
}

absl::Status MalformedPayloadError(std::string_view detail) {
  return absl::DataLossError(Format("MalformedPayload", detail));
}

absl::Status SchemaViolationError(std::string_view detail) {
  return absl::InvalidArgumentError(Format("SchemaViolation", detail));
}

absl::Status KeyAbsentError(std::string_view detail) {
  return absl::NotFoundError(Format("KeyAbsent", detail));
}

absl::Status ContributionBoundViolationError(std::string_view detail) {
  return absl::OutOfRangeError(Format("ContributionBoundViolation", detail));
}

absl::Status ValueOutOfBoundsError(std::string_view detail) {
  return absl::OutOfRangeError(Format("ValueOutOfBounds", detail));
}

absl::Status InsufficientTrialsError(std::string_view detail) {
  return absl::FailedPreconditionError(Format("InsufficientTrials", detail));
}

bool HasErrorName(const absl::Status& status, std::string_view name) {
  if (status.ok()) return false;
  const absl::string_view message = status.message();
  return message.size() > name.size() &&
         message.substr(0, name.size()) ==
             absl::string_view(name.data(), name.size()) &&
         message[name.size()] == ':';
}

}  // namespace dpsc
