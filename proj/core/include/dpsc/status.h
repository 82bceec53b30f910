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

#ifndef DPSC_STATUS_H_
#define DPSC_STATUS_H_

#include <string_view>

#include "absl/status/status.h"

namespace dpsc {

// Named error conditions. Each maps to a fixed absl::StatusCode and the
// message always begins with the condition name, so callers can match either.
absl::Status MalformedVarintError(std::string_view detail);
absl::Status MalformedPayloadError(std::string_view detail);
absl::Status SchemaViolationError(std::string_view detail);
absl::Status KeyAbsentError(std::string_view detail);
absl::Status ContributionBoundViolationError(std::string_view detail);
absl::Status ValueOutOfBoundsError(std::string_view detail);
absl::Status InsufficientTrialsError(std::string_view detail);

// True if `status` carries the named condition `name` (e.g. "MalformedPayload").
bool HasErrorName(const absl::Status& status, std::string_view name);

}  // namespace dpsc

#define DPSC_RETURN_IF_ERROR(expr)            \
  do {                                        \
    ::absl::Status dpsc_status_ = (expr);     \
    if (!dpsc_status_.ok()) return dpsc_status_; \
  } while (0)

#define DPSC_CONCAT_INNER_(a, b) a##b
#define DPSC_CONCAT_(a, b) DPSC_CONCAT_INNER_(a, b)
#define DPSC_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                \
  if (!tmp.ok()) return tmp.status();               \
  lhs = std::move(*tmp)
#define DPSC_ASSIGN_OR_RETURN(lhs, expr) \
  DPSC_ASSIGN_OR_RETURN_IMPL_(DPSC_CONCAT_(dpsc_statusor_, __LINE__), lhs, expr)

#endif  // DPSC_STATUS_H_
