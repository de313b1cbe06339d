// Copyright 2026 The dpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPA_STATUS_MACROS_H_
#define DPA_STATUS_MACROS_H_

#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

#define DPA_STATUS_CONCAT_INNER_(x, y) x##y
#define DPA_STATUS_CONCAT_(x, y) DPA_STATUS_CONCAT_INNER_(x, y)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _dpa_status = (expr);   \
    if (!_dpa_status.ok()) return _dpa_status; \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = std::move(statusor).value()

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(DPA_STATUS_CONCAT_(_dpa_statusor_, __LINE__), lhs, rexpr)

namespace dpa {

// Numeric failures carry a stable tag at the front of the message so callers
// (and the CLI) can tell them apart from input validation errors.
inline absl::Status NonIntegrableError(absl::string_view detail) {
  return absl::InternalError(absl::StrCat("NonIntegrable: ", detail));
}
inline absl::Status NotConvergedError(absl::string_view detail) {
  return absl::InternalError(absl::StrCat("NotConverged: ", detail));
}
inline absl::Status InfiniteMassError(absl::string_view detail) {
  return absl::FailedPreconditionError(absl::StrCat("InfiniteMass: ", detail));
}

}  // namespace dpa

#endif  // DPA_STATUS_MACROS_H_
