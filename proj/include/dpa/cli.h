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

#ifndef DPA_CLI_H_
#define DPA_CLI_H_

#include <ostream>

namespace dpa {

inline constexpr char kVersion[] = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumericFailure = 1;
inline constexpr int kExitValidationError = 2;

// Runs the dpa command line. Results go to `out` (or to --out), the one-line
// diagnostic of a failed run to `err`. Returns 0 on success, 2 on invalid
// input and 1 on numeric failure; in the latter case any partial result is
// still emitted and flagged.
int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace dpa

#endif  // DPA_CLI_H_
