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

#ifndef DPA_SRC_FFT_CONVOLUTION_H_
#define DPA_SRC_FFT_CONVOLUTION_H_

#include <span>
#include <vector>

namespace dpa::internal {

// Linear convolution of a and b (length a.size() + b.size() - 1). Uses a
// zero-padded real FFT for large inputs and the direct sum otherwise.
std::vector<double> Convolve(std::span<const double> a,
                             std::span<const double> b);

}  // namespace dpa::internal

#endif  // DPA_SRC_FFT_CONVOLUTION_H_
