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

#include "fft_convolution.h"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <complex>
#include <memory>
#include <mutex>

namespace dpa::internal {
namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> FftwAlloc(size_t n) {
  return std::unique_ptr<T[], FftwFree>(
      static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

std::vector<double> DirectConvolve(std::span<const double> a,
                                   std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

std::vector<double> Convolve(std::span<const double> a,
                             std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= 64) return DirectConvolve(a, b);

  const size_t out_size = a.size() + b.size() - 1;
  const size_t n = std::bit_ceil(out_size);
  const size_t spectrum = n / 2 + 1;
  auto buffer_a = FftwAlloc<double>(n);
  auto buffer_b = FftwAlloc<double>(n);
  auto freq_a = FftwAlloc<fftw_complex>(spectrum);
  auto freq_b = FftwAlloc<fftw_complex>(spectrum);

  fftw_plan forward_a, forward_b, backward;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    forward_a = fftw_plan_dft_r2c_1d(static_cast<int>(n), buffer_a.get(),
                                     freq_a.get(), FFTW_ESTIMATE);
    forward_b = fftw_plan_dft_r2c_1d(static_cast<int>(n), buffer_b.get(),
                                     freq_b.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq_a.get(),
                                    buffer_a.get(), FFTW_ESTIMATE);
  }
  std::fill_n(buffer_a.get(), n, 0.0);
  std::fill_n(buffer_b.get(), n, 0.0);
  std::copy(a.begin(), a.end(), buffer_a.get());
  std::copy(b.begin(), b.end(), buffer_b.get());
  fftw_execute(forward_a);
  fftw_execute(forward_b);
  for (size_t k = 0; k < spectrum; ++k) {
    const std::complex<double> x(freq_a[k][0], freq_a[k][1]);
    const std::complex<double> y(freq_b[k][0], freq_b[k][1]);
    const std::complex<double> z = x * y;
    freq_a[k][0] = z.real();
    freq_a[k][1] = z.imag();
  }
  fftw_execute(backward);
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(forward_a);
    fftw_destroy_plan(forward_b);
    fftw_destroy_plan(backward);
  }
  std::vector<double> out(out_size);
  const double scale = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < out_size; ++i) out[i] = buffer_a[i] * scale;
  return out;
}

}  // namespace dpa::internal
