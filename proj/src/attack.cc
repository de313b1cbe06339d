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

#include "dpa/attack.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "dpa/rng.h"

namespace dpa {
namespace {

// Work is split into a fixed number of chunks, each with its own substream,
// so the draws do not depend on how many threads run them.
constexpr int kChunks = 64;
constexpr int64_t kPilotSamples = 65536;

// Substream layout: chunk c of hypothesis h in {0, 1} uses index
// 2 * c + h; the pilot sample uses indices past the counted ones.
constexpr uint64_t kPilotStreamOffset = 1 << 20;

double AlternativeValue(const MechanismSpec& spec) {
  return spec.family() == MechanismFamily::kRandomizedResponse
             ? 1.0
             : spec.sensitivity();
}

double Release(const MechanismSpec& spec, double query, Rng& rng) {
  const double draw = spec.DrawNoise(rng);
  if (spec.family() == MechanismFamily::kRandomizedResponse) {
    return query != 0 ? 1 - draw : draw;
  }
  return query + draw;
}

// Sorted log-likelihood ratios of n releases under query value `query`.
std::vector<double> SampleLlrs(const MechanismSpec& spec, double query,
                               int64_t n, uint64_t seed, uint64_t stream_base,
                               int hypothesis) {
  std::vector<double> llrs(n);
  const int threads = std::min(MaxThreads(), kChunks);
  auto run_chunk = [&](int chunk) {
    const int64_t begin = n * chunk / kChunks;
    const int64_t end = n * (chunk + 1) / kChunks;
    Rng rng(SubstreamSeed(seed, stream_base + 2 * chunk + hypothesis));
    for (int64_t i = begin; i < end; ++i) {
      llrs[i] = spec.LogLikelihoodRatio(Release(spec, query, rng));
    }
  };
  if (threads <= 1) {
    for (int c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int c = t; c < kChunks; c += threads) run_chunk(c);
      });
    }
    for (std::thread& worker : pool) worker.join();
  }
  std::sort(llrs.begin(), llrs.end());
  return llrs;
}

// Distinct empirical quantiles of the pooled pilot LLRs.
std::vector<double> Thresholds(const MechanismSpec& spec, uint64_t seed,
                               int64_t pilot) {
  std::vector<double> pooled =
      SampleLlrs(spec, 0.0, pilot, seed, kPilotStreamOffset, 0);
  const std::vector<double> alt = SampleLlrs(
      spec, AlternativeValue(spec), pilot, seed, kPilotStreamOffset, 1);
  pooled.insert(pooled.end(), alt.begin(), alt.end());
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> thresholds;
  const int64_t m = static_cast<int64_t>(pooled.size());
  for (int level = 0; level <= kAttackQuantileLevels; ++level) {
    const int64_t index = std::min(m - 1, m * level / kAttackQuantileLevels);
    thresholds.push_back(pooled[index]);
  }
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  return thresholds;
}

std::vector<SweepPoint> Sweep(const MechanismSpec& spec, int64_t n,
                              uint64_t seed) {
  const std::vector<double> thresholds =
      Thresholds(spec, seed, std::min(n, kPilotSamples));
  const std::vector<double> null_llrs = SampleLlrs(spec, 0.0, n, seed, 0, 0);
  const std::vector<double> alt_llrs =
      SampleLlrs(spec, AlternativeValue(spec), n, seed, 0, 1);
  const double count = static_cast<double>(n);
  std::vector<SweepPoint> sweep;
  sweep.reserve(2 * thresholds.size());
  for (double threshold : thresholds) {
    for (bool strict : {true, false}) {
      // Rejecting the null (query 0) when the LLR is small.
      auto rejected = [&](const std::vector<double>& llrs) {
        const auto it =
            strict ? std::lower_bound(llrs.begin(), llrs.end(), threshold)
                   : std::upper_bound(llrs.begin(), llrs.end(), threshold);
        return static_cast<double>(it - llrs.begin());
      };
      SweepPoint point;
      point.threshold = threshold;
      point.strict = strict;
      point.p_fa = rejected(null_llrs) / count;
      point.p_md = 1.0 - rejected(alt_llrs) / count;
      sweep.push_back(point);
    }
  }
  // Two estimates per point share the error budget.
  const double per_estimate =
      (1 - kAttackConfidence) / (2.0 * static_cast<double>(sweep.size()));
  const double radius = std::sqrt(std::log(2 / per_estimate) / (2 * count));
  for (SweepPoint& point : sweep) point.radius = radius;
  return sweep;
}

absl::Status CheckSamples(int64_t num_samples) {
  if (num_samples < kMinAttackSamples) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "num_samples must be at least %d, got %d", kMinAttackSamples,
        num_samples));
  }
  return absl::OkStatus();
}

}  // namespace

int MaxThreads() {
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("DPA_THREADS");
  int cap = 0;
  if (env != nullptr && absl::SimpleAtoi(env, &cap) && cap > 0) {
    return std::min<int>(cap, static_cast<int>(hardware));
  }
  return static_cast<int>(hardware);
}

absl::StatusOr<AttackReport> RunAttack(const MechanismSpec& spec,
                                       const TradeoffCurve& claimed,
                                       int64_t num_samples, uint64_t rng_seed) {
  if (absl::Status status = CheckSamples(num_samples); !status.ok()) {
    return status;
  }
  AttackReport report;
  report.num_samples = num_samples;
  report.seed = rng_seed;
  report.sweep = Sweep(spec, num_samples, rng_seed);
  // With probability 1 - alpha the true point (a, b) satisfies
  // a <= p_fa + r and b <= p_md + r; a valid claim f then gives
  // p_md + r >= b >= f(a) >= f(p_fa + r).
  for (const SweepPoint& point : report.sweep) {
    const double bound = claimed.Evaluate(std::min(1.0, point.p_fa + point.radius));
    if (point.p_md + point.radius < bound) {
      report.violations.push_back({point.p_fa, point.p_md, bound});
    }
  }
  return report;
}

absl::StatusOr<TradeoffCurve> EmpiricalTradeoff(const MechanismSpec& spec,
                                                int64_t num_samples,
                                                uint64_t rng_seed) {
  if (absl::Status status = CheckSamples(num_samples); !status.ok()) {
    return status;
  }
  std::vector<CurvePoint> points;
  for (const SweepPoint& point : Sweep(spec, num_samples, rng_seed)) {
    points.push_back({point.p_fa, point.p_md});
  }
  return EmpiricalTradeoffFromPoints(std::move(points));
}

}  // namespace dpa
