// Copyright 2026 The jpatomo Authors
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

#include <benchmark/benchmark.h>

#include <vector>

#include "jpatomo/detection_chain.h"
#include "jpatomo/device_model.h"
#include "jpatomo/gaussian_state.h"
#include "jpatomo/histogram.h"
#include "jpatomo/moments.h"
#include "jpatomo/rng.h"

namespace {

using namespace jpatomo;

void BM_SampleTms(benchmark::State& state) {
  const GaussianState s = tms_theory_covariance(1.78, 0.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(s, n, 7, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleTms)->Arg(1 << 16)->Arg(1 << 20);

void BM_RecordBlock(benchmark::State& state) {
  const RecordSource source(tms_theory_covariance(1.78, 0.0), DetectionConfig{}, 7, true);
  std::vector<MeasurementRecord> out(kBlockSize);
  std::size_t block = 0;
  for (auto _ : state) {
    source.fill_block(block++, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * kBlockSize);
}
BENCHMARK(BM_RecordBlock);

std::vector<MeasurementRecord> records(std::size_t blocks) {
  const RecordSource source(tms_theory_covariance(1.78, 0.0), DetectionConfig{}, 7, true);
  std::vector<MeasurementRecord> out(blocks * kBlockSize);
  for (std::size_t b = 0; b < blocks; ++b) {
    source.fill_block(b, std::span<MeasurementRecord>(out).subspan(b * kBlockSize, kBlockSize));
  }
  return out;
}

void BM_HistogramFill(benchmark::State& state) {
  const auto recs = records(8);
  const Binning binning = Binning::from_prefix(std::span<const MeasurementRecord>(recs).first(10'000));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_histograms(recs, binning));
  state.SetItemsProcessed(state.iterations() * recs.size());
}
BENCHMARK(BM_HistogramFill);

void BM_StreamingMoments(benchmark::State& state) {
  const auto recs = records(8);
  for (auto _ : state) {
    StreamingMoments m;
    m.add(recs);
    benchmark::DoNotOptimize(m.moments());
  }
  state.SetItemsProcessed(state.iterations() * recs.size());
}
BENCHMARK(BM_StreamingMoments);

void BM_FilteredState(benchmark::State& state) {
  const GainProfile profile = GainProfile::from_peak_gain(100.0, DeviceParams{}, 0.0);
  const FilterSpec f = design_filter(angular(5e6), FilterShape::kBoxcarNotch, angular(5.47e6),
                                     static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(output_two_mode_state(profile, f));
}
BENCHMARK(BM_FilteredState)->Arg(1001)->Arg(4001);

}  // namespace
BENCHMARK_MAIN();
