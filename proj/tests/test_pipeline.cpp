/*
 * Copyright (C) 2026 The r2mdc Authors
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

#include <cmath>
#include <optional>
#include <random>

#include <doctest.h>

#include "r2mdc/pipeline.hpp"

using namespace r2mdc;

namespace {

const NumericMode kF64 = NumericMode::float64();

Frame random_frame(std::int64_t n, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  std::vector<Cplx> samples;
  for (std::int64_t i = 0; i < n; ++i) samples.emplace_back(dist(rng), dist(rng));
  return Frame(std::move(samples));
}

double worst_error(const Spectrum& got, const Spectrum& want) {
  double w = 0.0;
  for (std::int64_t k = 0; k < got.n(); ++k) {
    w = std::max(w, std::abs(got[k].re() - want[k].re()));
    w = std::max(w, std::abs(got[k].im() - want[k].im()));
  }
  return w;
}

// Feed frames with a fixed idle gap between them and collect natural-order
// spectra by hand; exercises the tick API directly.
std::vector<Spectrum> stream_with_gaps(std::int64_t n,
                                       const std::vector<Frame>& frames,
                                       std::int64_t gap) {
  const OutputMap map = output_map(n);
  Pipeline pipe(PipelineConfig{n, kF64});
  std::vector<std::optional<Cplx>> inputs;
  for (const Frame& f : frames) {
    for (std::int64_t i = 0; i < n; ++i) inputs.push_back(f[i]);
    for (std::int64_t g = 0; g < gap; ++g) inputs.push_back(std::nullopt);
  }
  const std::int64_t total =
      static_cast<std::int64_t>(inputs.size()) + latency(PipelineConfig{n, kF64});
  std::vector<std::vector<Cplx>> bins(frames.size(),
                                      std::vector<Cplx>(static_cast<std::size_t>(n)));
  for (std::int64_t c = 0; c < total; ++c) {
    const auto in = c < static_cast<std::int64_t>(inputs.size())
                        ? inputs[static_cast<std::size_t>(c)]
                        : std::nullopt;
    const CycleOutput out = pipe.tick(in);
    if (out.valid) {
      bins[static_cast<std::size_t>(out.frame_id)]
          [static_cast<std::size_t>(map.bin(0, out.slot))] = out.path_a;
      bins[static_cast<std::size_t>(out.frame_id)]
          [static_cast<std::size_t>(map.bin(1, out.slot))] = out.path_b;
    }
  }
  std::vector<Spectrum> spectra;
  for (auto& b : bins) spectra.emplace_back(std::move(b), Ordering::kNatural);
  return spectra;
}

}  // namespace

TEST_CASE("stage delays") {
  const StageDelays d8 = stage_delays(8);
  CHECK(d8.input_delay == 4);
  REQUIRE(d8.commutator_delays.size() == 2);
  CHECK(d8.commutator_delays[0][0] == 2);
  CHECK(d8.commutator_delays[0][1] == 2);
  CHECK(d8.commutator_delays[1][0] == 1);
  CHECK(d8.commutator_delays[1][1] == 1);
  CHECK(d8.total() == 10);  // 4+2+2+1+1

  const StageDelays d4 = stage_delays(4);
  CHECK(d4.input_delay == 2);
  REQUIRE(d4.commutator_delays.size() == 1);
  CHECK(d4.total() == 4);

  const StageDelays d16 = stage_delays(16);
  CHECK(d16.total() == 22);

  for (std::int64_t n = 4; n <= 1024; n *= 2) {
    CHECK(stage_delays(n).total() == 3 * n / 2 - 2);
  }

  CHECK_THROWS_AS(stage_delays(2), config_error);
  CHECK_THROWS_AS(stage_delays(12), config_error);
}

TEST_CASE("pipeline construction") {
  const Pipeline p8(PipelineConfig{8, kF64});
  CHECK(p8.total_delay_registers() == 10);
  CHECK(p8.commutator_count() == 2);
  CHECK(p8.stage_count() == 3);
  CHECK(p8.cycle() == 0);
  CHECK(p8.input_count() == 0);

  const Pipeline p4(PipelineConfig{4, kF64});
  CHECK(p4.total_delay_registers() == 4);
  CHECK(p4.commutator_count() == 1);
  CHECK(p4.stage_count() == 2);

  CHECK_THROWS_AS(Pipeline(PipelineConfig{2, kF64}), config_error);
  CHECK_THROWS_AS(Pipeline(PipelineConfig{9, kF64}), config_error);
}

TEST_CASE("commutator state machine") {
  Commutator sw(2);
  CHECK(sw.bar());
  sw.advance();
  CHECK(sw.bar());
  sw.advance();
  CHECK_FALSE(sw.bar());  // cross for the next `period` cycles
  sw.advance();
  CHECK_FALSE(sw.bar());
  sw.advance();
  CHECK(sw.bar());  // wrapped
  sw.advance();
  sw.reset();
  CHECK(sw.phase() == 0);
  CHECK(sw.bar());
}

TEST_CASE("latency: closed form equals first valid output") {
  for (std::int64_t n : {4, 8, 16, 32, 128}) {
    const PipelineConfig cfg{n, kF64};
    const std::int64_t expect = latency(cfg);
    Pipeline pipe(cfg);
    std::int64_t first_valid = -1;
    for (std::int64_t c = 0; c < 3 * n; ++c) {
      std::optional<Cplx> in;
      if (c < n) in = Cplx(c == 0 ? 1.0 : 0.0, 0.0);
      if (pipe.tick(in).valid && first_valid < 0) first_valid = c;
    }
    CHECK(first_valid == expect);
    CHECK(expect >= n / 2);                       // stage-1 fill
    CHECK(expect <= 3 * n / 2 + log2_exact(n));   // total delay + registers
  }
  CHECK(latency(PipelineConfig{8, kF64}) == 10);  // golden
  CHECK(latency(PipelineConfig{4, kF64}) == 5);   // golden
  // timing is independent of the numeric mode
  CHECK(latency(PipelineConfig{8, NumericMode::fixed(q15_format())}) == 10);
}

TEST_CASE("latency is data independent in fixed mode") {
  const PipelineConfig cfg{8, NumericMode::fixed(q15_format())};
  Pipeline pipe(cfg);
  std::int64_t first_valid = -1;
  for (std::int64_t c = 0; c < 24; ++c) {
    std::optional<Cplx> in;
    if (c < 8) in = Cplx(0.25, -0.25);
    if (pipe.tick(in).valid && first_valid < 0) first_valid = c;
  }
  CHECK(first_valid == latency(cfg));
}

TEST_CASE("output map golden table for n=8") {
  const OutputMap map = output_map(8);
  const std::int64_t path_a[4] = {3, 1, 2, 0};
  const std::int64_t path_b[4] = {7, 5, 6, 4};
  for (std::int64_t slot = 0; slot < 4; ++slot) {
    CHECK(map.bin(0, slot) == path_a[slot]);
    CHECK(map.bin(1, slot) == path_b[slot]);
  }
  CHECK_THROWS_AS(map.bin(2, 0), usage_error);
  CHECK_THROWS_AS(map.bin(0, 4), usage_error);
}

TEST_CASE("output map is a bijection for every supported size") {
  for (std::int64_t n : {4, 8, 16, 32, 64}) {
    const OutputMap map = output_map(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int path = 0; path < 2; ++path) {
      for (std::int64_t slot = 0; slot < n / 2; ++slot) {
        const std::int64_t k = map.bin(path, slot);
        REQUIRE(k >= 0);
        REQUIRE(k < n);
        CHECK_FALSE(seen[static_cast<std::size_t>(k)]);
        seen[static_cast<std::size_t>(k)] = true;
      }
    }
  }
}

TEST_CASE("constant and impulse frames through the pipeline") {
  // constant 2+2j (the RTL stimulus): DC-only spectrum
  const Frame dc(std::vector<Cplx>(8, Cplx(2, 2)));
  const auto spectra = run_frames(PipelineConfig{8, kF64}, {dc});
  REQUIRE(spectra.size() == 1);
  CHECK(std::abs(spectra[0][0].re() - 16.0) <= 1e-9);
  CHECK(std::abs(spectra[0][0].im() - 16.0) <= 1e-9);
  for (std::int64_t k = 1; k < 8; ++k) {
    CHECK(std::abs(spectra[0][k].re()) <= 1e-9);
    CHECK(std::abs(spectra[0][k].im()) <= 1e-9);
  }
  // the DC bin leaves on path A, last valid slot (output_map(8) bin 0)
  const OutputMap map = output_map(8);
  CHECK(map.bin(0, 3) == 0);

  std::vector<Cplx> imp(8, Cplx(0, 0));
  imp[0] = Cplx(1, 0);
  const auto si = run_frames(PipelineConfig{8, kF64}, {Frame(std::move(imp))});
  for (std::int64_t k = 0; k < 8; ++k) {
    CHECK(std::abs(si[0][k].re() - 1.0) <= 1e-9);
    CHECK(std::abs(si[0][k].im()) <= 1e-9);
  }
}

TEST_CASE("pipeline matches the oracle on random frames") {
  std::mt19937_64 rng(77);
  for (std::int64_t n : {4, 8, 16, 64, 256}) {
    std::vector<Frame> frames;
    for (int i = 0; i < 5; ++i) frames.push_back(random_frame(n, rng));
    const auto got = run_frames(PipelineConfig{n, kF64}, frames);
    REQUIRE(got.size() == frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
      CHECK(worst_error(got[f], dft_naive(frames[f], kF64)) <= 1e-9);
    }
  }
}

TEST_CASE("hardware and software schedules agree to machine precision") {
  std::mt19937_64 rng(78);
  for (std::int64_t n : {8, 32, 128}) {
    const Frame x = random_frame(n, rng);
    const auto pipe = run_frames(PipelineConfig{n, kF64}, {x});
    const Spectrum sw = bit_reverse_permute(fft_dif(x, kF64));
    CHECK(worst_error(pipe[0], sw) <= 1e-12);
  }
}

TEST_CASE("steady-state throughput over ten back-to-back frames") {
  const std::int64_t n = 8;
  std::mt19937_64 rng(99);
  std::vector<Frame> frames;
  for (int i = 0; i < 10; ++i) frames.push_back(random_frame(n, rng));

  Pipeline pipe(PipelineConfig{n, kF64});
  const OutputMap map = output_map(n);
  const std::int64_t total = n * 10 + latency(PipelineConfig{n, kF64});
  std::int64_t valid_cycles = 0;
  std::vector<std::vector<Cplx>> bins(10, std::vector<Cplx>(8));
  for (std::int64_t c = 0; c < total; ++c) {
    std::optional<Cplx> in;
    if (c < n * 10) in = frames[static_cast<std::size_t>(c / n)][c % n];  // one sample accepted every cycle
    const CycleOutput out = pipe.tick(in);
    if (out.valid) {
      ++valid_cycles;
      bins[static_cast<std::size_t>(out.frame_id)]
          [static_cast<std::size_t>(map.bin(0, out.slot))] = out.path_a;
      bins[static_cast<std::size_t>(out.frame_id)]
          [static_cast<std::size_t>(map.bin(1, out.slot))] = out.path_b;
    }
  }
  CHECK(pipe.input_count() == 80);
  CHECK(pipe.cycle() == total);
  CHECK(valid_cycles == 10 * n / 2);  // two bins per valid cycle
  for (int f = 0; f < 10; ++f) {
    const Spectrum got(std::move(bins[static_cast<std::size_t>(f)]), Ordering::kNatural);
    CHECK(worst_error(got, dft_naive(frames[static_cast<std::size_t>(f)], kF64)) <= 1e-9);
  }
}

TEST_CASE("idle gaps between frames do not corrupt either neighbor") {
  std::mt19937_64 rng(55);
  for (std::int64_t gap : {1, 2, 3, 7}) {
    std::vector<Frame> frames;
    for (int i = 0; i < 4; ++i) frames.push_back(random_frame(8, rng));
    const auto got = stream_with_gaps(8, frames, gap);
    for (std::size_t f = 0; f < frames.size(); ++f) {
      CAPTURE(gap);
      CHECK(worst_error(got[f], dft_naive(frames[f], kF64)) <= 1e-9);
    }
  }
}

TEST_CASE("determinism: identical inputs give identical spectra") {
  std::mt19937_64 rng(31);
  const Frame x = random_frame(8, rng);
  const auto a = run_frames(PipelineConfig{8, kF64}, {x, x});
  REQUIRE(a.size() == 2);
  for (std::int64_t k = 0; k < 8; ++k) {
    CHECK(exact_equal(a[0][k], a[1][k]));
  }
  const auto b = run_frames(PipelineConfig{8, kF64}, {x, x});
  for (std::int64_t k = 0; k < 8; ++k) {
    CHECK(exact_equal(a[0][k], b[0][k]));
  }
}

TEST_CASE("stream discipline and input validation") {
  Pipeline pipe(PipelineConfig{8, kF64});
  for (int c = 0; c < 3; ++c) pipe.tick(Cplx(1, 0));
  CHECK_THROWS_AS(pipe.tick(std::nullopt), stream_error);  // gap mid-frame

  Pipeline fixed_pipe(PipelineConfig{8, NumericMode::fixed(q15_format())});
  CHECK_THROWS_AS(fixed_pipe.tick(Cplx(1.5, 0.0)), domain_error);
  CHECK_NOTHROW(fixed_pipe.tick(Cplx(0.5, -0.5)));

  // run_frames rejects mixed lengths
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(run_frames(PipelineConfig{8, kF64},
                             {random_frame(8, rng), random_frame(16, rng)}),
                  usage_error);
}

TEST_CASE("fixed-point exactness on a representable constant frame") {
  // q4.12: 0.25 is exact and the DC bin 2+2j is inside the range.
  const FixedFormat fmt(16, 12);
  const NumericMode mode = NumericMode::fixed(fmt);
  const Frame dc(std::vector<Cplx>(8, Cplx(0.25, 0.25)));
  const auto spectra = run_frames(PipelineConfig{8, mode}, {dc});
  REQUIRE(spectra.size() == 1);
  CHECK(spectra[0][0].re_raw() == 2 * 4096);  // exactly 2 + 2j
  CHECK(spectra[0][0].im_raw() == 2 * 4096);
  for (std::int64_t k = 1; k < 8; ++k) {
    CHECK(spectra[0][k].re_raw() == 0);  // every difference path is exactly 0
    CHECK(spectra[0][k].im_raw() == 0);
  }
}

TEST_CASE("q1.15 pipeline error stays inside the documented bound") {
  std::mt19937_64 rng(12);
  const NumericMode mode = NumericMode::fixed(q15_format());
  for (std::int64_t n : {8, 16, 64}) {
    // keep |X(k)| < 1 so the no-saturation premise of the bound holds
    const double amp = 0.4 / static_cast<double>(n);
    std::vector<Frame> frames;
    for (int i = 0; i < 4; ++i) frames.push_back(random_frame(n, rng, amp));
    const auto got = run_frames(PipelineConfig{n, mode}, frames);
    const double bound = fixed_error_bound(n, mode.format());
    for (std::size_t f = 0; f < frames.size(); ++f) {
      CHECK(worst_error(got[f], dft_naive(frames[f], kF64)) <= bound);
    }
  }
}
