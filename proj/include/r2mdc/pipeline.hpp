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

/* Cycle-accurate simulator of the N-point radix-2 multipath delay
 * commutator (R2MDC) pipeline, N = 2^S, S >= 2.
 *
 * Dataflow, one sample per cycle in natural order:
 *
 *   input ---[delay N/2]--- BF1.a        stage 1
 *   input ------------------BF1.b
 *
 *   BFj-1.top ---[delay N/2^j]--- switch --- BFj.b    stage j = 2..S
 *   BFj-1.bot ------------------- switch ---[delay N/2^j]--- BFj.a
 *
 * Each butterfly emits (a + b) on its top path and (a - b) * W_N^(m*2^(j-1))
 * on its bottom path, is active for N/2 consecutive cycles per frame, and is
 * followed by one pipeline register stage on both paths. The commutator
 * alternates bar/cross every N/2^j cycles starting in bar.
 *
 * Control is local: a start-of-frame marker rides the bottom-path data, so
 * every commutator phase and butterfly fire window resets when the marker
 * reaches it. This keeps frames correct across arbitrary idle gaps between
 * frames while reproducing the standard schedule for back-to-back input.
 */

#ifndef R2MDC_PIPELINE_HPP_
#define R2MDC_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "r2mdc/transforms.hpp"

namespace r2mdc {

struct PipelineConfig {
  std::int64_t n;
  NumericMode mode = NumericMode::float64();
};

// One complex word flowing on a path, plus the sideband a real datapath
// would carry next to it: a valid flag, the start-of-frame marker, and
// bookkeeping identity used for output collection and tracing.
struct LaneSlot {
  Cplx value;
  bool valid = false;
  bool sof = false;
  std::int64_t frame_id = -1;
  std::int64_t slot = -1;
};

// Fixed-depth shift register of complex words; length never changes after
// construction.
class DelayLine {
 public:
  DelayLine(std::int64_t depth, const NumericMode& mode);

  // Push one slot in, return the slot that entered depth cycles ago.
  LaneSlot shift(const LaneSlot& in);
  std::int64_t depth() const { return depth_; }

 private:
  std::int64_t depth_;
  std::size_t head_ = 0;
  std::vector<LaneSlot> ring_;
};

// 2x2 switch: "bar" passes straight through for `period` cycles, then
// "cross" swaps the pair for `period` cycles.
class Commutator {
 public:
  explicit Commutator(std::int64_t period);

  bool bar() const { return phase_ < period_; }
  void advance() { phase_ = (phase_ + 1) % (2 * period_); }
  void reset() { phase_ = 0; }
  std::int64_t period() const { return period_; }
  std::int64_t phase() const { return phase_; }

 private:
  std::int64_t period_;
  std::int64_t phase_ = 0;
};

// The pair emitted by the last stage on one cycle. Payload fields are
// meaningful only when valid is true.
struct CycleOutput {
  bool valid = false;
  Cplx path_a;  // sum path
  Cplx path_b;  // difference path
  std::int64_t frame_id = -1;
  std::int64_t slot = -1;  // 0 .. n/2-1 within the frame
};

// Reordering-delay depths of an N-point instance: one input delay of N/2,
// then a pair of depth N/2^j for each commutator j = 2..S. Total is
// 3N/2 - 2 complex words.
struct StageDelays {
  std::int64_t input_delay;
  std::vector<std::array<std::int64_t, 2>> commutator_delays;

  std::int64_t total() const;
};

StageDelays stage_delays(std::int64_t n);  // config_error unless n = 2^S >= 4

// Per-cycle view of one stage for trace output.
struct StageProbe {
  bool fired = false;
  Cplx a, b;          // butterfly inputs when fired
  Cplx top, bottom;   // butterfly outputs when fired
  bool has_commutator = false;
  bool commutator_bar = false;
};

struct TraceProbe {
  std::int64_t cycle = 0;
  bool in_valid = false;
  Cplx input;
  std::vector<StageProbe> stages;
  CycleOutput out;
};

class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& config);

  // Advance one clock cycle. `input` must be present on every cycle of a
  // frame (stream_error otherwise); absent input is allowed between frames.
  // Samples are converted to the configured mode; in Fixed mode components
  // outside the representable range raise domain_error. Fills `probe` with
  // this cycle's internal signals when non-null.
  CycleOutput tick(const std::optional<Cplx>& input, TraceProbe* probe = nullptr);

  const PipelineConfig& config() const { return config_; }
  std::int64_t n() const { return config_.n; }
  int stage_count() const { return stages_; }
  std::int64_t cycle() const { return cycle_; }
  std::int64_t input_count() const { return input_count_; }
  const TwiddleTable& twiddles() const { return twiddles_; }

  // Structural walk hooks for the resource audit.
  std::int64_t total_delay_registers() const;
  std::int64_t commutator_count() const;
  std::int64_t pipeline_register_stages() const;

 private:
  struct BfStage {
    std::int64_t fire = -1;          // -1 idle, else index of the next butterfly
    std::int64_t twiddle_wrap;       // n / 2^j
    int exponent_shift;              // j - 1
    DelayLine reg_top, reg_bot;      // pipeline register stage
  };
  struct CommStage {
    DelayLine top_pre;   // top path, before the switch
    DelayLine bot_post;  // bottom path, after the switch
    Commutator sw;
  };

  std::pair<LaneSlot, LaneSlot> fire_butterfly(BfStage& bf, const LaneSlot& a,
                                               const LaneSlot& b, StageProbe* probe);

  PipelineConfig config_;
  int stages_;
  std::int64_t half_;
  TwiddleTable twiddles_;
  DelayLine input_delay_;
  std::vector<CommStage> comms_;   // stages 2..S
  std::vector<BfStage> bf_;        // stages 1..S
  std::int64_t cycle_ = 0;
  std::int64_t input_count_ = 0;
  std::int64_t frame_pos_ = 0;     // samples of the current frame accepted
  std::int64_t next_frame_id_ = 0;
};

// Cycles from a frame's first input sample to its first valid output:
// N/2 to fill the input delay, N/4 + ... + 1 through the commutator
// delays, plus one pipeline register per stage, i.e. N + log2(N) - 1.
std::int64_t latency(const PipelineConfig& config);

// Bijection (path, slot) -> natural bin index for the n/2 valid output
// cycles of a frame. Identified by streaming the n impulse frames through a
// Float64 pipeline and matching every response against the DFT of the
// impulse; an internal error is raised if any response mismatches or the
// assignment is not a bijection.
class OutputMap {
 public:
  OutputMap(std::int64_t n, std::array<std::vector<std::int64_t>, 2> bins);

  std::int64_t n() const { return n_; }
  std::int64_t bin(int path, std::int64_t slot) const;

 private:
  std::int64_t n_;
  std::array<std::vector<std::int64_t>, 2> bins_;
};

OutputMap output_map(std::int64_t n);

// Stream `frames` back to back (one sample per cycle, no gaps), tick for
// exactly n*frames + latency cycles, and return one natural-order spectrum
// per frame. When `trace` is non-null it receives one probe per cycle.
std::vector<Spectrum> run_frames(const PipelineConfig& config,
                                 const std::vector<Frame>& frames,
                                 std::vector<TraceProbe>* trace = nullptr);

}  // namespace r2mdc

#endif  // R2MDC_PIPELINE_HPP_
