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

#include "r2mdc/pipeline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace r2mdc {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_pipeline_n(std::int64_t n) {
  if (!is_power_of_two(n) || n < 4) {
    throw config_error("pipeline: n must be a power of two >= 4, got " +
                       std::to_string(n));
  }
}

int validated_stage_count(std::int64_t n) {
  require_pipeline_n(n);
  return log2_exact(n);
}

}  // namespace

DelayLine::DelayLine(std::int64_t depth, const NumericMode& mode)
    : depth_(depth),
      ring_(static_cast<std::size_t>(depth),
            LaneSlot{Cplx::zero(mode), false, false, -1, -1}) {}

LaneSlot DelayLine::shift(const LaneSlot& in) {
  LaneSlot out = ring_[head_];
  ring_[head_] = in;
  head_ = (head_ + 1) % ring_.size();
  return out;
}

Commutator::Commutator(std::int64_t period) : period_(period) {
  if (period < 1) throw config_error("commutator: period must be >= 1");
}

std::int64_t StageDelays::total() const {
  std::int64_t sum = input_delay;
  for (const auto& pair : commutator_delays) sum += pair[0] + pair[1];
  return sum;
}

StageDelays stage_delays(std::int64_t n) {
  require_pipeline_n(n);
  StageDelays d{n / 2, {}};
  for (std::int64_t depth = n / 4; depth >= 1; depth /= 2) {
    d.commutator_delays.push_back({depth, depth});
  }
  return d;
}

Pipeline::Pipeline(const PipelineConfig& config)
    : config_(config),
      stages_(validated_stage_count(config.n)),
      half_(config.n / 2),
      twiddles_(config.n, config.mode),
      input_delay_(config.n / 2, config.mode) {
  const StageDelays depths = stage_delays(config_.n);
  comms_.reserve(depths.commutator_delays.size());
  for (const auto& pair : depths.commutator_delays) {
    comms_.push_back(CommStage{DelayLine(pair[0], config_.mode),
                               DelayLine(pair[1], config_.mode),
                               Commutator(pair[0])});
  }
  bf_.reserve(static_cast<std::size_t>(stages_));
  for (int j = 1; j <= stages_; ++j) {
    bf_.push_back(BfStage{-1, config_.n >> j, j - 1,
                          DelayLine(1, config_.mode), DelayLine(1, config_.mode)});
  }
}

std::pair<LaneSlot, LaneSlot> Pipeline::fire_butterfly(BfStage& bf,
                                                       const LaneSlot& a,
                                                       const LaneSlot& b,
                                                       StageProbe* probe) {
  if (bf.fire < 0 || bf.fire >= half_) {
    return {LaneSlot{Cplx::zero(config_.mode), false, false, -1, -1},
            LaneSlot{Cplx::zero(config_.mode), false, false, -1, -1}};
  }
  if (!a.valid || !b.valid || a.frame_id != b.frame_id) {
    throw std::logic_error("pipeline: butterfly scheduled onto unaligned data");
  }
  const std::int64_t m = bf.fire % bf.twiddle_wrap;
  const Cplx w = twiddles_[m << bf.exponent_shift];
  auto [sum, diff] = butterfly(a.value, b.value, w);
  LaneSlot top{sum, true, false, a.frame_id, bf.fire};
  // The start-of-frame marker rides only the bottom path: it is what seeds
  // the downstream commutator phase and fire window.
  LaneSlot bot{diff, true, bf.fire == 0, a.frame_id, bf.fire};
  if (probe != nullptr) {
    probe->fired = true;
    probe->a = a.value;
    probe->b = b.value;
    probe->top = sum;
    probe->bottom = diff;
  }
  ++bf.fire;
  if (bf.fire >= half_) bf.fire = -1;
  return {top, bot};
}

CycleOutput Pipeline::tick(const std::optional<Cplx>& input, TraceProbe* probe) {
  if (probe != nullptr) {
    *probe = TraceProbe{};
    probe->cycle = cycle_;
    probe->stages.assign(static_cast<std::size_t>(stages_), StageProbe{});
  }

  // Input side: enforce one sample per cycle within a frame.
  LaneSlot lane{Cplx::zero(config_.mode), false, false, -1, -1};
  if (input.has_value()) {
    if (config_.mode.is_fixed()) {
      const FixedFormat& fmt = config_.mode.format();
      const double re = input->re();
      const double im = input->im();
      if (!(re >= fmt.min_value() && re <= fmt.max_value() &&
            im >= fmt.min_value() && im <= fmt.max_value())) {
        throw domain_error("pipeline: input sample outside " + fmt.name() +
                           " representable range");
      }
    }
    const bool sof = frame_pos_ == 0;
    if (sof) ++next_frame_id_;
    lane = LaneSlot{input->to_mode(config_.mode), true, sof, next_frame_id_ - 1, -1};
    frame_pos_ = (frame_pos_ + 1) % config_.n;
    ++input_count_;
  } else if (frame_pos_ != 0) {
    throw stream_error("pipeline: input gap in the middle of a frame (sample " +
                       std::to_string(frame_pos_) + " of " +
                       std::to_string(config_.n) + ")");
  }
  if (probe != nullptr) {
    probe->in_valid = lane.valid;
    probe->input = lane.value;
  }

  // Stage 1: the frame's first half waits in the input delay; the butterfly
  // pairs each delayed sample with the live sample N/2 positions later.
  const LaneSlot delayed = input_delay_.shift(lane);
  if (delayed.valid && delayed.sof) bf_[0].fire = 0;
  StageProbe* sp = probe != nullptr ? &probe->stages[0] : nullptr;
  auto [t1, b1] = fire_butterfly(bf_[0], delayed, lane, sp);
  LaneSlot top = bf_[0].reg_top.shift(t1);
  LaneSlot bot = bf_[0].reg_bot.shift(b1);

  // Stages 2..S: pre-switch delay on the top path, post-switch delay on the
  // bottom path; the switch toggles every N/2^j cycles from the marker.
  for (int j = 2; j <= stages_; ++j) {
    CommStage& comm = comms_[static_cast<std::size_t>(j - 2)];
    BfStage& bf = bf_[static_cast<std::size_t>(j - 1)];
    const LaneSlot top_delayed = comm.top_pre.shift(top);
    if (bot.valid && bot.sof) comm.sw.reset();
    const bool bar = comm.sw.bar();
    const LaneSlot sw_top = bar ? top_delayed : bot;
    const LaneSlot sw_bot = bar ? bot : top_delayed;
    comm.sw.advance();
    const LaneSlot a = comm.bot_post.shift(sw_bot);
    if (a.valid && a.sof) bf.fire = 0;
    sp = probe != nullptr ? &probe->stages[static_cast<std::size_t>(j - 1)] : nullptr;
    if (sp != nullptr) {
      sp->has_commutator = true;
      sp->commutator_bar = bar;
    }
    auto [tj, bj] = fire_butterfly(bf, a, sw_top, sp);
    top = bf.reg_top.shift(tj);
    bot = bf.reg_bot.shift(bj);
  }

  ++cycle_;

  CycleOutput out;
  if (top.valid) {
    if (!bot.valid || top.frame_id != bot.frame_id || top.slot != bot.slot) {
      throw std::logic_error("pipeline: output paths out of step");
    }
    out = CycleOutput{true, top.value, bot.value, top.frame_id, top.slot};
  }
  if (probe != nullptr) probe->out = out;
  return out;
}

std::int64_t Pipeline::total_delay_registers() const {
  std::int64_t sum = input_delay_.depth();
  for (const CommStage& c : comms_) sum += c.top_pre.depth() + c.bot_post.depth();
  return sum;
}

std::int64_t Pipeline::commutator_count() const {
  return static_cast<std::int64_t>(comms_.size());
}

std::int64_t Pipeline::pipeline_register_stages() const {
  return static_cast<std::int64_t>(bf_.size());
}

std::int64_t latency(const PipelineConfig& config) {
  require_pipeline_n(config.n);
  return config.n + log2_exact(config.n) - 1;
}

OutputMap::OutputMap(std::int64_t n, std::array<std::vector<std::int64_t>, 2> bins)
    : n_(n), bins_(std::move(bins)) {}

std::int64_t OutputMap::bin(int path, std::int64_t slot) const {
  if (path < 0 || path > 1 || slot < 0 || slot >= n_ / 2) {
    throw usage_error("output map: position out of range");
  }
  return bins_[static_cast<std::size_t>(path)][static_cast<std::size_t>(slot)];
}

OutputMap output_map(std::int64_t n) {
  require_pipeline_n(n);
  const NumericMode f64 = NumericMode::float64();
  const std::int64_t half = n / 2;

  // Stream the n impulse frames delta(t - m) back to back and collect the
  // raw (path, slot) responses per frame.
  Pipeline pipe(PipelineConfig{n, f64});
  std::vector<std::array<std::vector<Cplx>, 2>> responses(
      static_cast<std::size_t>(n),
      {std::vector<Cplx>(static_cast<std::size_t>(half)),
       std::vector<Cplx>(static_cast<std::size_t>(half))});
  const std::int64_t total = n * n + latency(PipelineConfig{n, f64});
  for (std::int64_t c = 0; c < total; ++c) {
    std::optional<Cplx> in;
    if (c < n * n) {
      const std::int64_t frame = c / n;
      const std::int64_t pos = c % n;
      in = Cplx(pos == frame ? 1.0 : 0.0, 0.0);
    }
    const CycleOutput out = pipe.tick(in);
    if (out.valid) {
      auto& resp = responses[static_cast<std::size_t>(out.frame_id)];
      resp[0][static_cast<std::size_t>(out.slot)] = out.path_a;
      resp[1][static_cast<std::size_t>(out.slot)] = out.path_b;
    }
  }

  // The DFT of delta(t - m) is X(k) = W_n^(mk): read the bin index off the
  // m = 1 response, then check the candidate against every impulse.
  const TwiddleTable table(n, f64);
  std::array<std::vector<std::int64_t>, 2> bins{
      std::vector<std::int64_t>(static_cast<std::size_t>(half), -1),
      std::vector<std::int64_t>(static_cast<std::size_t>(half), -1)};
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int path = 0; path < 2; ++path) {
    for (std::int64_t slot = 0; slot < half; ++slot) {
      const Cplx& probe = responses[1][static_cast<std::size_t>(path)]
                                    [static_cast<std::size_t>(slot)];
      const double angle = std::atan2(probe.im(), probe.re());
      std::int64_t k = std::llround(-angle * static_cast<double>(n) / (2.0 * kPi));
      k = ((k % n) + n) % n;
      for (std::int64_t m = 0; m < n; ++m) {
        const Cplx expect = table.factor((m * k) % n);
        const Cplx& got = responses[static_cast<std::size_t>(m)]
                                   [static_cast<std::size_t>(path)]
                                   [static_cast<std::size_t>(slot)];
        if (std::abs(got.re() - expect.re()) > 1e-9 ||
            std::abs(got.im() - expect.im()) > 1e-9) {
          throw std::logic_error("output map: impulse response mismatch at n=" +
                                 std::to_string(n));
        }
      }
      if (seen[static_cast<std::size_t>(k)]) {
        throw std::logic_error("output map: bin assignment is not a bijection");
      }
      seen[static_cast<std::size_t>(k)] = true;
      bins[static_cast<std::size_t>(path)][static_cast<std::size_t>(slot)] = k;
    }
  }
  return OutputMap(n, std::move(bins));
}

std::vector<Spectrum> run_frames(const PipelineConfig& config,
                                 const std::vector<Frame>& frames,
                                 std::vector<TraceProbe>* trace) {
  require_pipeline_n(config.n);
  for (const Frame& f : frames) {
    if (f.n() != config.n) {
      throw usage_error("run_frames: frame length " + std::to_string(f.n()) +
                        " does not match pipeline n=" + std::to_string(config.n));
    }
  }
  if (frames.empty()) return {};

  const OutputMap map = output_map(config.n);
  Pipeline pipe(config);
  const std::int64_t n = config.n;
  const std::int64_t frame_count = static_cast<std::int64_t>(frames.size());
  const std::int64_t total = n * frame_count + latency(config);

  std::vector<std::vector<Cplx>> collected(
      static_cast<std::size_t>(frame_count),
      std::vector<Cplx>(static_cast<std::size_t>(n), Cplx::zero(config.mode)));
  std::vector<std::int64_t> got(static_cast<std::size_t>(frame_count), 0);

  if (trace != nullptr) {
    trace->clear();
    trace->reserve(static_cast<std::size_t>(total));
  }
  for (std::int64_t c = 0; c < total; ++c) {
    std::optional<Cplx> in;
    if (c < n * frame_count) {
      in = frames[static_cast<std::size_t>(c / n)][c % n];
    }
    TraceProbe* probe = nullptr;
    if (trace != nullptr) {
      trace->emplace_back();
      probe = &trace->back();
    }
    const CycleOutput out = pipe.tick(in, probe);
    if (out.valid) {
      auto& bins = collected[static_cast<std::size_t>(out.frame_id)];
      bins[static_cast<std::size_t>(map.bin(0, out.slot))] = out.path_a;
      bins[static_cast<std::size_t>(map.bin(1, out.slot))] = out.path_b;
      ++got[static_cast<std::size_t>(out.frame_id)];
    }
  }
  for (std::int64_t f = 0; f < frame_count; ++f) {
    if (got[static_cast<std::size_t>(f)] != n / 2) {
      throw std::logic_error("run_frames: frame " + std::to_string(f) +
                             " produced an incomplete output window");
    }
  }

  std::vector<Spectrum> spectra;
  spectra.reserve(frames.size());
  for (auto& bins : collected) {
    spectra.emplace_back(std::move(bins), Ordering::kNatural);
  }
  return spectra;
}

}  // namespace r2mdc
