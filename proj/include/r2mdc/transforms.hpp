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

/* Software reference transforms: the naive O(N^2) DFT used as the oracle
 * everywhere in this project, an iterative radix-2 decimation-in-frequency
 * FFT whose stage structure matches the streaming pipeline, bit-reversal
 * reordering, and instrumented operation counters.
 *
 * All functions are pure; callers own the OpCount accumulator.
 */

#ifndef R2MDC_TRANSFORMS_HPP_
#define R2MDC_TRANSFORMS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "r2mdc/numerics.hpp"

namespace r2mdc {

enum class Ordering { kNatural, kBitReversed };

// Length-N input sequence x(n), natural order, uniform numeric mode.
class Frame {
 public:
  explicit Frame(std::vector<Cplx> samples);  // config_error unless N = 2^k >= 2

  std::int64_t n() const { return static_cast<std::int64_t>(samples_.size()); }
  const std::vector<Cplx>& samples() const { return samples_; }
  const Cplx& operator[](std::int64_t i) const { return samples_[static_cast<std::size_t>(i)]; }
  const NumericMode& mode() const { return mode_; }

 private:
  std::vector<Cplx> samples_;
  NumericMode mode_;
};

// Output bins X(k) with an explicit ordering tag. fft_dif produces
// kBitReversed output and never reorders silently; callers reorder with
// bit_reverse_permute.
class Spectrum {
 public:
  Spectrum(std::vector<Cplx> bins, Ordering order);

  std::int64_t n() const { return static_cast<std::int64_t>(bins_.size()); }
  const std::vector<Cplx>& bins() const { return bins_; }
  const Cplx& operator[](std::int64_t i) const { return bins_[static_cast<std::size_t>(i)]; }
  Ordering order() const { return order_; }
  const NumericMode& mode() const { return mode_; }

 private:
  std::vector<Cplx> bins_;
  Ordering order_;
  NumericMode mode_;
};

struct OpCount {
  std::int64_t complex_mults = 0;
  std::int64_t complex_addsubs = 0;

  friend bool operator==(const OpCount&, const OpCount&) = default;
};

// X(k) = sum_n x(n) * W_N^(nk), natural order. In Float64 mode this is the
// project-wide oracle.
Spectrum dft_naive(const Frame& frame, const NumericMode& mode);

// The radix-2 kernel: (a, b, w) -> (a + b, (a - b) * w).
std::pair<Cplx, Cplx> butterfly(const Cplx& a, const Cplx& b, const Cplx& w);

// Iterative DIF FFT, natural-order input, bit-reversed output. Stage s
// pairs elements at distance N/2^(s+1) and scales the difference path by
// W_N^(m*2^s). Multiplications by W^0 are performed and counted, so the
// accumulated counts match the (N/2)*log2(N) / N*log2(N) closed forms
// exactly. `count` may be null.
Spectrum fft_dif(const Frame& frame, const NumericMode& mode,
                 OpCount* count = nullptr);

// Reverse the low `bits` bits of value.
std::int64_t bit_reverse(std::int64_t value, int bits);

// Move bin i to position rev(i) and toggle the ordering tag; an involution.
Spectrum bit_reverse_permute(const Spectrum& spec);

// conj(fft(conj(X)))/N. Input must be in natural order (usage_error).
Frame ifft_via_conjugate(const Spectrum& spec, const NumericMode& mode);

// (N/2)*log2(N) complex multiplications, N*log2(N) complex add/subtracts.
OpCount theoretical_op_counts(std::int64_t n);

}  // namespace r2mdc

#endif  // R2MDC_TRANSFORMS_HPP_
