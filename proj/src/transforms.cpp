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

#include "r2mdc/transforms.hpp"

#include <string>

namespace r2mdc {

namespace {

std::vector<Cplx> convert_all(const std::vector<Cplx>& in, const NumericMode& mode) {
  std::vector<Cplx> out;
  out.reserve(in.size());
  for (const Cplx& c : in) out.push_back(c.to_mode(mode));
  return out;
}

void require_length(std::int64_t n) {
  if (!is_power_of_two(n) || n < 2) {
    throw config_error("transform length must be a power of two >= 2, got " +
                       std::to_string(n));
  }
}

}  // namespace

Frame::Frame(std::vector<Cplx> samples)
    : samples_(std::move(samples)),
      mode_(samples_.empty() ? NumericMode::float64() : samples_[0].mode()) {
  require_length(n());
  for (const Cplx& c : samples_) {
    if (!(c.mode() == mode_)) {
      throw usage_error("frame: samples must share one numeric mode");
    }
  }
}

Spectrum::Spectrum(std::vector<Cplx> bins, Ordering order)
    : bins_(std::move(bins)),
      order_(order),
      mode_(bins_.empty() ? NumericMode::float64() : bins_[0].mode()) {
  require_length(n());
  for (const Cplx& c : bins_) {
    if (!(c.mode() == mode_)) {
      throw usage_error("spectrum: bins must share one numeric mode");
    }
  }
}

Spectrum dft_naive(const Frame& frame, const NumericMode& mode) {
  const std::int64_t n = frame.n();
  const std::vector<Cplx> x = convert_all(frame.samples(), mode);
  const TwiddleTable table(n, mode);
  std::vector<Cplx> bins;
  bins.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    Cplx acc = Cplx::zero(mode);
    for (std::int64_t t = 0; t < n; ++t) {
      acc = cplx_add(acc, cplx_mul(x[static_cast<std::size_t>(t)],
                                   table.factor((t * k) % n)));
    }
    bins.push_back(acc);
  }
  return Spectrum(std::move(bins), Ordering::kNatural);
}

std::pair<Cplx, Cplx> butterfly(const Cplx& a, const Cplx& b, const Cplx& w) {
  return {cplx_add(a, b), cplx_mul(cplx_sub(a, b), w)};
}

Spectrum fft_dif(const Frame& frame, const NumericMode& mode, OpCount* count) {
  const std::int64_t n = frame.n();
  const int stages = log2_exact(n);
  std::vector<Cplx> x = convert_all(frame.samples(), mode);
  const TwiddleTable table(n, mode);
  for (int s = 0; s < stages; ++s) {
    const std::int64_t block = n >> s;
    const std::int64_t half = block / 2;
    for (std::int64_t base = 0; base < n; base += block) {
      for (std::int64_t m = 0; m < half; ++m) {
        auto [sum, diff] = butterfly(x[static_cast<std::size_t>(base + m)],
                                     x[static_cast<std::size_t>(base + m + half)],
                                     table[m << s]);
        x[static_cast<std::size_t>(base + m)] = sum;
        x[static_cast<std::size_t>(base + m + half)] = diff;
        if (count != nullptr) {
          count->complex_mults += 1;
          count->complex_addsubs += 2;
        }
      }
    }
  }
  return Spectrum(std::move(x), Ordering::kBitReversed);
}

std::int64_t bit_reverse(std::int64_t value, int bits) {
  std::int64_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | ((value >> i) & 1);
  }
  return r;
}

Spectrum bit_reverse_permute(const Spectrum& spec) {
  const std::int64_t n = spec.n();
  const int bits = log2_exact(n);
  std::vector<Cplx> out(static_cast<std::size_t>(n), Cplx::zero(spec.mode()));
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(bit_reverse(i, bits))] = spec[i];
  }
  const Ordering flipped = spec.order() == Ordering::kNatural
                               ? Ordering::kBitReversed
                               : Ordering::kNatural;
  return Spectrum(std::move(out), flipped);
}

Frame ifft_via_conjugate(const Spectrum& spec, const NumericMode& mode) {
  if (spec.order() != Ordering::kNatural) {
    throw usage_error("ifft: spectrum must be in natural order");
  }
  const int stages = log2_exact(spec.n());
  std::vector<Cplx> conj_bins;
  conj_bins.reserve(static_cast<std::size_t>(spec.n()));
  for (const Cplx& c : spec.bins()) conj_bins.push_back(cplx_conj(c));
  const Spectrum fwd =
      bit_reverse_permute(fft_dif(Frame(std::move(conj_bins)), mode));
  std::vector<Cplx> samples;
  samples.reserve(static_cast<std::size_t>(spec.n()));
  for (const Cplx& c : fwd.bins()) {
    samples.push_back(cplx_scale_pow2(cplx_conj(c), -stages));
  }
  return Frame(std::move(samples));
}

OpCount theoretical_op_counts(std::int64_t n) {
  const int stages = log2_exact(n);
  if (n < 2) {
    throw config_error("op counts: n must be >= 2");
  }
  return OpCount{(n / 2) * stages, n * stages};
}

}  // namespace r2mdc
