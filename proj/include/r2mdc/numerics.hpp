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

/* Complex arithmetic in double precision and in a parameterized signed
 * fixed-point mode, plus twiddle-factor generation. Fixed-point values are
 * backed by raw scaled integers (value = raw * 2^-frac_bits), so arithmetic
 * is exact for any word width up to 64 bits. Rounding is half-to-even and
 * overflow saturates; a complex product rounds each of its four real
 * sub-products to the format before the two add/subtract steps, mirroring
 * the usual hardware complex-multiplier structure.
 */

#ifndef R2MDC_NUMERICS_HPP_
#define R2MDC_NUMERICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "r2mdc/errors.hpp"

namespace r2mdc {

bool is_power_of_two(std::int64_t n);
int log2_exact(std::int64_t n);  // config_error unless power of two

enum class Rounding { kHalfToEven };
enum class Overflow { kSaturate };

// Signed fixed-point word layout: total_bits includes the sign bit.
// Representable range is [-2^(total_bits-1-frac_bits),
//                          2^(total_bits-1-frac_bits) - 2^-frac_bits].
class FixedFormat {
 public:
  FixedFormat(int total_bits, int frac_bits);  // config_error on bad widths

  int total_bits() const { return total_bits_; }
  int frac_bits() const { return frac_bits_; }
  Rounding rounding() const { return Rounding::kHalfToEven; }
  Overflow overflow() const { return Overflow::kSaturate; }

  double step() const;       // 2^-frac_bits
  double max_value() const;  // largest representable value
  double min_value() const;  // smallest (most negative) representable value
  std::int64_t max_raw() const;
  std::int64_t min_raw() const;

  // "q<m>.<f>" with m integer bits (sign included) and f fractional bits,
  // so q1.15 is the usual 16-bit word.
  std::string name() const;

  friend bool operator==(const FixedFormat& a, const FixedFormat& b) {
    return a.total_bits_ == b.total_bits_ && a.frac_bits_ == b.frac_bits_;
  }

 private:
  int total_bits_;
  int frac_bits_;
};

// The default datapath width used when none is requested.
FixedFormat q15_format();

class NumericMode {
 public:
  static NumericMode float64();
  static NumericMode fixed(const FixedFormat& fmt);

  bool is_fixed() const { return fixed_; }
  const FixedFormat& format() const;  // usage_error in Float64 mode
  std::string name() const;           // "f64" or "q<m>.<f>"

  friend bool operator==(const NumericMode& a, const NumericMode& b) {
    if (a.fixed_ != b.fixed_) return false;
    return !a.fixed_ || a.fmt_ == b.fmt_;
  }

 private:
  NumericMode(bool fixed, const FixedFormat& fmt) : fixed_(fixed), fmt_(fmt) {}
  bool fixed_;
  FixedFormat fmt_;
};

// Round v to the nearest representable value of fmt (ties to even multiple
// of the step); out-of-range saturates. domain_error on non-finite input.
std::int64_t quantize_raw(double v, const FixedFormat& fmt);
double quantize(double v, const FixedFormat& fmt);

// One complex sample in a numeric mode. In Fixed mode the components are
// held as raw scaled integers; re()/im() give their exact real values
// (to double precision when the word is wider than the mantissa).
class Cplx {
 public:
  Cplx() : Cplx(0.0, 0.0) {}
  Cplx(double re, double im);  // Float64 mode
  static Cplx fixed(double re, double im, const FixedFormat& fmt);
  static Cplx from_raw(std::int64_t re_raw, std::int64_t im_raw,
                       const FixedFormat& fmt);
  static Cplx zero(const NumericMode& mode);

  double re() const;
  double im() const;
  std::int64_t re_raw() const;  // usage_error in Float64 mode
  std::int64_t im_raw() const;
  const NumericMode& mode() const { return mode_; }

  // Re-express in another mode; Float64 -> Fixed quantizes (and saturates),
  // Fixed -> Float64 widens, Fixed -> Fixed requantizes through double.
  Cplx to_mode(const NumericMode& target) const;

 private:
  Cplx(const NumericMode& m, double re, double im, std::int64_t rr,
       std::int64_t ri)
      : mode_(m), re_(re), im_(im), raw_re_(rr), raw_im_(ri) {}
  NumericMode mode_;
  double re_, im_;
  std::int64_t raw_re_, raw_im_;
};

// Same mode and bit-identical payload (raw words in Fixed, doubles in
// Float64). Intended for tests and determinism checks.
bool exact_equal(const Cplx& a, const Cplx& b);

// Operands must share one numeric mode (usage_error otherwise).
Cplx cplx_add(const Cplx& a, const Cplx& b);
Cplx cplx_sub(const Cplx& a, const Cplx& b);
Cplx cplx_mul(const Cplx& a, const Cplx& b);
Cplx cplx_neg(const Cplx& a);
Cplx cplx_conj(const Cplx& a);
// Multiply by 2^e (e may be negative); exact shift in Fixed mode, rounding
// half-to-even on the bits shifted out.
Cplx cplx_scale_pow2(const Cplx& a, int e);

// W_N^k = e^(-j*2*pi*k/N). Requires n a power of two, 0 <= k < n.
Cplx twiddle(std::int64_t n, std::int64_t k, const NumericMode& mode);

// Immutable table of W_N^k for k = 0 .. N/2-1; the second half of the
// circle is the negation of the first, so it is never stored.
class TwiddleTable {
 public:
  TwiddleTable(std::int64_t n, const NumericMode& mode);

  std::int64_t n() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(factors_.size()); }
  const Cplx& operator[](std::int64_t k) const { return factors_[static_cast<std::size_t>(k)]; }
  // W_N^k for any 0 <= k < n, negating table entries for k >= n/2.
  Cplx factor(std::int64_t k) const;
  const NumericMode& mode() const { return mode_; }

 private:
  std::int64_t n_;
  NumericMode mode_;
  std::vector<Cplx> factors_;
};

TwiddleTable build_twiddle_table(std::int64_t n, const NumericMode& mode);

// Documented worst-case per-component absolute error of an N-point
// fixed-point transform against the Float64 oracle, assuming no
// saturation occurred. Derived from the per-stage recurrence
//   e' <= 2*sqrt(2)*e + (sqrt(2)*R + 1)*q,  e0 = q/2,
// where q is the quantization step and R the format's range bound:
// a butterfly doubles the input error, the rotation inflates it by at
// most sqrt(2) per component, and the four rounded sub-products plus the
// quantized twiddle add at most (sqrt(2)*R + 1)*q.
double fixed_error_bound(std::int64_t n, const FixedFormat& fmt);

}  // namespace r2mdc

#endif  // R2MDC_NUMERICS_HPP_
