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

#include "r2mdc/numerics.hpp"

#include <cmath>
#include <limits>

namespace r2mdc {

namespace {

using int128 = __int128;

constexpr double kPi = 3.14159265358979323846264338327950288;

// Arithmetic right shift with round-half-to-even on the dropped bits.
std::int64_t shift_round_even(int128 x, int f) {
  if (f == 0) {
    return static_cast<std::int64_t>(x);
  }
  int128 q = x >> f;
  int128 r = x - (q << f);  // 0 <= r < 2^f
  const int128 half = int128{1} << (f - 1);
  if (r > half || (r == half && (q & 1))) {
    ++q;
  }
  return static_cast<std::int64_t>(q);
}

std::int64_t saturate(int128 x, const FixedFormat& fmt) {
  if (x > fmt.max_raw()) return fmt.max_raw();
  if (x < fmt.min_raw()) return fmt.min_raw();
  return static_cast<std::int64_t>(x);
}

std::int64_t sat_add_raw(std::int64_t a, std::int64_t b, const FixedFormat& fmt) {
  return saturate(int128{a} + int128{b}, fmt);
}

std::int64_t sat_sub_raw(std::int64_t a, std::int64_t b, const FixedFormat& fmt) {
  return saturate(int128{a} - int128{b}, fmt);
}

// One real multiplier: full-precision product, then one rounding to the
// format. The caller adds/subtracts the already-rounded products.
std::int64_t mul_round_raw(std::int64_t a, std::int64_t b, const FixedFormat& fmt) {
  const int128 p = int128{a} * int128{b};
  // The rounded quotient fits well inside int128; saturation happens after.
  const int128 rounded = shift_round_even(p, fmt.frac_bits());
  return saturate(rounded, fmt);
}

double raw_to_double(std::int64_t raw, const FixedFormat& fmt) {
  return std::ldexp(static_cast<double>(raw), -fmt.frac_bits());
}

void require_same_mode(const Cplx& a, const Cplx& b, const char* op) {
  if (!(a.mode() == b.mode())) {
    throw usage_error(std::string(op) + ": operands in different numeric modes");
  }
}

}  // namespace

bool is_power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_exact(std::int64_t n) {
  if (!is_power_of_two(n)) {
    throw config_error("length must be a power of two, got " + std::to_string(n));
  }
  int s = 0;
  while ((std::int64_t{1} << s) < n) ++s;
  return s;
}

FixedFormat::FixedFormat(int total_bits, int frac_bits)
    : total_bits_(total_bits), frac_bits_(frac_bits) {
  if (total_bits < 2 || total_bits > 64) {
    throw config_error("fixed format: total_bits must be in [2,64], got " +
                       std::to_string(total_bits));
  }
  if (frac_bits < 0 || frac_bits > total_bits - 1) {
    throw config_error("fixed format: frac_bits must be in [0,total_bits-1], got " +
                       std::to_string(frac_bits));
  }
}

double FixedFormat::step() const { return std::ldexp(1.0, -frac_bits_); }

double FixedFormat::max_value() const {
  return raw_to_double(max_raw(), *this);
}

double FixedFormat::min_value() const {
  return -std::ldexp(1.0, total_bits_ - 1 - frac_bits_);
}

std::int64_t FixedFormat::max_raw() const {
  if (total_bits_ == 64) return std::numeric_limits<std::int64_t>::max();
  return (std::int64_t{1} << (total_bits_ - 1)) - 1;
}

std::int64_t FixedFormat::min_raw() const {
  if (total_bits_ == 64) return std::numeric_limits<std::int64_t>::min();
  return -(std::int64_t{1} << (total_bits_ - 1));
}

std::string FixedFormat::name() const {
  return "q" + std::to_string(total_bits_ - frac_bits_) + "." +
         std::to_string(frac_bits_);
}

FixedFormat q15_format() { return FixedFormat(16, 15); }

NumericMode NumericMode::float64() { return NumericMode(false, q15_format()); }

NumericMode NumericMode::fixed(const FixedFormat& fmt) {
  return NumericMode(true, fmt);
}

const FixedFormat& NumericMode::format() const {
  if (!fixed_) throw usage_error("numeric mode: Float64 mode has no fixed format");
  return fmt_;
}

std::string NumericMode::name() const { return fixed_ ? fmt_.name() : "f64"; }

std::int64_t quantize_raw(double v, const FixedFormat& fmt) {
  if (!std::isfinite(v)) {
    throw domain_error("quantize: non-finite input");
  }
  // Scaling by a power of two is exact; overflow to +-inf saturates below.
  const double scaled = std::ldexp(v, fmt.frac_bits());
  const double bound = std::ldexp(1.0, fmt.total_bits() - 1);  // 2^(t-1), exact
  if (scaled >= bound) return fmt.max_raw();
  if (scaled < -bound) return fmt.min_raw();
  // llrint under the default FE_TONEAREST mode rounds ties to even.
  const std::int64_t raw = std::llrint(scaled);
  if (raw > fmt.max_raw()) return fmt.max_raw();
  if (raw < fmt.min_raw()) return fmt.min_raw();
  return raw;
}

double quantize(double v, const FixedFormat& fmt) {
  return raw_to_double(quantize_raw(v, fmt), fmt);
}

Cplx::Cplx(double re, double im)
    : mode_(NumericMode::float64()), re_(re), im_(im), raw_re_(0), raw_im_(0) {}

Cplx Cplx::fixed(double re, double im, const FixedFormat& fmt) {
  return from_raw(quantize_raw(re, fmt), quantize_raw(im, fmt), fmt);
}

Cplx Cplx::from_raw(std::int64_t re_raw, std::int64_t im_raw,
                    const FixedFormat& fmt) {
  return Cplx(NumericMode::fixed(fmt), 0.0, 0.0, re_raw, im_raw);
}

Cplx Cplx::zero(const NumericMode& mode) {
  if (mode.is_fixed()) return from_raw(0, 0, mode.format());
  return Cplx(0.0, 0.0);
}

double Cplx::re() const {
  return mode_.is_fixed() ? raw_to_double(raw_re_, mode_.format()) : re_;
}

double Cplx::im() const {
  return mode_.is_fixed() ? raw_to_double(raw_im_, mode_.format()) : im_;
}

std::int64_t Cplx::re_raw() const {
  if (!mode_.is_fixed()) throw usage_error("re_raw: value is not fixed-point");
  return raw_re_;
}

std::int64_t Cplx::im_raw() const {
  if (!mode_.is_fixed()) throw usage_error("im_raw: value is not fixed-point");
  return raw_im_;
}

Cplx Cplx::to_mode(const NumericMode& target) const {
  if (mode_ == target) return *this;
  if (target.is_fixed()) return fixed(re(), im(), target.format());
  return Cplx(re(), im());
}

bool exact_equal(const Cplx& a, const Cplx& b) {
  if (!(a.mode() == b.mode())) return false;
  if (a.mode().is_fixed()) {
    return a.re_raw() == b.re_raw() && a.im_raw() == b.im_raw();
  }
  return a.re() == b.re() && a.im() == b.im();
}

Cplx cplx_add(const Cplx& a, const Cplx& b) {
  require_same_mode(a, b, "cplx_add");
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    return Cplx::from_raw(sat_add_raw(a.re_raw(), b.re_raw(), f),
                          sat_add_raw(a.im_raw(), b.im_raw(), f), f);
  }
  return Cplx(a.re() + b.re(), a.im() + b.im());
}

Cplx cplx_sub(const Cplx& a, const Cplx& b) {
  require_same_mode(a, b, "cplx_sub");
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    return Cplx::from_raw(sat_sub_raw(a.re_raw(), b.re_raw(), f),
                          sat_sub_raw(a.im_raw(), b.im_raw(), f), f);
  }
  return Cplx(a.re() - b.re(), a.im() - b.im());
}

Cplx cplx_mul(const Cplx& a, const Cplx& b) {
  require_same_mode(a, b, "cplx_mul");
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    // Four real multipliers, each rounding to the format, then two
    // add/subtract units on the rounded products.
    const std::int64_t rr = mul_round_raw(a.re_raw(), b.re_raw(), f);
    const std::int64_t ii = mul_round_raw(a.im_raw(), b.im_raw(), f);
    const std::int64_t ri = mul_round_raw(a.re_raw(), b.im_raw(), f);
    const std::int64_t ir = mul_round_raw(a.im_raw(), b.re_raw(), f);
    return Cplx::from_raw(sat_sub_raw(rr, ii, f), sat_add_raw(ri, ir, f), f);
  }
  return Cplx(a.re() * b.re() - a.im() * b.im(),
              a.re() * b.im() + a.im() * b.re());
}

Cplx cplx_neg(const Cplx& a) {
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    return Cplx::from_raw(saturate(-int128{a.re_raw()}, f),
                          saturate(-int128{a.im_raw()}, f), f);
  }
  return Cplx(-a.re(), -a.im());
}

Cplx cplx_conj(const Cplx& a) {
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    return Cplx::from_raw(a.re_raw(), saturate(-int128{a.im_raw()}, f), f);
  }
  return Cplx(a.re(), -a.im());
}

Cplx cplx_scale_pow2(const Cplx& a, int e) {
  if (a.mode().is_fixed()) {
    const FixedFormat& f = a.mode().format();
    if (e >= 0) {
      // Beyond 63 positions any nonzero word saturates; keep the shift legal.
      const int up = e > 63 ? 63 : e;
      auto shifted = [&](std::int64_t raw) {
        if (raw == 0) return std::int64_t{0};
        return saturate(int128{raw} << up, f);
      };
      return Cplx::from_raw(shifted(a.re_raw()), shifted(a.im_raw()), f);
    }
    auto down = [&](std::int64_t raw) {
      if (-e > 64) return std::int64_t{0};
      return saturate(shift_round_even(raw, -e), f);
    };
    return Cplx::from_raw(down(a.re_raw()), down(a.im_raw()), f);
  }
  return Cplx(std::ldexp(a.re(), e), std::ldexp(a.im(), e));
}

Cplx twiddle(std::int64_t n, std::int64_t k, const NumericMode& mode) {
  if (!is_power_of_two(n) || n < 2) {
    throw config_error("twiddle: n must be a power of two >= 2, got " +
                       std::to_string(n));
  }
  if (k < 0 || k >= n) {
    throw config_error("twiddle: k must be in [0,n), got " + std::to_string(k));
  }
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  const Cplx w(std::cos(angle), -std::sin(angle));
  return w.to_mode(mode);
}

TwiddleTable::TwiddleTable(std::int64_t n, const NumericMode& mode)
    : n_(n), mode_(mode) {
  if (!is_power_of_two(n) || n < 2) {
    throw config_error("twiddle table: n must be a power of two >= 2, got " +
                       std::to_string(n));
  }
  factors_.reserve(static_cast<std::size_t>(n / 2));
  for (std::int64_t k = 0; k < n / 2; ++k) {
    factors_.push_back(twiddle(n, k, mode));
  }
}

Cplx TwiddleTable::factor(std::int64_t k) const {
  if (k < 0 || k >= n_) {
    throw config_error("twiddle table: exponent out of range");
  }
  return k < n_ / 2 ? factors_[static_cast<std::size_t>(k)]
                    : cplx_neg(factors_[static_cast<std::size_t>(k - n_ / 2)]);
}

TwiddleTable build_twiddle_table(std::int64_t n, const NumericMode& mode) {
  return TwiddleTable(n, mode);
}

double fixed_error_bound(std::int64_t n, const FixedFormat& fmt) {
  const int stages = log2_exact(n);
  const double q = fmt.step();
  const double range = std::ldexp(1.0, fmt.total_bits() - 1 - fmt.frac_bits());
  const double growth = 2.0 * std::sqrt(2.0);
  const double gs = std::pow(growth, stages);
  return q * (gs / 2.0 + (gs - 1.0) / (growth - 1.0) * (std::sqrt(2.0) * range + 1.0));
}

}  // namespace r2mdc
