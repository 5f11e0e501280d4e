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

/* Closed-form architectural resource accounting for an N-point R2MDC
 * instance. These are architectural unit counts only; synthesis-tool
 * inventories (inferred control registers, multiplexers, gates) are a
 * different population and are deliberately not modeled.
 */

#ifndef R2MDC_RESOURCES_HPP_
#define R2MDC_RESOURCES_HPP_

#include <cstdint>

#include "r2mdc/pipeline.hpp"

namespace r2mdc {

struct ResourceReport {
  std::int64_t real_multipliers;       // 4 per complex multiplier, one per stage
  std::int64_t butterfly_real_addsubs; // complex add + subtract = 4 per stage
  std::int64_t cmult_real_addsubs;     // 2 per complex multiplier
  std::int64_t delay_registers_complex;   // reordering delays, 3N/2 - 2
  std::int64_t pipeline_registers_complex; // register stages, one per butterfly
  std::int64_t switches;               // commutators, S - 1
  std::int64_t stages;                 // S = log2(N)

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

// Closed forms at S = log2(n). The last stage's complex multiplier is
// counted even though its factor is W^0.
ResourceReport count_resources(std::int64_t n);  // config_error unless n = 2^S >= 4

// Count units by walking an instantiated pipeline; equals count_resources(n)
// field for field, and is unaffected by ticking (the structure is static).
ResourceReport audit_pipeline(const Pipeline& pipeline);

}  // namespace r2mdc

#endif  // R2MDC_RESOURCES_HPP_
