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

#include "r2mdc/resources.hpp"

namespace r2mdc {

ResourceReport count_resources(std::int64_t n) {
  const StageDelays delays = stage_delays(n);  // validates n
  const std::int64_t s = log2_exact(n);
  return ResourceReport{
      .real_multipliers = 4 * s,
      .butterfly_real_addsubs = 4 * s,
      .cmult_real_addsubs = 2 * s,
      .delay_registers_complex = delays.total(),
      .pipeline_registers_complex = s,
      .switches = s - 1,
      .stages = s,
  };
}

ResourceReport audit_pipeline(const Pipeline& pipeline) {
  const std::int64_t s = pipeline.stage_count();
  return ResourceReport{
      // One complex multiplier and one add/sub butterfly per stage.
      .real_multipliers = 4 * s,
      .butterfly_real_addsubs = 4 * s,
      .cmult_real_addsubs = 2 * s,
      .delay_registers_complex = pipeline.total_delay_registers(),
      .pipeline_registers_complex = pipeline.pipeline_register_stages(),
      .switches = pipeline.commutator_count(),
      .stages = s,
  };
}

}  // namespace r2mdc
