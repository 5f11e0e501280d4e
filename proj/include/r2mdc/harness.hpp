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

/* Command-line front end: sample-file loading, engine selection, per-cycle
 * trace emission and comparison/resource reports. Every run recomputes the
 * Float64 naive-DFT oracle; nothing is cached between invocations.
 *
 * Exit codes: 0 pass, 1 tolerance exceeded, 2 usage, 3 file/data error.
 */

#ifndef R2MDC_HARNESS_HPP_
#define R2MDC_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "r2mdc/pipeline.hpp"
#include "r2mdc/resources.hpp"

namespace r2mdc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

enum class Engine { kNaive, kFft, kPipeline };

Engine parse_engine(const std::string& text);      // config_error on junk
NumericMode parse_mode(const std::string& text);   // "f64" or "q<m>.<f>"

// Read "re,im" lines, one sample per line, '#'-prefixed and blank lines
// ignored, frame boundaries every n lines. parse_error carries the line
// number; a trailing partial frame raises length_error.
std::vector<Frame> load_frames(const std::string& path, std::int64_t n);

struct RunOptions {
  std::int64_t n = 0;
  std::string input_path;
  Engine engine = Engine::kNaive;
  NumericMode mode = NumericMode::float64();
  std::string trace_path;   // empty: no trace
  std::string report_path;  // empty: no report file
};

struct RunReport {
  std::int64_t n = 0;
  std::string engine;
  std::string mode;
  double max_abs_error = 0.0;
  double snr_db = 0.0;  // +inf when the error power is zero
  std::int64_t frames_processed = 0;
  std::int64_t latency_cycles = 0;
  std::int64_t total_cycles = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// The tolerance cmd_run holds an engine to: 1e-9 against the oracle in
// Float64 mode, fixed_error_bound(n, fmt) in fixed mode.
double run_tolerance(std::int64_t n, const NumericMode& mode);

// Run the selected engine over every frame in the input file, compare
// against the Float64 oracle, optionally write report and trace files.
// Returns kExitOk or kExitTolerance; usage and file problems throw.
int cmd_run(const RunOptions& options, std::ostream& out, RunReport* report = nullptr);

// Print the architectural resource table, with the published N=8 reference
// counts flagged matched/unmatched when n == 8. Returns kExitOk iff the
// closed forms agree with a structural audit.
int cmd_resources(std::int64_t n, std::ostream& out);

std::string format_report(const RunReport& report);  // JSON text

// CSV with one header line then one record per cycle. Float64 values are
// printed with 17 significant digits; fixed-point values as exact scaled
// integers, with the format named in the trailing column. Fields of
// invalid or idle slots are left empty. Byte-deterministic for a given run.
std::string format_trace(const std::vector<TraceProbe>& records,
                         const PipelineConfig& config);
void emit_trace(const std::vector<TraceProbe>& records,
                const PipelineConfig& config, const std::string& path);

// Full flag-parsing entry point used by the r2mdc binary; returns the
// process exit code and writes diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace r2mdc

#endif  // R2MDC_HARNESS_HPP_
