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

#ifndef R2MDC_ERRORS_HPP_
#define R2MDC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace r2mdc {

// Error taxonomy. The CLI maps these onto its exit codes:
//   config_error / usage_error        -> exit 2 (bad flags, API misuse)
//   parse_error / length_error /
//   io_error / domain_error           -> exit 3 (file or data problems)

// Invalid construction parameters: non-power-of-two length, bad word format.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// API misuse: numeric-mode mismatch, wrong spectrum ordering, mixed lengths.
class usage_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Data outside the operation's domain: non-finite sample, fixed-point input
// beyond the representable range.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed text in an input file; carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Sample count does not form whole frames.
class length_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-sample-per-cycle streaming discipline violated.
class stream_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Filesystem failure.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace r2mdc

#endif  // R2MDC_ERRORS_HPP_
