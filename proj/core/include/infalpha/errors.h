// Copyright 2026 The infalpha Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================
#ifndef INFALPHA_ERRORS_H_
#define INFALPHA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace infalpha {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (p <= 1, n == 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Weights or masses do not describe a probability measure.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

// A sample symbol falls outside the support of the reference measure.
class AbsoluteContinuityViolation : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of zero probability.
class DegenerateConditioning : public Error {
 public:
  using Error::Error;
};

// Experiment configuration is malformed or internally inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A persisted file (report, sample, config) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Rate fitting needs at least three grid points with positive mean error.
class FitUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace infalpha

#endif  // INFALPHA_ERRORS_H_
