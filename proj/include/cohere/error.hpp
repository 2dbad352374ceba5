// Copyright 2026 The cohere Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohere {

enum class ErrorKind {
  NonHermitian,
  DimensionZero,
  DimensionMismatch,
  NotPsd,
  ZeroVector,
  InvalidState,
  ParseError,
  UnsupportedDim,
  WrongDimension,
  BlochNormExceeded,
  SolverStall,
  InfeasibleWitness,
  PrimalInfeasible,
  DualInfeasible,
  MissingPart,
  BadParameters,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries an ErrorKind so callers
/// (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Newton failed to centre within its iteration budget and the certified
/// interval is still wider than the requested gap.
class SolverStall : public Error {
 public:
  SolverStall(const std::string& what, double lower, double upper)
      : Error(ErrorKind::SolverStall, what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace cohere
