// Copyright 2026 The sio-enhance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace sio {

template <std::floating_point Real>
using Complex = std::complex<Real>;

template <std::floating_point Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <std::floating_point Real>
using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <std::floating_point Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <std::floating_point Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Default validation tolerance. Diagonal entries at or below it count as zero.
inline constexpr double kDefaultTol = 1e-10;

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotUnitTrace,
  NotPSD,
  DimensionMismatch,
  NotSubnormalized,
  ZeroProbability,
  IncompleteInstrument,
  NoConvergence,
  OutOfRange,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSubnormalized: return "NotSubnormalized";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::IncompleteInstrument: return "IncompleteInstrument";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. The message starts with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sio
