// Copyright 2026 The pidtune Authors.
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

#include "pidtune/error.hpp"

namespace pidtune {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::ImproperLoop: return "ImproperLoop";
    case ErrorCode::ImproperSystem: return "ImproperSystem";
    case ErrorCode::NoUltimateGain: return "NoUltimateGain";
    case ErrorCode::NonFiniteStart: return "NonFiniteStart";
    case ErrorCode::ResampleExhausted: return "ResampleExhausted";
    case ErrorCode::OutputUnwritable: return "OutputUnwritable";
  }
  return "Unknown";
}

}  // namespace pidtune
