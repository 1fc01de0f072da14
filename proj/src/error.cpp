// Copyright 2026 The GDS Sparsity Authors.
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

#include "gds/error.hpp"

namespace gds {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyVector: return "EmptyVector";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kBadOrder: return "BadOrder";
    case ErrorKind::kBadTransfer: return "BadTransfer";
    case ErrorKind::kBadShift: return "BadShift";
    case ErrorKind::kBadScale: return "BadScale";
    case ErrorKind::kBadCount: return "BadCount";
    case ErrorKind::kInsufficientSamples: return "InsufficientSamples";
    case ErrorKind::kDegenerateDataset: return "DegenerateDataset";
    case ErrorKind::kBadShape: return "BadShape";
    case ErrorKind::kDegenerateProjection: return "DegenerateProjection";
    case ErrorKind::kDegenerateSignal: return "DegenerateSignal";
    case ErrorKind::kBadConfig: return "BadConfig";
    case ErrorKind::kNoData: return "NoData";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

}  // namespace gds
