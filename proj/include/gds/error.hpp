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

#ifndef GDS_ERROR_HPP_
#define GDS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gds {

enum class ErrorKind {
  kEmptyVector,
  kZeroVector,
  kBadOrder,
  kBadTransfer,
  kBadShift,
  kBadScale,
  kBadCount,
  kInsufficientSamples,
  kDegenerateDataset,
  kBadShape,
  kDegenerateProjection,
  kDegenerateSignal,
  kBadConfig,
  kNoData,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception; `kind()` lets
// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gds

#endif  // GDS_ERROR_HPP_
