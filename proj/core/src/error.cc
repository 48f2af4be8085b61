// Copyright 2026 The Authors.
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

#include "catbreak/error.h"

namespace catbreak {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidEdit: return "INVALID_EDIT";
    case ErrorCode::kDuplicateFeature: return "DUPLICATE_FEATURE";
    case ErrorCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::kNonFinite: return "NON_FINITE";
    case ErrorCode::kInvalidArg: return "INVALID_ARG";
    case ErrorCode::kUnpulledArm: return "UNPULLED_ARM";
    case ErrorCode::kInvalidAlpha: return "INVALID_ALPHA";
    case ErrorCode::kInvalidGap: return "INVALID_GAP";
    case ErrorCode::kBlackBoxModel: return "BLACK_BOX_MODEL";
    case ErrorCode::kNoAlternatives: return "NO_ALTERNATIVES";
    case ErrorCode::kCapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kEmptyDataset: return "EMPTY_DATASET";
    case ErrorCode::kIo: return "IO";
  }
  return "UNKNOWN";
}

}  // namespace catbreak
