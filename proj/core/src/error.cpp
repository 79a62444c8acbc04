// Copyright 2026 The regchain Authors
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

#include "regchain/error.hpp"

namespace regchain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedBuild: return "malformed-build";
    case ErrorCode::kInvalidClassification: return "invalid-classification";
    case ErrorCode::kOrdering: return "ordering";
    case ErrorCode::kUnclassifiableTransition: return "unclassifiable-transition";
    case ErrorCode::kInvalidRange: return "invalid-range";
    case ErrorCode::kInvalidCost: return "invalid-cost";
    case ErrorCode::kOracleLimit: return "oracle-limit";
    case ErrorCode::kRequiresInfiniteWindow: return "regall-requires-infinite-window";
    case ErrorCode::kUndefinedExecution: return "undefined-execution";
    case ErrorCode::kUnsatisfiableRequirement: return "unsatisfiable-requirement";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kEngineLimit: return "engine-limit";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kIncompleteVerdicts: return "incomplete-verdicts";
    case ErrorCode::kMalformedGraph: return "malformed-graph";
    case ErrorCode::kUnknownNode: return "unknown-node";
    case ErrorCode::kArtaViolation: return "arta-violation";
    case ErrorCode::kTraceDivergence: return "trace-divergence";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kReferentialIntegrity: return "referential-integrity";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace regchain
