//
// Copyright 2026 The Cochist Authors
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
//

#pragma once

#include <stdexcept>
#include <string>

namespace coc {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COC_DEFINE_ERROR(Name)  \
  class Name : public Error {   \
   public:                      \
    using Error::Error;         \
  }

// A sequence that must be nondecreasing is not.
COC_DEFINE_ERROR(DecreasingInput);
// Two histograms that must carry the same group total do not.
COC_DEFINE_ERROR(TotalMismatch);
// Budget split over a non-positive number of levels.
COC_DEFINE_ERROR(NonPositiveLevels);
// An operation requiring at least one group got none.
COC_DEFINE_ERROR(EmptyHistogram);
// Constraint set of an isotonic problem is empty.
COC_DEFINE_ERROR(InfeasibleBounds);
// Rounding cannot reach the requested total.
COC_DEFINE_ERROR(InfeasibleTotal);
// Proportional allocation asked for more items than available.
COC_DEFINE_ERROR(InfeasibleAllocation);
// A variance that must be positive is not.
COC_DEFINE_ERROR(NonPositiveVariance);
// Hierarchy bookkeeping (public group totals, levels) is inconsistent.
COC_DEFINE_ERROR(StructureError);
// Input-table parsing errors; messages carry the offending line number.
COC_DEFINE_ERROR(MalformedRow);
COC_DEFINE_ERROR(MissingGroup);
COC_DEFINE_ERROR(MissingRegion);
COC_DEFINE_ERROR(DuplicateId);
// Synthetic-data tail ratio is unusable (count(6)=0 or ratio outside [0,1]).
COC_DEFINE_ERROR(DegenerateRatio);
// Filesystem/stream failure.
COC_DEFINE_ERROR(IoError);

#undef COC_DEFINE_ERROR

}  // namespace coc
