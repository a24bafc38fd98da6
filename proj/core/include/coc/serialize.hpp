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

#include <filesystem>
#include <iosfwd>

#include "coc/histogram.hpp"

namespace coc {

// Plain-text histogram format: a one-line header
//   coc-v1 <representation> <length>
// with <representation> one of count|cumulative|unattributed, followed by
// one integer per line.

void write_text(std::ostream& out, const CountHistogram& h);
void write_text(std::ostream& out, const CumulativeHistogram& h);
void write_text(std::ostream& out, const UnattributedHistogram& h);

// Readers check the header's representation tag and entry count; they throw
// MalformedRow (with the line number) on bad input and IoError on stream
// failure.
CountHistogram read_count_histogram(std::istream& in);
CumulativeHistogram read_cumulative_histogram(std::istream& in);
UnattributedHistogram read_unattributed_histogram(std::istream& in);

// File helpers.
void save_histogram(const std::filesystem::path& path, const CountHistogram& h);
CountHistogram load_count_histogram(const std::filesystem::path& path);

}  // namespace coc
