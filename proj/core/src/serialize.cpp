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

#include "coc/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace coc {

namespace {

void write_lines(std::ostream& out, const char* tag,
                 const std::vector<std::int64_t>& values) {
  out << "coc-v1 " << tag << ' ' << values.size() << '\n';
  for (std::int64_t v : values) out << v << '\n';
  if (!out) throw IoError("write_text: stream failure");
}

std::vector<std::int64_t> read_lines(std::istream& in, const char* tag) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("read: cannot read header");
  std::istringstream header(line);
  std::string magic, rep;
  std::uint64_t count = 0;
  if (!(header >> magic >> rep >> count) || magic != "coc-v1") {
    throw MalformedRow("line 1: expected header 'coc-v1 <representation> <length>'");
  }
  if (rep != tag) {
    throw MalformedRow("line 1: representation is '" + rep + "', expected '" +
                       tag + "'");
  }
  std::vector<std::int64_t> values;
  values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) {
      throw MalformedRow("line " + std::to_string(i + 2) +
                         ": unexpected end of input");
    }
    std::int64_t v = 0;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
      throw MalformedRow("line " + std::to_string(i + 2) +
                         ": expected a single integer, got '" + line + "'");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

void write_text(std::ostream& out, const CountHistogram& h) {
  write_lines(out, "count", h.counts);
}

void write_text(std::ostream& out, const CumulativeHistogram& h) {
  write_lines(out, "cumulative", h.csums);
}

void write_text(std::ostream& out, const UnattributedHistogram& h) {
  write_lines(out, "unattributed", h.sizes);
}

CountHistogram read_count_histogram(std::istream& in) {
  return CountHistogram{read_lines(in, "count")};
}

CumulativeHistogram read_cumulative_histogram(std::istream& in) {
  return CumulativeHistogram{read_lines(in, "cumulative")};
}

UnattributedHistogram read_unattributed_histogram(std::istream& in) {
  return UnattributedHistogram{read_lines(in, "unattributed")};
}

void save_histogram(const std::filesystem::path& path,
                    const CountHistogram& h) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_text(out, h);
}

CountHistogram load_count_histogram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_count_histogram(in);
}

}  // namespace coc
