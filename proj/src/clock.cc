// Copyright 2026 The dynarace authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------
#include "dynarace/clock.h"

#include <algorithm>

#include "dynarace/error.h"

namespace dynarace {
namespace {

void CheckLengths(const VectorClock& v, const VectorClock& w) {
  if (v.size() != w.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "clocks of length " + std::to_string(v.size()) + " and " +
                    std::to_string(w.size()));
  }
}

}  // namespace

VectorClock VectorClock::Incremented(std::size_t index) const {
  std::vector<std::uint32_t> entries = entries_;
  ++entries.at(index);
  return VectorClock(std::move(entries));
}

VectorClock VectorClock::Max(const VectorClock& a, const VectorClock& b) {
  CheckLengths(a, b);
  std::vector<std::uint32_t> entries(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    entries[i] = std::max(a[i], b[i]);
  }
  return VectorClock(std::move(entries));
}

std::string VectorClock::ToString() const {
  std::string out = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(entries_[i]);
  }
  return out + "]";
}

bool ClockLeq(const VectorClock& v, const VectorClock& w) {
  CheckLengths(v, w);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > w[i]) return false;
  }
  return true;
}

bool ClocksConcurrent(const VectorClock& v, const VectorClock& w) {
  return !ClockLeq(v, w) && !ClockLeq(w, v);
}

std::optional<std::pair<std::size_t, std::size_t>> FindConcurrentPair(
    std::span<const VectorClock> clocks) {
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    for (std::size_t j = i + 1; j < clocks.size(); ++j) {
      if (ClocksConcurrent(clocks[i], clocks[j])) return std::pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace dynarace
