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
// File: clock.h
// -----------------------------------------------------------------------------
#ifndef DYNARACE_CLOCK_H_
#define DYNARACE_CLOCK_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dynarace {

// Per-component logical clock; one entry per component of the model.
class VectorClock {
 public:
  VectorClock() = default;
  VectorClock(std::initializer_list<std::uint32_t> entries)
      : entries_(entries) {}
  explicit VectorClock(std::vector<std::uint32_t> entries)
      : entries_(std::move(entries)) {}

  static VectorClock Zero(std::size_t size) {
    return VectorClock(std::vector<std::uint32_t>(size, 0));
  }

  std::size_t size() const { return entries_.size(); }
  std::uint32_t operator[](std::size_t i) const { return entries_.at(i); }
  const std::vector<std::uint32_t>& entries() const { return entries_; }

  VectorClock Incremented(std::size_t index) const;
  // Pointwise maximum; throws kLengthMismatch.
  static VectorClock Max(const VectorClock& a, const VectorClock& b);

  // [1, 2]
  std::string ToString() const;

  friend bool operator==(const VectorClock&, const VectorClock&) = default;
  friend auto operator<=>(const VectorClock&, const VectorClock&) = default;

 private:
  std::vector<std::uint32_t> entries_;
};

// Pointwise <=. Throws kLengthMismatch.
bool ClockLeq(const VectorClock& v, const VectorClock& w);

// Neither clock is <= the other. Throws kLengthMismatch.
bool ClocksConcurrent(const VectorClock& v, const VectorClock& w);

// Lexicographically smallest (i, j), i < j, of concurrent clocks.
std::optional<std::pair<std::size_t, std::size_t>> FindConcurrentPair(
    std::span<const VectorClock> clocks);

}  // namespace dynarace

#endif  // DYNARACE_CLOCK_H_
