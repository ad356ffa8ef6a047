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
// File: netkat.h
// -----------------------------------------------------------------------------
//
// Dup-free NetKAT over finite field domains: the policy AST, its concrete
// syntax, single-packet denotational evaluation and the relational normal
// form (the set of complete-test / complete-assignment pairs).
//
// Field values are opaque tokens. A `Packet` stores one value index per
// field of a `FieldDomains`, so packets are only meaningful together with the
// domains they were built against.

#ifndef DYNARACE_NETKAT_H_
#define DYNARACE_NETKAT_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dynarace {

using ValueId = std::uint32_t;

// Token used for the extra per-field value added by domain inference.
inline constexpr std::string_view kResidualValue = "<other>";

// Canonical token order: unsigned integers (numerically), then identifiers
// (lexicographically), then the residual token.
bool ValueLess(std::string_view a, std::string_view b);

class FieldDomains {
 public:
  // Appends a field. Values are deduplicated and stored in canonical order;
  // with `with_residual` the residual token is appended last.
  void AddField(std::string name, std::vector<std::string> values,
                bool with_residual = false);

  std::size_t field_count() const { return fields_.size(); }
  const std::string& field_name(std::size_t field) const;
  std::size_t value_count(std::size_t field) const;
  const std::string& value_name(std::size_t field, ValueId value) const;
  bool has_residual(std::size_t field) const;

  std::optional<std::size_t> FindField(std::string_view name) const;
  std::optional<ValueId> FindValue(std::size_t field,
                                   std::string_view value) const;

  // Product of the domain sizes, saturating at UINT64_MAX.
  std::uint64_t PacketSpaceSize() const;

  friend bool operator==(const FieldDomains&, const FieldDomains&) = default;

 private:
  struct Field {
    std::string name;
    std::vector<std::string> values;
    bool residual = false;
    friend bool operator==(const Field&, const Field&) = default;
  };
  std::vector<Field> fields_;
};

struct Packet {
  std::vector<ValueId> values;

  friend auto operator<=>(const Packet&, const Packet&) = default;
};

// Builds a packet from (field, value) names; throws kUndeclaredValue unless
// the assignment is total and within `domains`.
Packet MakePacket(
    const FieldDomains& domains,
    std::span<const std::pair<std::string_view, std::string_view>> fields);
Packet MakePacket(
    const FieldDomains& domains,
    std::initializer_list<std::pair<std::string_view, std::string_view>>
        fields);

// {flag=blocking, pt=1}
std::string FormatPacket(const Packet& packet, const FieldDomains& domains);
// (flag = blocking) . (pt = 1)
std::string FormatCompleteTest(const Packet& packet,
                               const FieldDomains& domains);
// (flag <- blocking) . (pt <- 1)
std::string FormatCompleteAssignment(const Packet& packet,
                                     const FieldDomains& domains);

// Immutable, cheaply copyable policy AST. `Neg` only accepts predicates
// (Zero, One, Test and Union/Seq/Neg over predicates).
class Policy {
 public:
  enum class Kind { kZero, kOne, kTest, kNeg, kAssign, kUnion, kSeq, kStar };

  static Policy Zero();
  static Policy One();
  static Policy Test(std::string field, std::string value);
  static Policy Assign(std::string field, std::string value);
  // Throws kSyntaxError if `predicate` is not a predicate.
  static Policy Neg(Policy predicate);
  static Policy Union(Policy lhs, Policy rhs);
  static Policy Seq(Policy lhs, Policy rhs);
  static Policy Star(Policy body);

  Kind kind() const;
  bool is_predicate() const;
  // Test / Assign only.
  const std::string& field() const;
  const std::string& value() const;
  // Union / Seq take lhs and rhs; Neg and Star take lhs.
  const Policy& lhs() const;
  const Policy& rhs() const;

  // Concrete syntax accepted by ParsePolicy.
  std::string ToString() const;

  // Identity of the shared node; stable for the lifetime of any copy.
  const void* node_id() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Policy& a, const Policy& b);
  friend bool operator==(const Policy& a, const Policy& b);

 private:
  struct Node;
  explicit Policy(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Parses NetKAT concrete syntax: `f = v`, `f <- v`, `+`, `.`, postfix `*`,
// prefix `~`, `0`, `1`, parentheses. Throws kSyntaxError with the column.
Policy ParsePolicy(std::string_view text);

// Every (field, value) literal occurring in `policy`, in traversal order.
std::vector<std::pair<std::string, std::string>> PolicyLiterals(
    const Policy& policy);

using PacketSet = std::set<Packet>;

// Denotation of `policy` applied to the single-packet history `packet`.
// Throws kUndeclaredValue if the policy mentions literals outside `domains`.
PacketSet EvalPolicy(const Policy& policy, const Packet& packet,
                     const FieldDomains& domains);

inline constexpr std::uint64_t kDefaultPacketSpaceCap = std::uint64_t{1} << 20;

// Pairs (alpha, pi) with pi in [[policy]](alpha), sorted canonically.
struct PacketRelation {
  std::vector<std::pair<Packet, Packet>> pairs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
  bool Contains(const Packet& alpha, const Packet& pi) const;

  friend bool operator==(const PacketRelation&,
                         const PacketRelation&) = default;
};

// Throws kDomainTooLarge when the packet space exceeds `packet_space_cap`.
PacketRelation NormalForm(const Policy& policy, const FieldDomains& domains,
                          std::uint64_t packet_space_cap =
                              kDefaultPacketSpaceCap);

bool PolicyEquiv(const Policy& p, const Policy& q, const FieldDomains& domains,
                 std::uint64_t packet_space_cap = kDefaultPacketSpaceCap);

// Infers domains from the literals of `policies`: per field, every value it
// is paired with plus one residual value. Fields are ordered by first
// appearance. With `declared`, validates the literals against it and returns
// it unchanged. Throws kUndeclaredValue or kEmptyModel.
FieldDomains InferDomains(std::span<const Policy> policies,
                          const std::optional<FieldDomains>& declared);

}  // namespace dynarace

#endif  // DYNARACE_NETKAT_H_
