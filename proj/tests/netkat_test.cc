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
#include "dynarace/netkat.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "dynarace/error.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dynarace {
namespace {

using ::dynarace::testing::EnumeratePackets;
using ::dynarace::testing::RandomDomains;
using ::dynarace::testing::RandomPolicy;
using ::dynarace::testing::RelationalSemantics;

FieldDomains RunningDomains() {
  FieldDomains d;
  d.AddField("flag", {"regular", "blocking"});
  d.AddField("pt", {"1", "2"});
  return d;
}

FieldDomains PortDomains() {
  FieldDomains d;
  d.AddField("pt", {"1", "2"});
  return d;
}

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(ValueLessTest, NumeralsThenIdentifiersThenResidual) {
  EXPECT_TRUE(ValueLess("2", "10"));
  EXPECT_TRUE(ValueLess("10", "a"));
  EXPECT_TRUE(ValueLess("blocking", "regular"));
  EXPECT_TRUE(ValueLess("regular", kResidualValue));
  EXPECT_FALSE(ValueLess("a", "a"));
}

TEST(FieldDomainsTest, CanonicalValueOrder) {
  FieldDomains d = RunningDomains();
  EXPECT_EQ(d.value_name(0, 0), "blocking");
  EXPECT_EQ(d.value_name(0, 1), "regular");
  EXPECT_EQ(d.PacketSpaceSize(), 4u);
  EXPECT_FALSE(d.FindValue(1, "3").has_value());
}

TEST(ParsePolicyTest, Precedence) {
  Policy p = ParsePolicy("a = 1 + b <- 2 . c = 3*");
  ASSERT_EQ(p.kind(), Policy::Kind::kUnion);
  EXPECT_EQ(p.lhs().kind(), Policy::Kind::kTest);
  ASSERT_EQ(p.rhs().kind(), Policy::Kind::kSeq);
  EXPECT_EQ(p.rhs().rhs().kind(), Policy::Kind::kStar);
}

TEST(ParsePolicyTest, NegationOfAssignmentRejected) {
  EXPECT_EQ(CodeOf([] { ParsePolicy("!(a <- 1)"); }), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf([] { ParsePolicy("(a = 1"); }), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf([] { ParsePolicy("a = "); }), ErrorCode::kSyntaxError);
}

TEST(ParsePolicyTest, ToStringRoundTrips) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    FieldDomains d = RandomDomains(rng);
    Policy p = RandomPolicy(rng, d, 4);
    EXPECT_EQ(ParsePolicy(p.ToString()), p) << p.ToString();
  }
}

TEST(EvalPolicyTest, ForwardingRule) {
  FieldDomains d = RunningDomains();
  Policy p = ParsePolicy("(flag = regular) . (pt = 1) . (pt <- 2)");
  PacketSet out =
      EvalPolicy(p, MakePacket(d, {{"flag", "regular"}, {"pt", "1"}}), d);
  EXPECT_EQ(out, PacketSet{MakePacket(d, {{"flag", "regular"}, {"pt", "2"}})});
}

TEST(EvalPolicyTest, OneIsIdentity) {
  FieldDomains d = RunningDomains();
  for (const Packet& p : EnumeratePackets(d)) {
    EXPECT_EQ(EvalPolicy(Policy::One(), p, d), PacketSet{p});
  }
}

TEST(EvalPolicyTest, StarMatchesRelationalClosure) {
  FieldDomains d = PortDomains();
  Policy p = ParsePolicy("((pt = 1) . (pt <- 2) + (pt = 2) . (pt <- 1))*");
  Packet in = MakePacket(d, {{"pt", "1"}});
  RelationalSemantics rel(d);
  PacketSet expected;
  for (const auto& [a, b] : rel.Pairs(p)) {
    if (a == in) expected.insert(b);
  }
  EXPECT_EQ(EvalPolicy(p, in, d), expected);
}

TEST(NormalFormTest, Examples) {
  FieldDomains ports = PortDomains();
  EXPECT_TRUE(NormalForm(Policy::Zero(), ports).empty());

  Packet p1 = MakePacket(ports, {{"pt", "1"}});
  Packet p2 = MakePacket(ports, {{"pt", "2"}});
  PacketRelation id = NormalForm(Policy::One(), ports);
  EXPECT_EQ(id.pairs, (std::vector<std::pair<Packet, Packet>>{{p1, p1},
                                                              {p2, p2}}));

  FieldDomains d = RunningDomains();
  Packet b1 = MakePacket(d, {{"flag", "blocking"}, {"pt", "1"}});
  PacketRelation nf =
      NormalForm(ParsePolicy("(flag = blocking) . (pt = 1)"), d);
  EXPECT_EQ(nf.pairs, (std::vector<std::pair<Packet, Packet>>{{b1, b1}}));
  EXPECT_TRUE(nf.Contains(b1, b1));
}

TEST(NormalFormTest, DomainTooLarge) {
  FieldDomains d;
  d.AddField("a", {"1", "2", "3", "4"});
  d.AddField("b", {"1", "2", "3", "4"});
  EXPECT_EQ(CodeOf([&] { NormalForm(Policy::One(), d, 15); }),
            ErrorCode::kDomainTooLarge);
  EXPECT_EQ(NormalForm(Policy::One(), d, 16).size(), 16u);
}

TEST(PolicyEquivTest, Examples) {
  FieldDomains d = RunningDomains();
  Policy p = ParsePolicy("flag = regular");
  Policy q = ParsePolicy("pt <- 2");
  EXPECT_TRUE(PolicyEquiv(Policy::Union(p, q), Policy::Union(q, p), d));
  EXPECT_TRUE(PolicyEquiv(ParsePolicy("(pt = 1) . (pt = 1)"),
                          ParsePolicy("pt = 1"), d));
  EXPECT_FALSE(PolicyEquiv(Policy::Zero(), Policy::One(), d));
}

TEST(InferDomainsTest, AddsResidualPerField) {
  std::vector<Policy> ps = {
      ParsePolicy("(flag = regular) . (pt = 1) . (pt <- 2)"),
      ParsePolicy("(flag = blocking) . (pt = 1)")};
  FieldDomains d = InferDomains(ps, std::nullopt);
  ASSERT_EQ(d.field_count(), 2u);
  EXPECT_EQ(d.field_name(0), "flag");
  ASSERT_EQ(d.value_count(0), 3u);
  EXPECT_EQ(d.value_name(0, 0), "blocking");
  EXPECT_EQ(d.value_name(0, 1), "regular");
  EXPECT_EQ(d.value_name(0, 2), kResidualValue);
  ASSERT_EQ(d.value_count(1), 3u);
  EXPECT_EQ(d.value_name(1, 0), "1");
  EXPECT_EQ(d.value_name(1, 1), "2");
  EXPECT_TRUE(d.has_residual(1));
}

TEST(InferDomainsTest, DeclaredDomains) {
  std::vector<Policy> ps = {ParsePolicy("(pt = 1) . (pt <- 2)")};
  FieldDomains declared = PortDomains();
  EXPECT_EQ(InferDomains(ps, declared), declared);

  std::vector<Policy> bad = {ParsePolicy("pt = 3")};
  EXPECT_EQ(CodeOf([&] { InferDomains(bad, declared); }),
            ErrorCode::kUndeclaredValue);
  std::vector<Policy> none = {Policy::One()};
  EXPECT_EQ(CodeOf([&] { InferDomains(none, std::nullopt); }),
            ErrorCode::kEmptyModel);
}

class RandomPolicyTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomPolicyTest, NormalFormAgreesWithOracles) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 25; ++i) {
    FieldDomains d = RandomDomains(rng);
    Policy p = RandomPolicy(rng, d, 5);
    PacketRelation nf = NormalForm(p, d);
    RelationalSemantics rel(d);
    EXPECT_EQ(nf.pairs, rel.Pairs(p)) << p.ToString();
    for (const Packet& in : rel.packets()) {
      PacketSet row;
      for (const auto& [a, b] : nf.pairs) {
        if (a == in) row.insert(b);
      }
      EXPECT_EQ(row, EvalPolicy(p, in, d)) << p.ToString();
    }
  }
}

TEST_P(RandomPolicyTest, RelationLaws) {
  std::mt19937 rng(GetParam() + 1000);
  for (int i = 0; i < 25; ++i) {
    FieldDomains d = RandomDomains(rng);
    Policy p = RandomPolicy(rng, d, 3);
    Policy q = RandomPolicy(rng, d, 3);
    Policy a = ::dynarace::testing::RandomPredicate(rng, d, 3);
    RelationalSemantics rel(d);
    auto m = [&](const Policy& x) { return rel.FromPairs(NormalForm(x, d).pairs); };
    EXPECT_EQ(m(Policy::Union(p, q)), rel.Union(m(p), m(q)));
    EXPECT_EQ(m(Policy::Seq(p, q)), rel.Compose(m(p), m(q)));
    EXPECT_EQ(m(Policy::Star(p)), rel.Closure(m(p)));
    EXPECT_EQ(m(Policy::Neg(Policy::Neg(a))), m(a));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPolicyTest, ::testing::Range(1, 5));

TEST(NormalFormTest, Deterministic) {
  std::mt19937 rng(99);
  FieldDomains d = RandomDomains(rng);
  Policy p = RandomPolicy(rng, d, 5);
  EXPECT_EQ(NormalForm(p, d), NormalForm(p, d));
}

}  // namespace
}  // namespace dynarace
