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
#include "dynarace/dynetkat.h"

#include <string>
#include <vector>

#include "dynarace/error.h"
#include "dynarace/netkat.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dynarace {
namespace {

using ::dynarace::testing::ReadFile;
using ::dynarace::testing::RelationalSemantics;

std::string RunningSource() {
  return ReadFile(std::string(DYNARACE_MODELS_DIR) + "/running_example.dnk");
}

Error ErrorOf(std::string_view text) {
  try {
    ParseModel(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "model parsed: " << text;
  return Error(ErrorCode::kInvalidArgument, "");
}

TEST(ParseModelTest, RunningExample) {
  ParsedModel m = ParseModel(RunningSource());
  std::vector<std::string> defs;
  for (const Definition& d : m.definitions) defs.push_back(d.name);
  std::sort(defs.begin(), defs.end());
  EXPECT_EQ(defs, (std::vector<std::string>{"C", "SW", "SWP"}));
  EXPECT_EQ(m.channels, (std::vector<std::string>{"Help", "Up"}));
  EXPECT_EQ(m.ComponentNames(), (std::vector<std::string>{"C", "SW"}));
  ASSERT_TRUE(m.declared_domains.has_value());
}

TEST(ParseModelTest, ErrorPaths) {
  EXPECT_EQ(ErrorOf("def X = X ; init X ;").code(),
            ErrorCode::kUnguardedRecursion);
  EXPECT_EQ(ErrorOf("def X = Y o+ \"1\" ; X ; def Y = X ; init X ;").code(),
            ErrorCode::kUnguardedRecursion);
  EXPECT_EQ(ErrorOf("init A ;").code(), ErrorCode::kUnboundVariable);
  EXPECT_EQ(ErrorOf("def A = \"1\" ; (A || A) ; init A ;").code(),
            ErrorCode::kParInsideDefinition);
  EXPECT_EQ(ErrorOf("def A = bot ; def A = bot ; init A ;").code(),
            ErrorCode::kDuplicateDefinition);
  EXPECT_EQ(ErrorOf("channels X ; def A = Z ! m ; A ; init A ;").code(),
            ErrorCode::kUndeclaredChannel);
  EXPECT_EQ(ErrorOf("def A = bot ;").code(), ErrorCode::kSyntaxError);
}

TEST(ParseModelTest, SyntaxErrorCarriesPosition) {
  Error e = ErrorOf("def A = bot ;\ninit A A ;");
  EXPECT_EQ(e.code(), ErrorCode::kSyntaxError);
  EXPECT_NE(std::string(e.what()).find("2:8"), std::string::npos) << e.what();
}

TEST(ParseModelTest, InitFlatteningAndParFreeComponents) {
  ParsedModel m = ParseModel(
      "def A = X ! m ; A ; def B = X ? m ; B ;\n"
      "init A || (B || \"pt <- 1\" ; B) ;");
  ASSERT_EQ(m.init.size(), 3u);
  EXPECT_EQ(m.init[2].kind(), Term::Kind::kPolicyPrefix);
  EXPECT_EQ(m.ComponentNames()[0], "A");
}

TEST(InferDomainsTest, RunningExampleWithoutDeclaration) {
  std::string src = RunningSource();
  std::size_t start = src.find("fields");
  src.erase(start, src.find('\n', start) - start);
  ParsedModel m = ParseModel(src);
  FieldDomains d = InferDomains(m);
  ASSERT_EQ(d.field_count(), 2u);
  EXPECT_EQ(d.field_name(0), "flag");
  EXPECT_EQ(d.value_count(0), 3u);
  EXPECT_EQ(d.value_name(0, 2), kResidualValue);
  EXPECT_EQ(d.field_name(1), "pt");
  EXPECT_EQ(d.value_count(1), 3u);
}

class RunningHnfTest : public ::testing::Test {
 protected:
  RunningHnfTest()
      : model_(ParseModel(RunningSource())), domains_(InferDomains(model_)) {}

  Summand PacketStep(std::string_view flag_in, std::string_view pt_in,
                     std::string_view flag_out, std::string_view pt_out,
                     Term cont) const {
    Summand s;
    s.kind = Summand::Kind::kPacket;
    s.alpha = MakePacket(domains_, {{"flag", flag_in}, {"pt", pt_in}});
    s.pi = MakePacket(domains_, {{"flag", flag_out}, {"pt", pt_out}});
    s.cont = std::move(cont);
    return s;
  }

  ParsedModel model_;
  FieldDomains domains_;
};

TEST_F(RunningHnfTest, Switch) {
  HeadNormalForm h = Hnf(Term::Var("SW"), model_, domains_, 3);
  Summand recv;
  recv.kind = Summand::Kind::kRecv;
  recv.channel = "Up";
  recv.message = Message::Token("one");
  recv.cont = Term::Var("SWP");
  std::vector<Summand> expected = {
      PacketStep("regular", "1", "regular", "2", Term::Var("SW")),
      PacketStep("blocking", "1", "blocking", "1",
                 Term::Send("Help", Message::Token("one"), Term::Var("SW"))),
      recv};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(h.summands, expected);
}

TEST_F(RunningHnfTest, DropAllAndController) {
  EXPECT_TRUE(Hnf(Term::Var("SWP"), model_, domains_, 3).empty());
  HeadNormalForm c = Hnf(Term::Var("C"), model_, domains_, 3);
  ASSERT_EQ(c.summands.size(), 1u);
  EXPECT_EQ(c.summands[0].kind, Summand::Kind::kRecv);
  EXPECT_EQ(c.summands[0].channel, "Help");
  EXPECT_EQ(c.summands[0].cont,
            Term::Send("Up", Message::Token("one"), Term::Var("C")));
}

TEST_F(RunningHnfTest, ZeroBudgetIsEmpty) {
  EXPECT_TRUE(Hnf(Term::Var("SW"), model_, domains_, 0).empty());
}

TEST_F(RunningHnfTest, VarExposesDefinitionBody) {
  for (const Definition& d : model_.definitions) {
    EXPECT_EQ(Hnf(Term::Var(d.name), model_, domains_, 2),
              Hnf(d.body, model_, domains_, 2));
    for (const Summand& s : Hnf(d.body, model_, domains_, 2).summands) {
      EXPECT_NE(s.cont.kind(), Term::Kind::kPar);
    }
  }
}

TEST_F(RunningHnfTest, ChoiceAndBotLaws) {
  std::vector<Term> terms;
  for (const Definition& d : model_.definitions) terms.push_back(d.body);
  terms.push_back(Term::Bot());
  for (const Term& p : terms) {
    HeadNormalForm hp = Hnf(p, model_, domains_, 1);
    EXPECT_EQ(Hnf(Term::Choice(p, p), model_, domains_, 1), hp);
    EXPECT_EQ(Hnf(Term::Choice(p, Term::Bot()), model_, domains_, 1), hp);
    for (const Term& q : terms) {
      EXPECT_EQ(Hnf(Term::Choice(p, q), model_, domains_, 1),
                Hnf(Term::Choice(q, p), model_, domains_, 1));
    }
  }
}

TEST_F(RunningHnfTest, PolicyPrefixMatchesRelation) {
  RelationalSemantics rel(domains_);
  for (const Policy& p : model_.Policies()) {
    Term t = Term::Prefix(p, Term::Bot());
    HeadNormalForm h = Hnf(t, model_, domains_, 1);
    std::vector<std::pair<Packet, Packet>> got;
    for (const Summand& s : h.summands) {
      ASSERT_EQ(s.kind, Summand::Kind::kPacket);
      got.emplace_back(s.alpha, s.pi);
    }
    EXPECT_EQ(got, rel.Pairs(p)) << p.ToString();
  }
}

TEST(MessageTest, PolicyMessagesMatchSemantically) {
  FieldDomains d;
  d.AddField("f", {"a", "b"});
  Message m1 = Message::FromPolicy(ParsePolicy("f <- a"), "f <- a");
  Message m2 = Message::FromPolicy(ParsePolicy("(f <- b) . (f <- a)"),
                                   "(f <- b) . (f <- a)");
  Message m3 = Message::FromPolicy(ParsePolicy("f <- b"), "f <- b");
  EXPECT_TRUE(MessagesMatch(m1, m2, d));
  EXPECT_FALSE(MessagesMatch(m1, m3, d));
  EXPECT_FALSE(MessagesMatch(m1, Message::Token("one"), d));
  EXPECT_TRUE(MessagesMatch(Message::Token("one"), Message::Token("one"), d));
  EXPECT_EQ(Message::Token("one").Quoted(), "\"one\"");
}

TEST(MessageTest, QuotedMessageParsesAsPolicy) {
  ParsedModel m = ParseModel(
      "def A = X ! \"f <- a\" ; A ; def B = X ? \"(f <- b) . (f <- a)\" ; B ;"
      "init A || B ;");
  EXPECT_EQ(m.definitions[0].body.message().kind(), Message::Kind::kPolicy);
  EXPECT_EQ(ErrorOf("def A = X ! \"f <-\" ; A ; init A ;").code(),
            ErrorCode::kSyntaxError);
}

}  // namespace
}  // namespace dynarace
