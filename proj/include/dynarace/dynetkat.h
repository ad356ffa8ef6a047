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
// File: dynetkat.h
// -----------------------------------------------------------------------------
//
// DyNetKAT terms, the model-file DSL and head normal forms.
//
// A model file looks like:
//
//   fields { flag : { regular, blocking } ; pt : { 1, 2 } ; }   // optional
//   channels Help, Up ;
//   def SW  = "(flag = regular) . (pt = 1) . (pt <- 2)" ; SW
//          o+ "(flag = blocking) . (pt = 1)" ; Help ! one ; SW
//          o+ Up ? one ; SWP ;
//   def SWP = "0" ; bot ;
//   def C   = Help ? one ; Up ! one ; C ;
//   init C || SW ;

#ifndef DYNARACE_DYNETKAT_H_
#define DYNARACE_DYNETKAT_H_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynarace/netkat.h"

namespace dynarace {

// A message exchanged over a channel: a bare token or a NetKAT policy.
class Message {
 public:
  enum class Kind { kToken, kPolicy };

  static Message Token(std::string name);
  // `source` is the quoted text as written in the model, without quotes.
  static Message FromPolicy(Policy policy, std::string source);

  Kind kind() const { return kind_; }
  const std::string& token() const { return text_; }
  const Policy& policy() const { return *policy_; }

  // Source text without quotes: the token name or the policy string.
  const std::string& text() const { return text_; }
  // "one" / "(pt <- 2)" -- the form used in traces.
  std::string Quoted() const { return "\"" + text_ + "\""; }
  // Concrete DSL syntax.
  std::string ToString() const;

  friend std::strong_ordering operator<=>(const Message& a, const Message& b);
  friend bool operator==(const Message& a, const Message& b) {
    return (a <=> b) == 0;
  }

 private:
  Kind kind_ = Kind::kToken;
  std::string text_;
  std::optional<Policy> policy_;
};

// Handshake matching: equal tokens, or semantically equal policies.
bool MessagesMatch(const Message& a, const Message& b,
                   const FieldDomains& domains);

class Term {
 public:
  enum class Kind { kBot, kPolicyPrefix, kSend, kRecv, kPar, kChoice, kVar };

  static Term Bot();
  static Term Prefix(Policy policy, Term cont);
  static Term Send(std::string channel, Message message, Term cont);
  static Term Recv(std::string channel, Message message, Term cont);
  static Term Par(Term lhs, Term rhs);
  static Term Choice(Term lhs, Term rhs);
  static Term Var(std::string name);

  Kind kind() const;
  const Policy& policy() const;         // kPolicyPrefix
  const std::string& channel() const;   // kSend / kRecv
  const Message& message() const;       // kSend / kRecv
  const Term& cont() const;             // prefixes
  const Term& lhs() const;              // kPar / kChoice
  const Term& rhs() const;              // kPar / kChoice
  const std::string& name() const;      // kVar

  std::string ToString() const;
  const void* node_id() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) {
    return (a <=> b) == 0;
  }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Definition {
  std::string name;
  Term body;
  SourcePos pos;
};

struct ParsedModel {
  // In file order.
  std::vector<Definition> definitions;
  // Sorted.
  std::vector<std::string> channels;
  std::optional<FieldDomains> declared_domains;
  // The top-level parallel composition, in init order.
  std::vector<Term> init;

  const Definition* FindDefinition(std::string_view name) const;
  // Name used for component i in traces: the variable name when the init
  // term is a variable, else the rendered term.
  std::vector<std::string> ComponentNames() const;
  // Every NetKAT policy occurring in definitions, init and messages.
  std::vector<Policy> Policies() const;
};

// Throws Error with kSyntaxError, kUnboundVariable, kUnguardedRecursion,
// kParInsideDefinition, kDuplicateDefinition or kUndeclaredChannel. Messages
// carry "line:column".
ParsedModel ParseModel(std::string_view text);

// Domain inference over the model's policies; see the netkat.h overload.
FieldDomains InferDomains(const ParsedModel& model,
                          const std::optional<FieldDomains>& declared);
// Uses the model's own fields block, if any.
FieldDomains InferDomains(const ParsedModel& model);

struct Summand {
  enum class Kind { kPacket, kSend, kRecv };

  Kind kind = Kind::kPacket;
  Packet alpha;                    // kPacket
  Packet pi;                       // kPacket
  std::string channel;             // kSend / kRecv
  std::optional<Message> message;  // kSend / kRecv
  Term cont = Term::Bot();

  friend std::strong_ordering operator<=>(const Summand& a, const Summand& b);
  friend bool operator==(const Summand& a, const Summand& b) {
    return (a <=> b) == 0;
  }
};

// Canonically ordered, duplicate-free; empty means bottom.
struct HeadNormalForm {
  std::vector<Summand> summands;

  bool empty() const { return summands.empty(); }
  friend bool operator==(const HeadNormalForm&,
                         const HeadNormalForm&) = default;
};

// Computes head normal forms against one model and domain, memoizing
// NetKAT normal forms and per-term results. Not thread-safe; use one engine
// per analysis run.
class HnfEngine {
 public:
  HnfEngine(const ParsedModel& model, const FieldDomains& domains,
            std::uint64_t packet_space_cap = kDefaultPacketSpaceCap);

  // `budget` is the remaining tree depth: zero truncates to bottom, any
  // positive value exposes every first step. Throws kParInsideDefinition on
  // a Par node.
  const HeadNormalForm& Compute(const Term& term, std::size_t budget);

  const PacketRelation& NormalFormOf(const Policy& policy);
  bool Match(const Message& a, const Message& b);

  const ParsedModel& model() const { return model_; }
  const FieldDomains& domains() const { return domains_; }

 private:
  void Expand(const Term& term, std::vector<Summand>& out, int var_depth);

  const ParsedModel& model_;
  const FieldDomains& domains_;
  std::uint64_t cap_;
  struct CachedHnf {
    Term term;
    HeadNormalForm hnf;
  };
  struct CachedRelation {
    Policy policy;
    PacketRelation relation;
  };
  std::unordered_map<const void*, CachedHnf> hnf_cache_;
  std::unordered_map<const void*, CachedRelation> nf_cache_;
  const HeadNormalForm empty_;
};

HeadNormalForm Hnf(const Term& term, const ParsedModel& model,
                   const FieldDomains& domains, std::size_t budget);

}  // namespace dynarace

#endif  // DYNARACE_DYNETKAT_H_
