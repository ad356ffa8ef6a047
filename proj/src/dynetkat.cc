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

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "dynarace/error.h"

namespace dynarace {

// ---------------------------------------------------------------------------
// Message

Message Message::Token(std::string name) {
  Message m;
  m.kind_ = Kind::kToken;
  m.text_ = std::move(name);
  return m;
}

Message Message::FromPolicy(Policy policy, std::string source) {
  Message m;
  m.kind_ = Kind::kPolicy;
  m.text_ = std::move(source);
  m.policy_ = std::move(policy);
  return m;
}

std::string Message::ToString() const {
  return kind_ == Kind::kToken ? text_ : Quoted();
}

std::strong_ordering operator<=>(const Message& a, const Message& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == Message::Kind::kPolicy) {
    if (auto c = *a.policy_ <=> *b.policy_; c != 0) return c;
  }
  return a.text_ <=> b.text_;
}

bool MessagesMatch(const Message& a, const Message& b,
                   const FieldDomains& domains) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Message::Kind::kToken) return a.token() == b.token();
  return PolicyEquiv(a.policy(), b.policy(), domains);
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::optional<Policy> policy;
  std::string text;  // channel or variable name
  std::optional<Message> message;
  std::optional<Term> lhs;  // continuation for prefixes
  std::optional<Term> rhs;
};

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::Bot() {
  static const Term kBot(std::make_shared<const Node>(Node{
      Kind::kBot, std::nullopt, {}, std::nullopt, std::nullopt, std::nullopt}));
  return kBot;
}

Term Term::Prefix(Policy policy, Term cont) {
  return Term(std::make_shared<const Node>(Node{
      Kind::kPolicyPrefix, std::move(policy), {}, std::nullopt,
      std::move(cont), std::nullopt}));
}

Term Term::Send(std::string channel, Message message, Term cont) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kSend, std::nullopt, std::move(channel), std::move(message),
           std::move(cont), std::nullopt}));
}

Term Term::Recv(std::string channel, Message message, Term cont) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kRecv, std::nullopt, std::move(channel), std::move(message),
           std::move(cont), std::nullopt}));
}

Term Term::Par(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{
      Kind::kPar, std::nullopt, {}, std::nullopt, std::move(lhs),
      std::move(rhs)}));
}

Term Term::Choice(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{
      Kind::kChoice, std::nullopt, {}, std::nullopt, std::move(lhs),
      std::move(rhs)}));
}

Term Term::Var(std::string name) {
  return Term(std::make_shared<const Node>(Node{
      Kind::kVar, std::nullopt, std::move(name), std::nullopt, std::nullopt,
      std::nullopt}));
}

Term::Kind Term::kind() const { return node_->kind; }
const Policy& Term::policy() const { return *node_->policy; }
const std::string& Term::channel() const { return node_->text; }
const Message& Term::message() const { return *node_->message; }
const Term& Term::cont() const { return *node_->lhs; }
const Term& Term::lhs() const { return *node_->lhs; }
const Term& Term::rhs() const { return *node_->rhs; }
const std::string& Term::name() const { return node_->text; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Term::Kind::kBot:
      return std::strong_ordering::equal;
    case Term::Kind::kVar:
      return a.name() <=> b.name();
    case Term::Kind::kPolicyPrefix:
      if (auto c = a.policy() <=> b.policy(); c != 0) return c;
      return a.cont() <=> b.cont();
    case Term::Kind::kSend:
    case Term::Kind::kRecv:
      if (auto c = a.channel() <=> b.channel(); c != 0) return c;
      if (auto c = a.message() <=> b.message(); c != 0) return c;
      return a.cont() <=> b.cont();
    case Term::Kind::kPar:
    case Term::Kind::kChoice:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
  return std::strong_ordering::equal;
}

namespace {

// || < o+ < prefix < atoms
int Level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kPar:
      return 0;
    case Term::Kind::kChoice:
      return 1;
    case Term::Kind::kPolicyPrefix:
    case Term::Kind::kSend:
    case Term::Kind::kRecv:
      return 2;
    default:
      return 3;
  }
}

void Render(const Term& t, int min_level, std::string& out) {
  bool parens = Level(t) < min_level;
  if (parens) out += '(';
  switch (t.kind()) {
    case Term::Kind::kBot:
      out += "bot";
      break;
    case Term::Kind::kVar:
      out += t.name();
      break;
    case Term::Kind::kPolicyPrefix:
      out += "\"" + t.policy().ToString() + "\" ; ";
      Render(t.cont(), 2, out);
      break;
    case Term::Kind::kSend:
    case Term::Kind::kRecv:
      out += t.channel();
      out += t.kind() == Term::Kind::kSend ? " ! " : " ? ";
      out += t.message().ToString() + " ; ";
      Render(t.cont(), 2, out);
      break;
    case Term::Kind::kPar:
      Render(t.lhs(), 0, out);
      out += " || ";
      Render(t.rhs(), 1, out);
      break;
    case Term::Kind::kChoice:
      Render(t.lhs(), 1, out);
      out += " o+ ";
      Render(t.rhs(), 2, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Term::ToString() const {
  std::string out;
  Render(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// ParsedModel

const Definition* ParsedModel::FindDefinition(std::string_view name) const {
  for (const Definition& d : definitions) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<std::string> ParsedModel::ComponentNames() const {
  std::vector<std::string> names;
  for (const Term& t : init) {
    names.push_back(t.kind() == Term::Kind::kVar ? t.name() : t.ToString());
  }
  return names;
}

namespace {

void CollectPolicies(const Term& t, std::vector<Policy>& out) {
  switch (t.kind()) {
    case Term::Kind::kPolicyPrefix:
      out.push_back(t.policy());
      CollectPolicies(t.cont(), out);
      break;
    case Term::Kind::kSend:
    case Term::Kind::kRecv:
      if (t.message().kind() == Message::Kind::kPolicy) {
        out.push_back(t.message().policy());
      }
      CollectPolicies(t.cont(), out);
      break;
    case Term::Kind::kPar:
    case Term::Kind::kChoice:
      CollectPolicies(t.lhs(), out);
      CollectPolicies(t.rhs(), out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<Policy> ParsedModel::Policies() const {
  std::vector<Policy> out;
  for (const Definition& d : definitions) CollectPolicies(d.body, out);
  for (const Term& t : init) CollectPolicies(t, out);
  return out;
}

FieldDomains InferDomains(const ParsedModel& model,
                          const std::optional<FieldDomains>& declared) {
  std::vector<Policy> policies = model.Policies();
  return InferDomains(std::span<const Policy>(policies), declared);
}

FieldDomains InferDomains(const ParsedModel& model) {
  return InferDomains(model, model.declared_domains);
}

// ---------------------------------------------------------------------------
// Model parser

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kString,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kColon,
  kSemi,
  kComma,
  kEquals,
  kBang,
  kQuery,
  kPar,
  kOPlus,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string Where(SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

[[noreturn]] void Fail(ErrorCode code, SourcePos pos,
                       const std::string& message) {
  throw Error(code, Where(pos) + ": " + message);
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> tokens;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (text.substr(i, 2) == "//") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = pos;
    if (c == 'o' && i + 1 < text.size() && text[i + 1] == '+') {
      tokens.push_back({Tok::kOPlus, "o+", start});
      advance(2);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_')) {
        ++j;
      }
      tokens.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      tokens.push_back(
          {Tok::kNumber, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') {
        Fail(ErrorCode::kSyntaxError, start, "unterminated string");
      }
      tokens.push_back(
          {Tok::kString, std::string(text.substr(i + 1, j - i - 1)), start});
      advance(j - i + 1);
      continue;
    }
    if (text.substr(i, 2) == "||") {
      tokens.push_back({Tok::kPar, "||", start});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '{': kind = Tok::kLBrace; break;
      case '}': kind = Tok::kRBrace; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ':': kind = Tok::kColon; break;
      case ';': kind = Tok::kSemi; break;
      case ',': kind = Tok::kComma; break;
      case '=': kind = Tok::kEquals; break;
      case '!': kind = Tok::kBang; break;
      case '?': kind = Tok::kQuery; break;
      default:
        Fail(ErrorCode::kSyntaxError, start,
             "unexpected character '" + std::string(1, c) + "'");
    }
    tokens.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  tokens.push_back({Tok::kEnd, "end of input", pos});
  return tokens;
}

bool IsKeyword(std::string_view word) {
  return word == "fields" || word == "channels" || word == "def" ||
         word == "init" || word == "bot";
}

struct VarUse {
  std::string name;
  SourcePos pos;
};

struct ChannelUse {
  std::string name;
  SourcePos pos;
};

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : tokens_(Lex(text)) {}

  ParsedModel Parse() {
    ParsedModel model;
    bool have_init = false;
    bool have_channels = false;
    std::set<std::string> declared_channels;
    while (Peek().kind != Tok::kEnd) {
      const Token& t = Peek();
      if (t.kind != Tok::kIdent) Unexpected("'fields', 'channels', 'def' or 'init'");
      if (t.text == "fields") {
        if (model.declared_domains) {
          Fail(ErrorCode::kSyntaxError, t.pos, "duplicate fields block");
        }
        model.declared_domains = ParseFields();
      } else if (t.text == "channels") {
        Next();
        have_channels = true;
        do {
          declared_channels.insert(ExpectIdent("channel name").text);
        } while (Accept(Tok::kComma));
        Expect(Tok::kSemi, "';'");
      } else if (t.text == "def") {
        Next();
        Token name = ExpectIdent("definition name");
        if (model.FindDefinition(name.text)) {
          Fail(ErrorCode::kDuplicateDefinition, name.pos,
               "'" + name.text + "' is defined more than once");
        }
        Expect(Tok::kEquals, "'='");
        Term body = ParsePar();
        Expect(Tok::kSemi, "';'");
        model.definitions.push_back({name.text, std::move(body), name.pos});
      } else if (t.text == "init") {
        if (have_init) Fail(ErrorCode::kSyntaxError, t.pos, "duplicate init");
        have_init = true;
        init_pos_ = t.pos;
        Next();
        Term init = ParsePar();
        Expect(Tok::kSemi, "';'");
        Flatten(init, model.init);
      } else {
        Unexpected("'fields', 'channels', 'def' or 'init'");
      }
    }
    for (const Definition& d : model.definitions) {
      if (ContainsPar(d.body)) {
        Fail(ErrorCode::kParInsideDefinition, d.pos,
             "parallel composition inside definition '" + d.name + "'");
      }
    }
    for (const Term& component : model.init) {
      if (ContainsPar(component)) {
        Fail(ErrorCode::kParInsideDefinition, init_pos_,
             "parallel composition is only allowed at the top of init");
      }
    }
    for (const VarUse& use : var_uses_) {
      if (!model.FindDefinition(use.name)) {
        Fail(ErrorCode::kUnboundVariable, use.pos,
             "'" + use.name + "' is not defined");
      }
    }
    CheckGuarded(model);
    if (!have_init) {
      Fail(ErrorCode::kSyntaxError, Peek().pos, "missing 'init' declaration");
    }

    std::set<std::string> channels = declared_channels;
    for (const ChannelUse& use : channel_uses_) {
      if (have_channels && !declared_channels.contains(use.name)) {
        Fail(ErrorCode::kUndeclaredChannel, use.pos,
             "channel '" + use.name + "' is not declared");
      }
      channels.insert(use.name);
    }
    model.channels.assign(channels.begin(), channels.end());
    return model;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  bool Accept(Tok kind) {
    if (Peek().kind != kind) return false;
    Next();
    return true;
  }

  [[noreturn]] void Unexpected(const std::string& expected) const {
    const Token& t = Peek();
    Fail(ErrorCode::kSyntaxError, t.pos,
         "expected " + expected + ", found '" + t.text + "'");
  }

  const Token& Expect(Tok kind, const std::string& what) {
    if (Peek().kind != kind) Unexpected(what);
    return Next();
  }

  Token ExpectIdent(const std::string& what) {
    if (Peek().kind != Tok::kIdent || IsKeyword(Peek().text)) Unexpected(what);
    return Next();
  }

  FieldDomains ParseFields() {
    Next();  // fields
    Expect(Tok::kLBrace, "'{'");
    FieldDomains domains;
    while (Peek().kind == Tok::kIdent) {
      Token field = ExpectIdent("field name");
      Expect(Tok::kColon, "':'");
      Expect(Tok::kLBrace, "'{'");
      std::vector<std::string> values;
      do {
        if (Peek().kind != Tok::kIdent && Peek().kind != Tok::kNumber) {
          Unexpected("a field value");
        }
        values.push_back(Next().text);
      } while (Accept(Tok::kComma));
      Expect(Tok::kRBrace, "'}'");
      Accept(Tok::kSemi);
      if (domains.FindField(field.text)) {
        Fail(ErrorCode::kSyntaxError, field.pos,
             "field '" + field.text + "' declared twice");
      }
      domains.AddField(field.text, std::move(values));
    }
    Expect(Tok::kRBrace, "'}'");
    Accept(Tok::kSemi);
    return domains;
  }

  Term ParsePar() {
    Term t = ParseChoice();
    while (Accept(Tok::kPar)) t = Term::Par(t, ParseChoice());
    return t;
  }

  Term ParseChoice() {
    Term t = ParseSeq();
    while (Accept(Tok::kOPlus)) t = Term::Choice(t, ParseSeq());
    return t;
  }

  Policy ParseQuotedPolicy(const Token& t) {
    try {
      return ParsePolicy(t.text);
    } catch (const Error& e) {
      Fail(ErrorCode::kSyntaxError, t.pos,
           "in policy \"" + t.text + "\": " + e.what());
    }
  }

  Message ParseMessage() {
    const Token& t = Peek();
    if (t.kind == Tok::kString) {
      Token s = Next();
      return Message::FromPolicy(ParseQuotedPolicy(s), s.text);
    }
    if ((t.kind == Tok::kIdent && !IsKeyword(t.text)) ||
        t.kind == Tok::kNumber) {
      return Message::Token(Next().text);
    }
    Unexpected("a message (identifier, number or quoted policy)");
  }

  Term ParseSeq() {
    const Token& t = Peek();
    if (t.kind == Tok::kString) {
      Token s = Next();
      Policy policy = ParseQuotedPolicy(s);
      Expect(Tok::kSemi, "';' after policy");
      return Term::Prefix(std::move(policy), ParseSeq());
    }
    if (t.kind == Tok::kIdent && t.text == "bot") {
      Next();
      return Term::Bot();
    }
    if (t.kind == Tok::kIdent && !IsKeyword(t.text)) {
      Tok after = Peek(1).kind;
      if (after == Tok::kBang || after == Tok::kQuery) {
        Token channel = Next();
        Next();
        channel_uses_.push_back({channel.text, channel.pos});
        Message message = ParseMessage();
        Expect(Tok::kSemi, "';' after message");
        Term cont = ParseSeq();
        return after == Tok::kBang
                   ? Term::Send(channel.text, std::move(message), cont)
                   : Term::Recv(channel.text, std::move(message), cont);
      }
      Token name = Next();
      var_uses_.push_back({name.text, name.pos});
      return Term::Var(name.text);
    }
    if (Accept(Tok::kLParen)) {
      Term inner = ParsePar();
      Expect(Tok::kRParen, "')'");
      return inner;
    }
    Unexpected("a term");
  }

  static bool ContainsPar(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kPar:
        return true;
      case Term::Kind::kPolicyPrefix:
      case Term::Kind::kSend:
      case Term::Kind::kRecv:
        return ContainsPar(t.cont());
      case Term::Kind::kChoice:
        return ContainsPar(t.lhs()) || ContainsPar(t.rhs());
      default:
        return false;
    }
  }

  static void Flatten(const Term& t, std::vector<Term>& out) {
    if (t.kind() == Term::Kind::kPar) {
      Flatten(t.lhs(), out);
      Flatten(t.rhs(), out);
    } else {
      out.push_back(t);
    }
  }

  // Variables reachable from a definition body without crossing a prefix.
  static void HeadVars(const Term& t, std::vector<std::string>& out) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        out.push_back(t.name());
        break;
      case Term::Kind::kChoice:
      case Term::Kind::kPar:
        HeadVars(t.lhs(), out);
        HeadVars(t.rhs(), out);
        break;
      default:
        break;
    }
  }

  void CheckGuarded(const ParsedModel& model) const {
    std::map<std::string, std::vector<std::string>> graph;
    for (const Definition& d : model.definitions) {
      HeadVars(d.body, graph[d.name]);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::function<void(const Definition&)> visit = [&](const Definition& d) {
      state[d.name] = 1;
      for (const std::string& next : graph[d.name]) {
        if (state[next] == 1) {
          Fail(ErrorCode::kUnguardedRecursion, d.pos,
               "unguarded recursion through '" + next + "' in '" + d.name +
                   "'");
        }
        if (state[next] == 0) visit(*model.FindDefinition(next));
      }
      state[d.name] = 2;
    };
    for (const Definition& d : model.definitions) {
      if (state[d.name] == 0) visit(d);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourcePos init_pos_;
  std::vector<VarUse> var_uses_;
  std::vector<ChannelUse> channel_uses_;
};

}  // namespace

ParsedModel ParseModel(std::string_view text) {
  return ModelParser(text).Parse();
}

// ---------------------------------------------------------------------------
// Head normal forms

std::strong_ordering operator<=>(const Summand& a, const Summand& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.alpha <=> b.alpha; c != 0) return c;
  if (auto c = a.pi <=> b.pi; c != 0) return c;
  if (auto c = a.channel <=> b.channel; c != 0) return c;
  if (a.message.has_value() != b.message.has_value()) {
    return a.message.has_value() ? std::strong_ordering::greater
                                 : std::strong_ordering::less;
  }
  if (a.message) {
    if (auto c = *a.message <=> *b.message; c != 0) return c;
  }
  return a.cont <=> b.cont;
}

HnfEngine::HnfEngine(const ParsedModel& model, const FieldDomains& domains,
                     std::uint64_t packet_space_cap)
    : model_(model), domains_(domains), cap_(packet_space_cap) {}

const PacketRelation& HnfEngine::NormalFormOf(const Policy& policy) {
  auto it = nf_cache_.find(policy.node_id());
  if (it == nf_cache_.end()) {
    it = nf_cache_
             .emplace(policy.node_id(),
                      CachedRelation{policy, NormalForm(policy, domains_, cap_)})
             .first;
  }
  return it->second.relation;
}

bool HnfEngine::Match(const Message& a, const Message& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Message::Kind::kToken) return a.token() == b.token();
  return NormalFormOf(a.policy()) == NormalFormOf(b.policy());
}

void HnfEngine::Expand(const Term& term, std::vector<Summand>& out,
                       int var_depth) {
  switch (term.kind()) {
    case Term::Kind::kBot:
      return;
    case Term::Kind::kPolicyPrefix:
      for (const auto& [alpha, pi] : NormalFormOf(term.policy()).pairs) {
        out.push_back(Summand{Summand::Kind::kPacket, alpha, pi, {},
                              std::nullopt, term.cont()});
      }
      return;
    case Term::Kind::kSend:
    case Term::Kind::kRecv:
      out.push_back(Summand{term.kind() == Term::Kind::kSend
                                ? Summand::Kind::kSend
                                : Summand::Kind::kRecv,
                            {}, {}, term.channel(), term.message(),
                            term.cont()});
      return;
    case Term::Kind::kChoice:
      Expand(term.lhs(), out, var_depth);
      Expand(term.rhs(), out, var_depth);
      return;
    case Term::Kind::kVar: {
      const Definition* def = model_.FindDefinition(term.name());
      if (def == nullptr) {
        throw Error(ErrorCode::kUnboundVariable,
                    "'" + term.name() + "' is not defined");
      }
      if (var_depth > static_cast<int>(model_.definitions.size())) {
        throw Error(ErrorCode::kUnguardedRecursion,
                    "unguarded recursion through '" + term.name() + "'");
      }
      Expand(def->body, out, var_depth + 1);
      return;
    }
    case Term::Kind::kPar:
      throw Error(ErrorCode::kParInsideDefinition,
                  "parallel composition below the component level: " +
                      term.ToString());
  }
}

const HeadNormalForm& HnfEngine::Compute(const Term& term, std::size_t budget) {
  if (budget == 0) return empty_;
  auto it = hnf_cache_.find(term.node_id());
  if (it != hnf_cache_.end()) return it->second.hnf;
  std::vector<Summand> summands;
  Expand(term, summands, 0);
  std::sort(summands.begin(), summands.end());
  summands.erase(std::unique(summands.begin(), summands.end()),
                 summands.end());
  return hnf_cache_
      .emplace(term.node_id(), CachedHnf{term, HeadNormalForm{std::move(summands)}})
      .first->second.hnf;
}

HeadNormalForm Hnf(const Term& term, const ParsedModel& model,
                   const FieldDomains& domains, std::size_t budget) {
  HnfEngine engine(model, domains);
  return engine.Compute(term, budget);
}

}  // namespace dynarace
