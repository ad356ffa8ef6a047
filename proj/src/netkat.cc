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

#include <algorithm>
#include <cctype>
#include <limits>

#include "dynarace/error.h"

namespace dynarace {
namespace {

int TokenClass(std::string_view token) {
  if (token == kResidualValue) return 2;
  if (!token.empty() &&
      std::all_of(token.begin(), token.end(),
                  [](unsigned char c) { return std::isdigit(c) != 0; })) {
    return 0;
  }
  return 1;
}

std::string_view StripLeadingZeros(std::string_view digits) {
  std::size_t i = 0;
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  return digits.substr(i);
}

}  // namespace

bool ValueLess(std::string_view a, std::string_view b) {
  int ca = TokenClass(a), cb = TokenClass(b);
  if (ca != cb) return ca < cb;
  if (ca == 0) {
    std::string_view sa = StripLeadingZeros(a), sb = StripLeadingZeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

// ---------------------------------------------------------------------------
// FieldDomains

void FieldDomains::AddField(std::string name, std::vector<std::string> values,
                            bool with_residual) {
  if (FindField(name).has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate field '" + name + "'");
  }
  std::sort(values.begin(), values.end(),
            [](const std::string& a, const std::string& b) {
              return ValueLess(a, b);
            });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (with_residual) values.emplace_back(kResidualValue);
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "field '" + name + "' has an empty domain");
  }
  fields_.push_back(Field{std::move(name), std::move(values), with_residual});
}

const std::string& FieldDomains::field_name(std::size_t field) const {
  return fields_.at(field).name;
}

std::size_t FieldDomains::value_count(std::size_t field) const {
  return fields_.at(field).values.size();
}

const std::string& FieldDomains::value_name(std::size_t field,
                                            ValueId value) const {
  return fields_.at(field).values.at(value);
}

bool FieldDomains::has_residual(std::size_t field) const {
  return fields_.at(field).residual;
}

std::optional<std::size_t> FieldDomains::FindField(
    std::string_view name) const {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<ValueId> FieldDomains::FindValue(std::size_t field,
                                               std::string_view value) const {
  const auto& values = fields_.at(field).values;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<ValueId>(i);
  }
  return std::nullopt;
}

std::uint64_t FieldDomains::PacketSpaceSize() const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 1;
  for (const Field& f : fields_) {
    if (size > kMax / f.values.size()) return kMax;
    size *= f.values.size();
  }
  return size;
}

// ---------------------------------------------------------------------------
// Packets

Packet MakePacket(
    const FieldDomains& domains,
    std::span<const std::pair<std::string_view, std::string_view>> fields) {
  Packet packet;
  packet.values.assign(domains.field_count(),
                       std::numeric_limits<ValueId>::max());
  for (const auto& [name, value] : fields) {
    auto field = domains.FindField(name);
    if (!field) {
      throw Error(ErrorCode::kUndeclaredValue,
                  "unknown field '" + std::string(name) + "'");
    }
    auto id = domains.FindValue(*field, value);
    if (!id) {
      throw Error(ErrorCode::kUndeclaredValue,
                  "value '" + std::string(value) + "' not in domain of '" +
                      std::string(name) + "'");
    }
    packet.values[*field] = *id;
  }
  for (std::size_t f = 0; f < packet.values.size(); ++f) {
    if (packet.values[f] == std::numeric_limits<ValueId>::max()) {
      throw Error(ErrorCode::kUndeclaredValue,
                  "packet is missing field '" + domains.field_name(f) + "'");
    }
  }
  return packet;
}

Packet MakePacket(
    const FieldDomains& domains,
    std::initializer_list<std::pair<std::string_view, std::string_view>>
        fields) {
  return MakePacket(
      domains,
      std::span<const std::pair<std::string_view, std::string_view>>(
          fields.begin(), fields.size()));
}

std::string FormatPacket(const Packet& packet, const FieldDomains& domains) {
  std::string out = "{";
  for (std::size_t f = 0; f < packet.values.size(); ++f) {
    if (f > 0) out += ", ";
    out += domains.field_name(f) + "=" +
           domains.value_name(f, packet.values[f]);
  }
  return out + "}";
}

namespace {

std::string FormatFieldChain(const Packet& packet, const FieldDomains& domains,
                             std::string_view op) {
  std::string out;
  for (std::size_t f = 0; f < packet.values.size(); ++f) {
    if (f > 0) out += " . ";
    out += "(" + domains.field_name(f) + " " + std::string(op) + " " +
           domains.value_name(f, packet.values[f]) + ")";
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string FormatCompleteTest(const Packet& packet,
                               const FieldDomains& domains) {
  return FormatFieldChain(packet, domains, "=");
}

std::string FormatCompleteAssignment(const Packet& packet,
                                     const FieldDomains& domains) {
  return FormatFieldChain(packet, domains, "<-");
}

// ---------------------------------------------------------------------------
// Policy AST

struct Policy::Node {
  Kind kind;
  std::string field;
  std::string value;
  std::optional<Policy> lhs;
  std::optional<Policy> rhs;
  bool predicate;
};

Policy::Policy(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Policy Policy::Zero() {
  static const Policy kZero(std::make_shared<const Node>(
      Node{Kind::kZero, {}, {}, std::nullopt, std::nullopt, true}));
  return kZero;
}

Policy Policy::One() {
  static const Policy kOne(std::make_shared<const Node>(
      Node{Kind::kOne, {}, {}, std::nullopt, std::nullopt, true}));
  return kOne;
}

Policy Policy::Test(std::string field, std::string value) {
  return Policy(std::make_shared<const Node>(Node{Kind::kTest, std::move(field),
                                                  std::move(value),
                                                  std::nullopt, std::nullopt,
                                                  true}));
}

Policy Policy::Assign(std::string field, std::string value) {
  return Policy(std::make_shared<const Node>(
      Node{Kind::kAssign, std::move(field), std::move(value), std::nullopt,
           std::nullopt, false}));
}

Policy Policy::Neg(Policy predicate) {
  if (!predicate.is_predicate()) {
    throw Error(ErrorCode::kSyntaxError,
                "negation applied to non-predicate '" + predicate.ToString() +
                    "'");
  }
  return Policy(std::make_shared<const Node>(
      Node{Kind::kNeg, {}, {}, std::move(predicate), std::nullopt, true}));
}

Policy Policy::Union(Policy lhs, Policy rhs) {
  bool predicate = lhs.is_predicate() && rhs.is_predicate();
  return Policy(std::make_shared<const Node>(
      Node{Kind::kUnion, {}, {}, std::move(lhs), std::move(rhs), predicate}));
}

Policy Policy::Seq(Policy lhs, Policy rhs) {
  bool predicate = lhs.is_predicate() && rhs.is_predicate();
  return Policy(std::make_shared<const Node>(
      Node{Kind::kSeq, {}, {}, std::move(lhs), std::move(rhs), predicate}));
}

Policy Policy::Star(Policy body) {
  return Policy(std::make_shared<const Node>(
      Node{Kind::kStar, {}, {}, std::move(body), std::nullopt, false}));
}

Policy::Kind Policy::kind() const { return node_->kind; }
bool Policy::is_predicate() const { return node_->predicate; }
const std::string& Policy::field() const { return node_->field; }
const std::string& Policy::value() const { return node_->value; }
const Policy& Policy::lhs() const { return *node_->lhs; }
const Policy& Policy::rhs() const { return *node_->rhs; }

std::strong_ordering operator<=>(const Policy& a, const Policy& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Policy::Kind::kZero:
    case Policy::Kind::kOne:
      return std::strong_ordering::equal;
    case Policy::Kind::kTest:
    case Policy::Kind::kAssign:
      if (auto c = a.field() <=> b.field(); c != 0) return c;
      return a.value() <=> b.value();
    case Policy::Kind::kNeg:
    case Policy::Kind::kStar:
      return a.lhs() <=> b.lhs();
    case Policy::Kind::kUnion:
    case Policy::Kind::kSeq:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
  return std::strong_ordering::equal;
}

bool operator==(const Policy& a, const Policy& b) { return (a <=> b) == 0; }

namespace {

// Binding strength used when printing: + < . < (~, *) < atoms.
int Level(const Policy& p) {
  switch (p.kind()) {
    case Policy::Kind::kUnion:
      return 0;
    case Policy::Kind::kSeq:
      return 1;
    case Policy::Kind::kNeg:
    case Policy::Kind::kStar:
      return 2;
    default:
      return 3;
  }
}

void Render(const Policy& p, int min_level, std::string& out) {
  bool parens = Level(p) < min_level;
  if (parens) out += '(';
  switch (p.kind()) {
    case Policy::Kind::kZero:
      out += '0';
      break;
    case Policy::Kind::kOne:
      out += '1';
      break;
    case Policy::Kind::kTest:
      out += "(" + p.field() + " = " + p.value() + ")";
      break;
    case Policy::Kind::kAssign:
      out += "(" + p.field() + " <- " + p.value() + ")";
      break;
    case Policy::Kind::kNeg:
      out += '~';
      Render(p.lhs(), 2, out);
      break;
    case Policy::Kind::kStar:
      Render(p.lhs(), 3, out);
      out += '*';
      break;
    case Policy::Kind::kUnion:
      Render(p.lhs(), 0, out);
      out += " + ";
      Render(p.rhs(), 1, out);
      break;
    case Policy::Kind::kSeq:
      Render(p.lhs(), 1, out);
      out += " . ";
      Render(p.rhs(), 2, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Policy::ToString() const {
  std::string out;
  Render(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : text_(text) {}

  Policy ParseAll() {
    Policy p = ParseUnion();
    SkipSpace();
    if (pos_ < text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorCode::kSyntaxError,
                "column " + std::to_string(pos_ + 1) + ": " + message);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(std::string_view token) {
    SkipSpace();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string Word() {
    SkipSpace();
    std::size_t start = pos_;
    if (pos_ < text_.size() && IsIdentStart(text_[pos_])) {
      while (pos_ < text_.size() && IsIdentChar(text_[pos_])) ++pos_;
    } else {
      while (pos_ < text_.size() && IsDigit(text_[pos_])) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Policy ParseUnion() {
    Policy p = ParseSeq();
    while (Accept("+")) p = Policy::Union(p, ParseSeq());
    return p;
  }

  Policy ParseSeq() {
    Policy p = ParseUnary();
    while (Accept(".")) p = Policy::Seq(p, ParseUnary());
    return p;
  }

  Policy ParseUnary() {
    SkipSpace();
    std::size_t at = pos_;
    if (Accept("~")) {
      Policy operand = ParseUnary();
      if (!operand.is_predicate()) {
        pos_ = at;
        Fail("'~' applies only to predicates");
      }
      return Policy::Neg(operand);
    }
    Policy p = ParseAtom();
    while (Accept("*")) p = Policy::Star(p);
    return p;
  }

  Policy ParseAtom() {
    SkipSpace();
    if (Accept("(")) {
      Policy p = ParseUnion();
      if (!Accept(")")) Fail("expected ')'");
      return p;
    }
    if (pos_ >= text_.size()) Fail("unexpected end of policy");
    char c = text_[pos_];
    if (IsDigit(c)) {
      std::string number = Word();
      if (number == "0") return Policy::Zero();
      if (number == "1") return Policy::One();
      Fail("unexpected number '" + number + "'");
    }
    if (!IsIdentStart(c)) Fail("unexpected '" + std::string(1, c) + "'");
    std::string field = Word();
    bool assign;
    if (Accept("<-")) {
      assign = true;
    } else if (Accept("=")) {
      assign = false;
    } else {
      Fail("expected '=' or '<-' after field '" + field + "'");
    }
    SkipSpace();
    if (pos_ >= text_.size() ||
        !(IsIdentStart(text_[pos_]) || IsDigit(text_[pos_]))) {
      Fail("expected a value for field '" + field + "'");
    }
    std::string value = Word();
    return assign ? Policy::Assign(std::move(field), std::move(value))
                  : Policy::Test(std::move(field), std::move(value));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void CollectLiterals(const Policy& p,
                     std::vector<std::pair<std::string, std::string>>& out) {
  switch (p.kind()) {
    case Policy::Kind::kTest:
    case Policy::Kind::kAssign:
      out.emplace_back(p.field(), p.value());
      break;
    case Policy::Kind::kNeg:
    case Policy::Kind::kStar:
      CollectLiterals(p.lhs(), out);
      break;
    case Policy::Kind::kUnion:
    case Policy::Kind::kSeq:
      CollectLiterals(p.lhs(), out);
      CollectLiterals(p.rhs(), out);
      break;
    default:
      break;
  }
}

}  // namespace

Policy ParsePolicy(std::string_view text) {
  return PolicyParser(text).ParseAll();
}

std::vector<std::pair<std::string, std::string>> PolicyLiterals(
    const Policy& policy) {
  std::vector<std::pair<std::string, std::string>> out;
  CollectLiterals(policy, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using Index = std::uint64_t;
using IndexSet = std::vector<Index>;  // sorted, unique

// Mixed-radix packet encoding; the first field is most significant so index
// order coincides with canonical packet order.
class PacketCodec {
 public:
  explicit PacketCodec(const FieldDomains& domains)
      : radix_(domains.field_count()), stride_(domains.field_count()) {
    Index stride = 1;
    for (std::size_t f = domains.field_count(); f-- > 0;) {
      radix_[f] = domains.value_count(f);
      stride_[f] = stride;
      stride *= radix_[f];
    }
  }

  Index Encode(const Packet& packet) const {
    Index x = 0;
    for (std::size_t f = 0; f < stride_.size(); ++f) {
      x += packet.values.at(f) * stride_[f];
    }
    return x;
  }

  Packet Decode(Index x) const {
    Packet packet;
    packet.values.resize(stride_.size());
    for (std::size_t f = 0; f < stride_.size(); ++f) {
      packet.values[f] = static_cast<ValueId>(Digit(x, f));
    }
    return packet;
  }

  Index Digit(Index x, std::size_t f) const { return (x / stride_[f]) % radix_[f]; }

  Index Set(Index x, std::size_t f, Index v) const {
    return x - Digit(x, f) * stride_[f] + v * stride_[f];
  }

 private:
  std::vector<Index> radix_;
  std::vector<Index> stride_;
};

// Policy resolved against a FieldDomains, flattened into a node array.
class CompiledPolicy {
 public:
  CompiledPolicy(const Policy& policy, const FieldDomains& domains)
      : codec_(domains) {
    root_ = Compile(policy, domains);
  }

  IndexSet Eval(Index x) const { return Eval(root_, x); }
  const PacketCodec& codec() const { return codec_; }

 private:
  struct Node {
    Policy::Kind kind;
    std::size_t field = 0;
    Index value = 0;
    int lhs = -1;
    int rhs = -1;
  };

  int Compile(const Policy& p, const FieldDomains& domains) {
    Node node{p.kind()};
    switch (p.kind()) {
      case Policy::Kind::kTest:
      case Policy::Kind::kAssign: {
        auto field = domains.FindField(p.field());
        if (!field) {
          throw Error(ErrorCode::kUndeclaredValue,
                      "field '" + p.field() + "' is not in the domains");
        }
        auto value = domains.FindValue(*field, p.value());
        if (!value) {
          throw Error(ErrorCode::kUndeclaredValue,
                      "value '" + p.value() + "' is not in the domain of '" +
                          p.field() + "'");
        }
        node.field = *field;
        node.value = *value;
        break;
      }
      case Policy::Kind::kNeg:
      case Policy::Kind::kStar:
        node.lhs = Compile(p.lhs(), domains);
        break;
      case Policy::Kind::kUnion:
      case Policy::Kind::kSeq:
        node.lhs = Compile(p.lhs(), domains);
        node.rhs = Compile(p.rhs(), domains);
        break;
      default:
        break;
    }
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size() - 1);
  }

  static IndexSet Merge(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
  }

  IndexSet Eval(int id, Index x) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Policy::Kind::kZero:
        return {};
      case Policy::Kind::kOne:
        return {x};
      case Policy::Kind::kTest:
        if (codec_.Digit(x, n.field) == n.value) return {x};
        return {};
      case Policy::Kind::kNeg:
        if (Eval(n.lhs, x).empty()) return {x};
        return {};
      case Policy::Kind::kAssign:
        return {codec_.Set(x, n.field, n.value)};
      case Policy::Kind::kUnion:
        return Merge(Eval(n.lhs, x), Eval(n.rhs, x));
      case Policy::Kind::kSeq: {
        IndexSet out;
        for (Index y : Eval(n.lhs, x)) out = Merge(out, Eval(n.rhs, y));
        return out;
      }
      case Policy::Kind::kStar: {
        // Least fixpoint of F^0 = {x}, F^{i+1} = [[p]] . F^i.
        std::set<Index> reached = {x};
        IndexSet frontier = {x};
        while (!frontier.empty()) {
          IndexSet next;
          for (Index y : frontier) {
            for (Index z : Eval(n.lhs, y)) {
              if (reached.insert(z).second) next.push_back(z);
            }
          }
          frontier = std::move(next);
        }
        return IndexSet(reached.begin(), reached.end());
      }
    }
    return {};
  }

  PacketCodec codec_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

void CheckPacket(const Packet& packet, const FieldDomains& domains) {
  if (packet.values.size() != domains.field_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "packet is not total over the field domains");
  }
  for (std::size_t f = 0; f < packet.values.size(); ++f) {
    if (packet.values[f] >= domains.value_count(f)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "packet value out of range for field '" +
                      domains.field_name(f) + "'");
    }
  }
}

}  // namespace

PacketSet EvalPolicy(const Policy& policy, const Packet& packet,
                     const FieldDomains& domains) {
  CheckPacket(packet, domains);
  CompiledPolicy compiled(policy, domains);
  PacketSet out;
  for (Index y : compiled.Eval(compiled.codec().Encode(packet))) {
    out.insert(compiled.codec().Decode(y));
  }
  return out;
}

bool PacketRelation::Contains(const Packet& alpha, const Packet& pi) const {
  return std::binary_search(pairs.begin(), pairs.end(),
                            std::make_pair(alpha, pi));
}

PacketRelation NormalForm(const Policy& policy, const FieldDomains& domains,
                          std::uint64_t packet_space_cap) {
  const std::uint64_t space = domains.PacketSpaceSize();
  if (space > packet_space_cap) {
    throw Error(ErrorCode::kDomainTooLarge,
                "packet space of " + std::to_string(space) +
                    " packets exceeds the cap of " +
                    std::to_string(packet_space_cap) +
                    "; declare smaller field domains");
  }
  CompiledPolicy compiled(policy, domains);
  const PacketCodec& codec = compiled.codec();
  PacketRelation relation;
  for (Index x = 0; x < space; ++x) {
    IndexSet image = compiled.Eval(x);
    if (image.empty()) continue;
    Packet alpha = codec.Decode(x);
    for (Index y : image) relation.pairs.emplace_back(alpha, codec.Decode(y));
  }
  return relation;
}

bool PolicyEquiv(const Policy& p, const Policy& q, const FieldDomains& domains,
                 std::uint64_t packet_space_cap) {
  return NormalForm(p, domains, packet_space_cap) ==
         NormalForm(q, domains, packet_space_cap);
}

// ---------------------------------------------------------------------------
// Domain inference

FieldDomains InferDomains(std::span<const Policy> policies,
                          const std::optional<FieldDomains>& declared) {
  std::vector<std::pair<std::string, std::string>> literals;
  for (const Policy& p : policies) CollectLiterals(p, literals);

  if (declared.has_value()) {
    for (const auto& [field, value] : literals) {
      auto f = declared->FindField(field);
      if (!f) {
        throw Error(ErrorCode::kUndeclaredValue,
                    "field '" + field + "' is not declared");
      }
      if (!declared->FindValue(*f, value)) {
        throw Error(ErrorCode::kUndeclaredValue,
                    "value '" + value + "' is not in the declared domain of '" +
                        field + "'");
      }
    }
    return *declared;
  }

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> values;
  for (const auto& [field, value] : literals) {
    auto [it, inserted] = values.try_emplace(field);
    if (inserted) order.push_back(field);
    it->second.push_back(value);
  }
  if (order.empty()) {
    throw Error(ErrorCode::kEmptyModel,
                "no packet fields occur in the model; declare a fields block");
  }
  FieldDomains domains;
  for (const std::string& field : order) {
    domains.AddField(field, values[field], /*with_residual=*/true);
  }
  return domains;
}

}  // namespace dynarace
