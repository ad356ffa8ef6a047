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
// File: symbolic.h
// -----------------------------------------------------------------------------
//
// Symbolic execution of the top-level component vector with vector clocks.
// A packet step of component i increments entry i of its own clock. A
// handshake from sender i to receiver j increments the sender's entry i,
// then sets the receiver clock to max(sender', receiver) with entry j
// incremented.

#ifndef DYNARACE_SYMBOLIC_H_
#define DYNARACE_SYMBOLIC_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dynarace/clock.h"
#include "dynarace/dynetkat.h"
#include "dynarace/netkat.h"

namespace dynarace {

struct ComponentState {
  Term term;
  VectorClock clock;

  friend bool operator==(const ComponentState&,
                         const ComponentState&) = default;
};

struct SymbolicState {
  std::vector<ComponentState> components;
  std::size_t depth_remaining = 0;

  std::vector<VectorClock> clocks() const;

  friend bool operator==(const SymbolicState&, const SymbolicState&) = default;
};

struct PacketTransition {
  std::size_t actor = 0;
  Packet alpha;
  Packet pi;

  friend bool operator==(const PacketTransition&,
                         const PacketTransition&) = default;
};

struct RcfgTransition {
  std::size_t sender = 0;
  std::size_t receiver = 0;
  std::string channel;
  Message message;

  friend bool operator==(const RcfgTransition&,
                         const RcfgTransition&) = default;
};

using TransitionLabel = std::variant<PacketTransition, RcfgTransition>;

struct Successor {
  TransitionLabel label;
  SymbolicState state;
};

// Components in init order, all clocks zero.
SymbolicState InitialState(const ParsedModel& model, std::size_t depth);

class SymbolicEngine {
 public:
  SymbolicEngine(const ParsedModel& model, const FieldDomains& domains,
                 std::uint64_t packet_space_cap = kDefaultPacketSpaceCap);

  // Handshakes first, ordered by (sender, receiver, summand order); then
  // packet steps by (component, alpha, pi). Empty once depth is exhausted.
  std::vector<Successor> Successors(const SymbolicState& state);

  // No successors although depth remains.
  bool IsDeadlock(const SymbolicState& state);

  HnfEngine& hnf() { return hnf_; }

 private:
  HnfEngine hnf_;
};

std::vector<Successor> Successors(const SymbolicState& state,
                                  const ParsedModel& model,
                                  const FieldDomains& domains);
bool IsDeadlock(const SymbolicState& state, const ParsedModel& model,
                const FieldDomains& domains);

enum class GraphMode { kRace, kFull };

using NodeId = std::size_t;

struct TreeNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::optional<TransitionLabel> label;  // edge from the parent
  SymbolicState state;
  std::size_t depth = 0;
  std::vector<NodeId> children;
  bool racy = false;
  bool deadlock = false;
  bool frontier = false;
  std::optional<std::pair<std::size_t, std::size_t>> racy_pair;
};

// Nodes are numbered as in the full expansion: expanding a node assigns
// consecutive ids to all its successors, then each successor is expanded in
// turn. In race mode racy nodes are leaves, and the ids their subtrees would
// have taken are skipped.
class ExecutionTree {
 public:
  // Ascending by id.
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  bool contains(NodeId id) const;
  // Throws kInvalidArgument for an unknown id.
  const TreeNode& node(NodeId id) const;
  // Node ids from the root to `id`, inclusive.
  std::vector<NodeId> PathTo(NodeId id) const;

  GraphMode mode() const { return mode_; }
  std::size_t depth() const { return depth_; }
  const std::vector<std::string>& component_names() const { return names_; }

 private:
  friend class TreeBuilder;
  std::vector<TreeNode> nodes_;
  GraphMode mode_ = GraphMode::kRace;
  std::size_t depth_ = 0;
  std::vector<std::string> names_;
};

// Called once per node, after its flags are set and its children (if any)
// are numbered.
using ExpansionObserver = std::function<void(const TreeNode&)>;

// Throws kDomainTooLarge (and hnf errors).
ExecutionTree BuildTree(const ParsedModel& model, const FieldDomains& domains,
                        std::size_t depth, GraphMode mode,
                        const ExpansionObserver& observer = {},
                        std::uint64_t packet_space_cap =
                            kDefaultPacketSpaceCap);

}  // namespace dynarace

#endif  // DYNARACE_SYMBOLIC_H_
