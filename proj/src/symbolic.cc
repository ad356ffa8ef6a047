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
#include "dynarace/symbolic.h"

#include <algorithm>

#include "dynarace/error.h"

namespace dynarace {

std::vector<VectorClock> SymbolicState::clocks() const {
  std::vector<VectorClock> out;
  out.reserve(components.size());
  for (const ComponentState& c : components) out.push_back(c.clock);
  return out;
}

SymbolicState InitialState(const ParsedModel& model, std::size_t depth) {
  SymbolicState state;
  state.depth_remaining = depth;
  for (const Term& term : model.init) {
    state.components.push_back({term, VectorClock::Zero(model.init.size())});
  }
  return state;
}

SymbolicEngine::SymbolicEngine(const ParsedModel& model,
                               const FieldDomains& domains,
                               std::uint64_t packet_space_cap)
    : hnf_(model, domains, packet_space_cap) {}

std::vector<Successor> SymbolicEngine::Successors(const SymbolicState& state) {
  std::vector<Successor> out;
  const std::size_t budget = state.depth_remaining;
  if (budget == 0) return out;
  const std::size_t n = state.components.size();

  std::vector<const HeadNormalForm*> forms(n);
  for (std::size_t i = 0; i < n; ++i) {
    forms[i] = &hnf_.Compute(state.components[i].term, budget);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const Summand& send : forms[i]->summands) {
        if (send.kind != Summand::Kind::kSend) continue;
        for (const Summand& recv : forms[j]->summands) {
          if (recv.kind != Summand::Kind::kRecv ||
              recv.channel != send.channel ||
              !hnf_.Match(*send.message, *recv.message)) {
            continue;
          }
          SymbolicState next = state;
          next.depth_remaining = budget - 1;
          VectorClock sender = state.components[i].clock.Incremented(i);
          VectorClock receiver =
              VectorClock::Max(sender, state.components[j].clock)
                  .Incremented(j);
          next.components[i] = {send.cont, std::move(sender)};
          next.components[j] = {recv.cont, std::move(receiver)};
          out.push_back({RcfgTransition{i, j, send.channel, *send.message},
                         std::move(next)});
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const Summand& step : forms[i]->summands) {
      if (step.kind != Summand::Kind::kPacket) continue;
      SymbolicState next = state;
      next.depth_remaining = budget - 1;
      next.components[i] = {step.cont,
                            state.components[i].clock.Incremented(i)};
      out.push_back({PacketTransition{i, step.alpha, step.pi}, std::move(next)});
    }
  }
  return out;
}

bool SymbolicEngine::IsDeadlock(const SymbolicState& state) {
  return state.depth_remaining > 0 && Successors(state).empty();
}

std::vector<Successor> Successors(const SymbolicState& state,
                                  const ParsedModel& model,
                                  const FieldDomains& domains) {
  SymbolicEngine engine(model, domains);
  return engine.Successors(state);
}

bool IsDeadlock(const SymbolicState& state, const ParsedModel& model,
                const FieldDomains& domains) {
  SymbolicEngine engine(model, domains);
  return engine.IsDeadlock(state);
}

// ---------------------------------------------------------------------------
// ExecutionTree

bool ExecutionTree::contains(NodeId id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const TreeNode& n, NodeId value) { return n.id < value; });
  return it != nodes_.end() && it->id == id;
}

const TreeNode& ExecutionTree::node(NodeId id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const TreeNode& n, NodeId value) { return n.id < value; });
  if (it == nodes_.end() || it->id != id) {
    throw Error(ErrorCode::kInvalidArgument,
                "no node with id " + std::to_string(id));
  }
  return *it;
}

std::vector<NodeId> ExecutionTree::PathTo(NodeId id) const {
  std::vector<NodeId> path;
  std::optional<NodeId> at = id;
  while (at) {
    path.push_back(*at);
    at = node(*at).parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

class TreeBuilder {
 public:
  TreeBuilder(const ParsedModel& model, const FieldDomains& domains,
              GraphMode mode, const ExpansionObserver& observer,
              std::uint64_t cap)
      : engine_(model, domains, cap), mode_(mode), observer_(observer) {}

  ExecutionTree Build(const ParsedModel& model, std::size_t depth) {
    tree_.mode_ = mode_;
    tree_.depth_ = depth;
    tree_.names_ = model.ComponentNames();
    TreeNode root;
    root.id = 0;
    root.state = InitialState(model, depth);
    tree_.nodes_.push_back(std::move(root));
    next_id_ = 1;
    Expand(0);
    return std::move(tree_);
  }

 private:
  void Expand(std::size_t index) {
    {
      TreeNode& node = tree_.nodes_[index];
      std::vector<VectorClock> clocks = node.state.clocks();
      node.racy_pair = FindConcurrentPair(clocks);
      node.racy = node.racy_pair.has_value();
      node.frontier = node.state.depth_remaining == 0;
      if (node.frontier) {
        Notify(index);
        return;
      }
    }
    std::vector<Successor> successors =
        engine_.Successors(tree_.nodes_[index].state);
    if (successors.empty()) {
      tree_.nodes_[index].deadlock = true;
      Notify(index);
      return;
    }
    if (tree_.nodes_[index].racy && mode_ == GraphMode::kRace) {
      for (const Successor& s : successors) next_id_ += 1 + CountSubtree(s.state);
      Notify(index);
      return;
    }
    std::vector<std::size_t> child_indices;
    for (Successor& s : successors) {
      TreeNode child;
      child.id = next_id_++;
      child.parent = tree_.nodes_[index].id;
      child.label = std::move(s.label);
      child.state = std::move(s.state);
      child.depth = tree_.nodes_[index].depth + 1;
      tree_.nodes_[index].children.push_back(child.id);
      child_indices.push_back(tree_.nodes_.size());
      tree_.nodes_.push_back(std::move(child));
    }
    Notify(index);
    for (std::size_t child : child_indices) Expand(child);
  }

  // Number of nodes strictly below `state` in the full expansion.
  std::size_t CountSubtree(const SymbolicState& state) {
    std::size_t count = 0;
    for (const Successor& s : engine_.Successors(state)) {
      count += 1 + CountSubtree(s.state);
    }
    return count;
  }

  void Notify(std::size_t index) {
    if (observer_) observer_(tree_.nodes_[index]);
  }

  SymbolicEngine engine_;
  GraphMode mode_;
  const ExpansionObserver& observer_;
  ExecutionTree tree_;
  NodeId next_id_ = 1;
};

ExecutionTree BuildTree(const ParsedModel& model, const FieldDomains& domains,
                        std::size_t depth, GraphMode mode,
                        const ExpansionObserver& observer,
                        std::uint64_t packet_space_cap) {
  TreeBuilder builder(model, domains, mode, observer, packet_space_cap);
  return builder.Build(model, depth);
}

}  // namespace dynarace
