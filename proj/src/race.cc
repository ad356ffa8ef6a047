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
#include "dynarace/race.h"

namespace dynarace {

std::optional<std::pair<std::size_t, std::size_t>> StateHasRace(
    const SymbolicState& state) {
  std::vector<VectorClock> clocks = state.clocks();
  return FindConcurrentPair(clocks);
}

namespace {

bool HasRacyAncestor(const ExecutionTree& tree, const TreeNode& node) {
  std::optional<NodeId> at = node.parent;
  while (at) {
    const TreeNode& n = tree.node(*at);
    if (n.racy) return true;
    at = n.parent;
  }
  return false;
}

WitnessStep MakeStep(const ExecutionTree& tree, const TreeNode& node) {
  const auto& names = tree.component_names();
  if (const auto* p = std::get_if<PacketTransition>(&*node.label)) {
    return PacketInputStep{p->actor,   names.at(p->actor), p->alpha, p->pi,
                           node.id,    node.state.clocks()};
  }
  const auto& r = std::get<RcfgTransition>(*node.label);
  return RcfgStep{r.sender,          r.receiver,          names.at(r.sender),
                  names.at(r.receiver), r.channel,        r.message,
                  node.id,           node.state.clocks()};
}

}  // namespace

std::vector<RaceWitness> ExtractWitnesses(const ExecutionTree& tree) {
  std::vector<RaceWitness> out;
  for (const TreeNode& node : tree.nodes()) {
    if (!node.racy || HasRacyAncestor(tree, node)) continue;
    RaceWitness w;
    w.initial_clocks = tree.root().state.clocks();
    w.racy_node_id = node.id;
    for (NodeId id : tree.PathTo(node.id)) {
      if (id == tree.root().id) continue;
      w.steps.push_back(MakeStep(tree, tree.node(id)));
    }
    auto [i, j] = *node.racy_pair;
    w.racy_pair = RacyPair{i, j, node.state.components[i].clock,
                           node.state.components[j].clock};
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Packet> WitnessPackets(const RaceWitness& witness) {
  std::vector<Packet> out;
  for (const WitnessStep& step : witness.steps) {
    if (const auto* p = std::get_if<PacketInputStep>(&step)) {
      out.push_back(p->alpha);
    }
  }
  return out;
}

std::vector<TransitionLabel> WitnessLabels(const RaceWitness& witness) {
  std::vector<TransitionLabel> out;
  for (const WitnessStep& step : witness.steps) {
    if (const auto* p = std::get_if<PacketInputStep>(&step)) {
      out.push_back(PacketTransition{p->actor_index, p->alpha, p->pi});
    } else {
      const auto& r = std::get<RcfgStep>(step);
      out.push_back(RcfgTransition{r.sender_index, r.receiver_index, r.channel,
                                   r.message});
    }
  }
  return out;
}

std::vector<SymbolicState> ReplayLabels(
    const ParsedModel& model, const FieldDomains& domains, std::size_t depth,
    const std::vector<TransitionLabel>& labels) {
  SymbolicEngine engine(model, domains);
  std::vector<SymbolicState> current = {InitialState(model, depth)};
  for (const TransitionLabel& label : labels) {
    std::vector<SymbolicState> next;
    for (const SymbolicState& state : current) {
      for (Successor& s : engine.Successors(state)) {
        if (s.label == label) next.push_back(std::move(s.state));
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace dynarace
