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
// File: race.h
// -----------------------------------------------------------------------------
//
// Race witnesses: minimal root-to-node step sequences of an execution tree
// that end in a state holding a pair of concurrent component clocks.

#ifndef DYNARACE_RACE_H_
#define DYNARACE_RACE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dynarace/clock.h"
#include "dynarace/dynetkat.h"
#include "dynarace/netkat.h"
#include "dynarace/symbolic.h"

namespace dynarace {

std::optional<std::pair<std::size_t, std::size_t>> StateHasRace(
    const SymbolicState& state);

struct PacketInputStep {
  std::size_t actor_index = 0;
  std::string actor;
  Packet alpha;
  Packet pi;
  NodeId node_id = 0;                // node reached by this step
  std::vector<VectorClock> clocks;   // at node_id
};

struct RcfgStep {
  std::size_t sender_index = 0;
  std::size_t receiver_index = 0;
  std::string sender;
  std::string receiver;
  std::string channel;
  Message message;
  NodeId node_id = 0;
  std::vector<VectorClock> clocks;
};

using WitnessStep = std::variant<PacketInputStep, RcfgStep>;

struct RacyPair {
  std::size_t first = 0;
  std::size_t second = 0;
  VectorClock first_clock;
  VectorClock second_clock;
};

struct RaceWitness {
  std::vector<VectorClock> initial_clocks;
  std::vector<WitnessStep> steps;
  NodeId racy_node_id = 0;
  RacyPair racy_pair;
};

// One witness per racy node without a racy proper ancestor, by node id.
std::vector<RaceWitness> ExtractWitnesses(const ExecutionTree& tree);

// Input packets (alpha of each packet step), in order.
std::vector<Packet> WitnessPackets(const RaceWitness& witness);

// The transition labels of a witness, in order.
std::vector<TransitionLabel> WitnessLabels(const RaceWitness& witness);

// Every state reachable from the initial state (at `depth`) along `labels`.
std::vector<SymbolicState> ReplayLabels(const ParsedModel& model,
                                        const FieldDomains& domains,
                                        std::size_t depth,
                                        const std::vector<TransitionLabel>& labels);

}  // namespace dynarace

#endif  // DYNARACE_RACE_H_
