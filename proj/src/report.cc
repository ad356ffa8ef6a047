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
#include "dynarace/report.h"

#include <algorithm>
#include <regex>
#include <set>

namespace dynarace {
namespace {

constexpr std::string_view kBold = "\x1b[1m";
constexpr std::string_view kCyan = "\x1b[36m";
constexpr std::string_view kYellow = "\x1b[33m";
constexpr std::string_view kRed = "\x1b[31m";
constexpr std::string_view kReset = "\x1b[0m";

std::string Paint(std::string_view text, std::string_view style, bool color) {
  if (!color) return std::string(text);
  return std::string(style) + std::string(text) + std::string(kReset);
}

std::string QuotedTest(const Packet& packet, const FieldDomains& domains) {
  return "\"" + FormatCompleteTest(packet, domains) + "\"";
}

std::string RcfgText(const std::string& channel, const Message& message) {
  return "rcfg('" + channel + "', '" + message.Quoted() + "')";
}

std::string ClocksText(const std::vector<std::string>& names,
                       const std::vector<VectorClock>& clocks) {
  std::string out = "{";
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    if (i > 0) out += " || ";
    out += names.at(i) + clocks[i].ToString();
  }
  return out + "}";
}

std::string LongLine(const WitnessStep& step,
                     const std::vector<std::string>& names,
                     const FieldDomains& domains, bool color) {
  if (const auto* p = std::get_if<PacketInputStep>(&step)) {
    return Paint("[" + p->actor + "]", kCyan, color) + " " +
           QuotedTest(p->alpha, domains) + " " + ClocksText(names, p->clocks) +
           " nid:" + std::to_string(p->node_id) + ";";
  }
  const auto& r = std::get<RcfgStep>(step);
  return Paint("[" + r.sender + " -> " + r.receiver + "]", kCyan, color) +
         " " + Paint(RcfgText(r.channel, r.message), kYellow, color) + " " +
         ClocksText(names, r.clocks) + " nid:" + std::to_string(r.node_id) +
         ";";
}

std::string DotEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string DisplayName(const Term& term, const ParsedModel& model) {
  if (term.kind() == Term::Kind::kVar) return term.name();
  for (const Definition& d : model.definitions) {
    if (d.body == term) return d.name;
  }
  return "(" + term.ToString() + ")";
}

}  // namespace

std::string RenderShortTraces(const std::vector<RaceWitness>& witnesses,
                              const FieldDomains& domains, bool color) {
  std::string out = Paint("RACE SHORT TRACES", kBold, color) + "\n";
  if (witnesses.empty()) out += "(none)\n";
  for (std::size_t t = 0; t < witnesses.size(); ++t) {
    out += "Trace " + std::to_string(t) + ":\n";
    const auto& steps = witnesses[t].steps;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      bool last = k + 1 == steps.size();
      if (const auto* p = std::get_if<PacketInputStep>(&steps[k])) {
        out += QuotedTest(p->alpha, domains);
        if (!last) out += "; ";
      } else {
        const auto& r = std::get<RcfgStep>(steps[k]);
        out += Paint(RcfgText(r.channel, r.message), kYellow, color);
        if (!last) out += ";\n";
      }
    }
    out += "\n\n";
  }
  return out;
}

std::string RenderLongTraces(const std::vector<RaceWitness>& witnesses,
                             const std::vector<std::string>& component_names,
                             const FieldDomains& domains, bool color) {
  std::string out = Paint("RACE LONG TRACES", kBold, color) + "\n";
  if (witnesses.empty()) out += "(none)\n";
  for (std::size_t t = 0; t < witnesses.size(); ++t) {
    const RaceWitness& w = witnesses[t];
    out += "Trace " + std::to_string(t) + ":\n";
    out += ClocksText(component_names, w.initial_clocks) + " nid:0;\n";
    for (std::size_t k = 0; k < w.steps.size(); ++k) {
      out += LongLine(w.steps[k], component_names, domains, color) + "\n";
    }
    out += "\n\n";
  }
  return out;
}

std::string RenderRacyPairs(const std::vector<RaceWitness>& witnesses,
                            const std::vector<std::string>& component_names,
                            bool color) {
  std::string out;
  for (std::size_t t = 0; t < witnesses.size(); ++t) {
    const RacyPair& pair = witnesses[t].racy_pair;
    out += "Trace " + std::to_string(t) + ": " +
           Paint(component_names.at(pair.first) + pair.first_clock.ToString() +
                     " and " + component_names.at(pair.second) +
                     pair.second_clock.ToString() + " are concurrent",
                 kRed, color) +
           " at nid:" + std::to_string(witnesses[t].racy_node_id) + "\n";
  }
  return out;
}

std::string RenderFullTraces(const ExecutionTree& tree,
                             const FieldDomains& domains, bool color) {
  const auto& names = tree.component_names();
  std::string out = Paint("FULL LONG TRACES", kBold, color) + "\n";
  std::size_t t = 0;
  for (const TreeNode& leaf : tree.nodes()) {
    if (!leaf.children.empty()) continue;
    std::string status = leaf.racy       ? "race"
                         : leaf.deadlock ? "deadlock"
                                         : "depth bound";
    out += "Trace " + std::to_string(t++) + " (" + status + "):\n";
    out += ClocksText(names, tree.root().state.clocks()) + " nid:0;\n";
    for (NodeId id : tree.PathTo(leaf.id)) {
      const TreeNode& node = tree.node(id);
      if (!node.label) continue;
      WitnessStep step;
      if (const auto* p = std::get_if<PacketTransition>(&*node.label)) {
        step = PacketInputStep{p->actor, names.at(p->actor), p->alpha, p->pi,
                               node.id, node.state.clocks()};
      } else {
        const auto& r = std::get<RcfgTransition>(*node.label);
        step = RcfgStep{r.sender,  r.receiver,  names.at(r.sender),
                        names.at(r.receiver), r.channel, r.message,
                        node.id,   node.state.clocks()};
      }
      out += LongLine(step, names, domains, color) + "\n";
    }
    out += "\n";
  }
  return out;
}

std::string EmitDot(const ExecutionTree& tree,
                    const std::vector<RaceWitness>& witnesses,
                    const ParsedModel& model, const FieldDomains& domains,
                    std::string_view graph_name) {
  std::set<NodeId> keep;
  if (tree.mode() == GraphMode::kFull) {
    for (const TreeNode& n : tree.nodes()) keep.insert(n.id);
  } else {
    keep.insert(tree.root().id);
    for (const RaceWitness& w : witnesses) {
      for (NodeId id : tree.PathTo(w.racy_node_id)) keep.insert(id);
    }
  }

  std::string out = "digraph \"" + DotEscape(graph_name) + "\" {\n";
  out += "  node [shape=box, style=filled, fillcolor=white];\n";
  for (NodeId id : keep) {
    const TreeNode& node = tree.node(id);
    std::string label = std::to_string(id) + "\\n";
    for (std::size_t i = 0; i < node.state.components.size(); ++i) {
      if (i > 0) label += " || ";
      const ComponentState& c = node.state.components[i];
      label += DotEscape(DisplayName(c.term, model)) + c.clock.ToString();
    }
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"";
    if (node.racy) {
      out += ", fillcolor=lightcoral";
    } else if (node.deadlock) {
      out += ", fillcolor=lightgray";
    }
    out += "];\n";
  }
  for (NodeId id : keep) {
    const TreeNode& node = tree.node(id);
    if (!node.parent) continue;
    std::string label;
    if (const auto* p = std::get_if<PacketTransition>(&*node.label)) {
      label = "(" + FormatPacket(p->alpha, domains) + "," +
              FormatPacket(p->pi, domains) + ")";
    } else {
      const auto& r = std::get<RcfgTransition>(*node.label);
      label = "rcfg(" + r.channel + ", " + r.message.text() + ")";
    }
    out += "  n" + std::to_string(*node.parent) + " -> n" +
           std::to_string(id) + " [label=\"" + DotEscape(label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string StripColor(std::string_view text) {
  static const std::regex kEscape("\x1b\\[[0-9;]*m");
  return std::regex_replace(std::string(text), kEscape, "");
}

}  // namespace dynarace
