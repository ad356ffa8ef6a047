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
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynarace/error.h"
#include "dynarace/report.h"

namespace dynarace {
namespace {

std::string NodeSummary(const TreeNode& node,
                        const std::vector<std::string>& names) {
  std::string line = "expand nid:" + std::to_string(node.id) +
                     " depth:" + std::to_string(node.depth) + " {";
  for (std::size_t i = 0; i < node.state.components.size(); ++i) {
    if (i > 0) line += " || ";
    line += names.at(i) + node.state.components[i].clock.ToString();
  }
  line += "}";
  if (node.racy) {
    line += " race(" + names.at(node.racy_pair->first) + ", " +
            names.at(node.racy_pair->second) + ")";
  }
  if (node.deadlock) line += " deadlock";
  if (node.frontier) line += " depth-bound";
  if (!node.children.empty()) {
    line += " ->";
    for (NodeId c : node.children) line += " " + std::to_string(c);
  }
  return line + "\n";
}

}  // namespace

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.unfold_depth < 1) {
    err << "error: unfold depth must be at least 1\n";
    return kExitUsageError;
  }
  std::ifstream in(config.model_path);
  if (!in) {
    err << "error: cannot read model file '" << config.model_path.string()
        << "'\n";
    return kExitUsageError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  std::string transcript;
  auto emit = [&](const std::string& text) {
    out << text;
    out.flush();
    transcript += text;
  };

  try {
    ParsedModel model = ParseModel(buffer.str());
    FieldDomains domains = InferDomains(model);
    std::vector<std::string> names = model.ComponentNames();

    ExpansionObserver observer;
    if (config.show_steps) {
      observer = [&](const TreeNode& node) { emit(NodeSummary(node, names)); };
    }
    ExecutionTree tree =
        BuildTree(model, domains, static_cast<std::size_t>(config.unfold_depth),
                  config.graph_mode, observer);
    std::vector<RaceWitness> witnesses = ExtractWitnesses(tree);

    std::vector<RaceWitness> report = witnesses;
    std::stable_sort(report.begin(), report.end(),
                     [](const RaceWitness& a, const RaceWitness& b) {
                       return WitnessPackets(a).size() <
                              WitnessPackets(b).size();
                     });

    if (config.show_steps) emit("\n");
    emit(RenderShortTraces(report, domains, config.color));
    emit("\n\n");
    emit(RenderLongTraces(report, names, domains, config.color));
    if (config.graph_mode == GraphMode::kFull) {
      emit(RenderFullTraces(tree, domains, config.color));
    }
    emit(RenderRacyPairs(report, names, config.color));

    std::string stem = config.model_path.stem().string();
    std::filesystem::path dot_dir =
        config.output_file ? config.output_file->parent_path()
                           : std::filesystem::path();
    std::filesystem::path dot_path = dot_dir / (stem + ".dot");
    std::ofstream dot(dot_path);
    if (!dot) {
      err << "error: cannot write '" << dot_path.string() << "'\n";
      return kExitUsageError;
    }
    dot << EmitDot(tree, witnesses, model, domains, stem);

    emit(std::to_string(report.size()) + " race witness(es) up to depth " +
         std::to_string(config.unfold_depth) + "; graph written to " +
         dot_path.string() + "\n");

    if (config.output_file) {
      std::ofstream copy(*config.output_file);
      if (!copy) {
        err << "error: cannot write '" << config.output_file->string()
            << "'\n";
        return kExitUsageError;
      }
      copy << StripColor(transcript);
    }
    return report.empty() ? kExitNoRaces : kExitRacesFound;
  } catch (const Error& e) {
    err << "error: " << config.model_path.string() << ": " << e.what()
        << "\n";
    return kExitUsageError;
  }
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Detects data races between the control and data planes of "
               "DyNetKAT SDN models."};
  app.name("dynarace");
  app.footer(
      "Values may be fused with their flag (-u3, -grace, -fout.txt).\n"
      "Exit status: 0 no races found, 1 races found, 2 usage or model error.\n"
      "The DOT graph <model-stem>.dot is written next to the -f file, or to\n"
      "the current directory.");

  RunConfig config;
  std::string mode = "race";
  std::string output;
  app.add_option("model", config.model_path, "Path to the model file")
      ->required();
  app.add_option("-u", config.unfold_depth, "Unfold depth")
      ->check(CLI::PositiveNumber);
  app.add_option("-g", mode, "Types of trees and traces: race or full")
      ->check(CLI::IsMember({"race", "full"}));
  app.add_flag("-c", config.color, "Output text with color");
  app.add_flag("-t", config.show_steps, "Show tracing steps");
  app.add_option("-f", output, "Name for the text output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitNoRaces;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsageError;
  }
  config.graph_mode = mode == "full" ? GraphMode::kFull : GraphMode::kRace;
  if (!output.empty()) config.output_file = output;
  return Run(config, out, err);
}

}  // namespace dynarace
