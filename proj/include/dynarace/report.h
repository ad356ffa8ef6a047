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
// File: report.h
// -----------------------------------------------------------------------------
//
// Command-line frontend: trace rendering, DOT output and the `dynarace`
// entry point.

#ifndef DYNARACE_REPORT_H_
#define DYNARACE_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynarace/dynetkat.h"
#include "dynarace/netkat.h"
#include "dynarace/race.h"
#include "dynarace/symbolic.h"

namespace dynarace {

struct RunConfig {
  std::filesystem::path model_path;
  int unfold_depth = 3;
  GraphMode graph_mode = GraphMode::kRace;
  bool color = false;
  bool show_steps = false;
  std::optional<std::filesystem::path> output_file;
};

// Process exit statuses.
inline constexpr int kExitNoRaces = 0;
inline constexpr int kExitRacesFound = 1;
inline constexpr int kExitUsageError = 2;

// "RACE SHORT TRACES" section.
std::string RenderShortTraces(const std::vector<RaceWitness>& witnesses,
                              const FieldDomains& domains, bool color);

// "RACE LONG TRACES" section.
std::string RenderLongTraces(const std::vector<RaceWitness>& witnesses,
                             const std::vector<std::string>& component_names,
                             const FieldDomains& domains, bool color);

// One line per witness naming the concurrent component pair and clocks.
std::string RenderRacyPairs(const std::vector<RaceWitness>& witnesses,
                            const std::vector<std::string>& component_names,
                            bool color);

// Every root-to-leaf path of `tree` in the long-trace layout.
std::string RenderFullTraces(const ExecutionTree& tree,
                             const FieldDomains& domains, bool color);

// Race mode keeps only the root and the witness paths; full mode keeps every
// node. Racy nodes are filled red.
std::string EmitDot(const ExecutionTree& tree,
                    const std::vector<RaceWitness>& witnesses,
                    const ParsedModel& model, const FieldDomains& domains,
                    std::string_view graph_name = "races");

// Removes ANSI SGR escape sequences.
std::string StripColor(std::string_view text);

// Runs the analysis; console text goes to `out`, diagnostics to `err`.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses `dynarace <model> [-u<int>] [-g<race|full>] [-c] [-t] [-f<name>]`
// and runs it.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace dynarace

#endif  // DYNARACE_REPORT_H_
