#pragma once
// Batch interface: a declarative JSON scenario file names one workflow and
// its inputs; running it produces a single structured JSON report.
//
// Scenario layout (version 1):
//
//   {
//     "version": 1,
//     "command": "hermitian" | "outer-criterion" | "inner-criterion"
//              | "fermat-check" | "scan",
//     "params": { ... },          // command-specific, see below
//     "curve": { ... },           // where a curve is needed
//     "points": [ ... ],          // explicit centers, where accepted
//     "groups": [ ... ],          // explicit groups, criterion commands
//     "expect": { ... }           // optional scan expectations
//   }
//
// Commands and their parameters:
//   hermitian        params q, s, seed (default 0), ext_bound (default 4);
//                    builds the full scenario: curve, transported groups,
//                    criterion, plane model, verification.
//   outer-criterion, explicit "curve", three "groups" (each {"elements":
//   inner-criterion  [matrix...], "generator": function|null}) and three
//                    "points"; runs the criterion checker and, when the
//                    verdict is pass, both generators are present and
//                    params.build_model is not false, the model builder and
//                    its verification.
//   fermat-check     "curve" is either a direct curve object, {"kind":
//                    "fermat", "d": N, "field": {"p": P, "n": N}}, or
//                    {"kind": "hermitian-model", "q": Q, "s": S, ...}; runs
//                    the Galois-vertex orbit condition.  Centers default to
//                    the coordinate vertices ("points" may override them for
//                    direct curves); the hermitian-model form evaluates the
//                    condition through the source model.  params.group_cap
//                    bounds the group closure.
//   scan             "curve" as above (no hermitian-model); censuses Galois
//                    points among the candidates ("params.candidates":
//                    "plane" for every point of the base plane, "curve" for
//                    the rational curve points).  params.field_cap (default
//                    4096) refuses oversized base fields outright.  An
//                    "expect" object with "inner_galois"/"outer_galois"
//                    counts turns the census into a checked assertion.
//
// Every report embeds the scenario as given, the tool name and version, the
// command, a command-specific payload, and a three-valued verdict.  All
// numbers are exact integers; field elements are coefficient lists.  Two
// runs of the same scenario produce byte-identical reports.  Reports are
// written atomically (temporary file, then rename).
//
// Exit status: 0 iff the overall verdict is pass and nothing was left
// unverified; 1 for a verified failure; 2 for errors, refused input, or an
// unverified verdict.  Malformed scenario files yield exit 2 with an error
// envelope naming the offending field (or the parse position).

#include <optional>
#include <string>

#include "gplane/serialize.hpp"

namespace gplane {

// Command-line overrides layered over the scenario's parameters.
struct RunOverrides {
  std::optional<u64> ext_bound;
  std::optional<u64> group_cap;
  std::optional<u64> seed;
  // When set, the scenario's command must match it (the specialized CLI
  // subcommands pin this).
  std::optional<std::string> expect_command;
};

// Execute a parsed scenario and return the full report envelope.  Scenario
// validation problems throw std::invalid_argument; internal inconsistencies
// and library failures propagate as std::logic_error.
json execute_scenario(const json& scenario, const RunOverrides& overrides = {});

// Wrap any execute_scenario outcome (including thrown errors) into the
// envelope written to disk.
json error_envelope(const json& scenario, const std::string& message);

// Exit status an envelope maps to under the contract above.
int exit_code_of(const json& envelope);

// Load the scenario at scenario_path, execute it, and write the report
// envelope to out_path (atomically; empty path prints to stdout instead).
// Never throws: every failure becomes an error envelope with exit code 2.
int run_scenario(const std::string& scenario_path, const std::string& out_path,
                 const RunOverrides& overrides = {});

}  // namespace gplane
