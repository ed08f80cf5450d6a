// SPDX-License-Identifier: Apache-2.0
//
// Implementations of the command-line subcommands. Every command is a pure
// function of the scenario and the options: data files carry no timestamps
// and JSON objects keep a fixed key order.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "nfbeam/curving.hpp"
#include "nfbeam/excitation.hpp"
#include "nfbeam/scenario.hpp"

namespace nfbeam {

using Json = nlohmann::ordered_json;

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

/// Raised when a curving beam cannot be designed; carries a JSON diagnostic.
class OptimizationFailure : public std::runtime_error {
public:
    OptimizationFailure(const std::string& what, Json diagnostic)
        : std::runtime_error(what), diagnostic_(std::move(diagnostic)) {}
    const Json& diagnostic() const { return diagnostic_; }

private:
    Json diagnostic_;
};

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    bool line_cut = false;
    std::optional<std::pair<std::size_t, std::size_t>> grid;  ///< overrides grid nx, ny
    std::size_t levels = 101;
};

/// Excitation of a beam normalised to `budget`. Curving beams are designed
/// against `design_obstacle`, falling back to `scene_obstacle`; the plan is
/// returned through `plan_out` when given.
Excitation build_excitation(const UlaConfig& cfg, const BeamSpec& beam, const Point2& user,
                            const OcclusionModel& scene_obstacle, double budget,
                            FallbackPlan* plan_out = nullptr);

/// Curving design problem for a scenario; circles are replaced by their bounding square.
AvoidanceScenario avoidance_scenario(const UlaConfig& cfg, const Point2& user,
                                     const OcclusionModel& obstacle, double w);

Json plan_to_json(const FallbackPlan& plan, const Point2& user);
Json candidates_to_json(const std::vector<KktCandidate>& cands);

/// Bessel limits report. Throws ScenarioError for non-Bessel beams.
Json cmd_analyze(const Scenario& s);

/// Writes excitation.csv (and curving.json for curving beams); returns a summary.
Json cmd_synthesize(const Scenario& s, const CommandOptions& opt);

/// Writes field.csv, field.pgm, grid.json and optionally line_cut.csv.
Json cmd_simulate(const Scenario& s, const CommandOptions& opt);

/// Writes metrics.csv and one cdf_<label>.csv per beam.
Json cmd_compare(const ScenarioSet& set, const CommandOptions& opt);

/// Writes optimize.json with both curvature results and the candidate table.
Json cmd_optimize(const Scenario& s, const CommandOptions& opt);

}  // namespace nfbeam
