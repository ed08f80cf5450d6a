// SPDX-License-Identifier: Apache-2.0
//
// Scenario files (YAML). A single-beam scenario:
//
//   array:
//     n_elements: 1024
//     spacing_mode: half_wavelength      # or: explicit (then `spacing: <m>`)
//     carrier_freq_hz: 140.0e9
//   user: {x: 0.0, y: 1.0}
//   obstacle: none                       # or {rect: {x_r1, x_r2, y_n, y_f}}
//                                        # or {circle: {x_c, y_c, radius}}
//   beam:                                # exactly one of:
//     bessel: {theta_deg: 0, alpha_deg: 20}
//     # gaussian: {theta_deg: 0}
//     # focus: {}                        # optional {x, y}; defaults to the user
//     # curving: {w: 1}                  # optional design_obstacle: {rect: ...}
//   grid: {x_range: [-1, 1], y_range: [0.01, 2], nx: 200, ny: 200}   # optional
//   power_budget: 1024                   # optional, defaults to n_elements
//   analysis: {d_target: 4.0}            # optional
//   line_cut: {theta_deg: 0, length: 2, samples: 1000}   # optional, all keys optional
//
// A comparison set replaces `beam`, `obstacle`, `grid`, `analysis` and
// `line_cut` with:
//
//   error_box: {half_width_x: 0.1, half_width_y: 0.1, nx: 21, ny: 21}   # optional
//   beams:
//     - {label: focusing, focus: {}}
//     - {label: bessel_a20, bessel: {theta_deg: 0, alpha_deg: 20}}
//   scenarios:
//     - {label: point0, obstacle: none, design_obstacle: {rect: {...}}}
//     - {label: point1, obstacle: {rect: {...}}}
//
// Angles are in degrees, lengths in metres. Unknown keys are rejected.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/field.hpp"
#include "nfbeam/metrics.hpp"

namespace nfbeam {

/// Raised for malformed or invalid scenario content.
class ScenarioError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

enum class BeamKind { gaussian, focus, bessel, curving };

const char* to_string(BeamKind k);

struct BeamSpec {
    BeamKind kind = BeamKind::gaussian;
    std::string label;
    double theta_deg = 0.0;
    double alpha_deg = 0.0;
    std::optional<Point2> focus;
    double w = 1.0;
    OcclusionModel design_obstacle;  ///< curving only; none means "use the scenario obstacle"
    std::optional<double> power_budget;
};

struct LineCutSpec {
    std::optional<double> theta_deg;
    std::optional<double> length;
    std::size_t samples = 1000;
};

struct Scenario {
    UlaConfig cfg;
    Point2 user;
    OcclusionModel obstacle;
    BeamSpec beam;
    GridSpec grid;
    double power_budget;
    std::optional<double> d_target;
    LineCutSpec line_cut;
};

struct CompareCase {
    std::string label;
    OcclusionModel obstacle;
    OcclusionModel design_obstacle;
};

struct ScenarioSet {
    UlaConfig cfg;
    Point2 user;
    double power_budget;
    ErrorBox box;
    std::vector<BeamSpec> beams;
    std::vector<CompareCase> cases;
};

Scenario parse_scenario(const std::string& yaml_text);
ScenarioSet parse_scenario_set(const std::string& yaml_text);

/// Read a file and parse it; a missing or unreadable file raises IoError.
Scenario load_scenario(const std::filesystem::path& path);
ScenarioSet load_scenario_set(const std::filesystem::path& path);

/// True if the text has a top-level `beams` key.
bool is_scenario_set(const std::string& yaml_text);

}  // namespace nfbeam
