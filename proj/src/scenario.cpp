// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "nfbeam/grid_io.hpp"

namespace nfbeam {

namespace {

void require_map(const YAML::Node& node, const std::string& where) {
    if (!node.IsMap()) {
        throw ScenarioError("'" + where + "' must be a mapping");
    }
}

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    require_map(node, where);
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw ScenarioError("unknown key '" + key + "' in '" + where + "'");
        }
    }
}

YAML::Node required(const YAML::Node& node, const std::string& key, const std::string& where) {
    const YAML::Node v = node[key];
    if (!v) {
        throw ScenarioError("missing key '" + key + "' in '" + where + "'");
    }
    return v;
}

template <typename T>
T as(const YAML::Node& node, const std::string& what) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ScenarioError("invalid value for '" + what + "'");
    }
}

double get_double(const YAML::Node& node, const std::string& key, const std::string& where) {
    return as<double>(required(node, key, where), where + "." + key);
}

std::size_t get_count(const YAML::Node& node, const std::string& key, const std::string& where) {
    const auto v = as<long long>(required(node, key, where), where + "." + key);
    if (v < 0) {
        throw ScenarioError("'" + where + "." + key + "' must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

UlaConfig parse_array(const YAML::Node& node) {
    check_keys(node, "array", {"n_elements", "spacing_mode", "spacing", "carrier_freq_hz"});
    const std::size_t n = get_count(node, "n_elements", "array");
    const double freq = get_double(node, "carrier_freq_hz", "array");
    const auto mode = as<std::string>(required(node, "spacing_mode", "array"), "array.spacing_mode");
    if (mode == "half_wavelength") {
        if (node["spacing"]) {
            throw ScenarioError("'array.spacing' is only allowed with spacing_mode: explicit");
        }
        return UlaConfig::half_wavelength(n, freq);
    }
    if (mode == "explicit") {
        return UlaConfig(n, get_double(node, "spacing", "array"), freq);
    }
    throw ScenarioError("array.spacing_mode must be 'half_wavelength' or 'explicit'");
}

Point2 parse_point(const YAML::Node& node, const std::string& where) {
    check_keys(node, where, {"x", "y"});
    return {get_double(node, "x", where), get_double(node, "y", where)};
}

OcclusionModel parse_obstacle(const YAML::Node& node, const std::string& where) {
    if (!node || node.IsNull()) {
        return {};
    }
    if (node.IsScalar()) {
        if (node.as<std::string>() == "none") {
            return {};
        }
        throw ScenarioError("'" + where + "' must be 'none', {rect: ...} or {circle: ...}");
    }
    check_keys(node, where, {"rect", "circle"});
    if (node.size() != 1) {
        throw ScenarioError("'" + where + "' must hold exactly one of rect or circle");
    }
    if (const auto r = node["rect"]) {
        const std::string w = where + ".rect";
        check_keys(r, w, {"x_r1", "x_r2", "y_n", "y_f"});
        return OcclusionModel(RectObstacle(get_double(r, "x_r1", w), get_double(r, "x_r2", w),
                                           get_double(r, "y_n", w), get_double(r, "y_f", w)));
    }
    const auto c = node["circle"];
    const std::string w = where + ".circle";
    check_keys(c, w, {"x_c", "y_c", "radius"});
    return OcclusionModel(CircleObstacle({get_double(c, "x_c", w), get_double(c, "y_c", w)},
                                         get_double(c, "radius", w)));
}

void check_label(const std::string& label, const std::string& where) {
    const bool ok = !label.empty() && std::all_of(label.begin(), label.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
    });
    if (!ok) {
        throw ScenarioError("'" + where + ".label' must be non-empty and use only [A-Za-z0-9_-]");
    }
}

BeamSpec parse_beam_body(const YAML::Node& node, const std::string& where, bool with_label) {
    std::set<std::string> allowed = {"gaussian", "focus", "bessel", "curving"};
    if (with_label) {
        allowed.insert({"label", "power_budget"});
    }
    check_keys(node, where, allowed);
    BeamSpec b;
    int kinds = 0;
    if (const auto g = node["gaussian"]) {
        ++kinds;
        b.kind = BeamKind::gaussian;
        check_keys(g, where + ".gaussian", {"theta_deg"});
        b.theta_deg = get_double(g, "theta_deg", where + ".gaussian");
    }
    if (const auto f = node["focus"]) {
        ++kinds;
        b.kind = BeamKind::focus;
        if (!f.IsNull()) {
            check_keys(f, where + ".focus", {"x", "y"});
            if (f.size() > 0) {
                b.focus = parse_point(f, where + ".focus");
            }
        }
    }
    if (const auto s = node["bessel"]) {
        ++kinds;
        b.kind = BeamKind::bessel;
        check_keys(s, where + ".bessel", {"theta_deg", "alpha_deg"});
        b.theta_deg = get_double(s, "theta_deg", where + ".bessel");
        b.alpha_deg = get_double(s, "alpha_deg", where + ".bessel");
    }
    if (const auto c = node["curving"]) {
        ++kinds;
        b.kind = BeamKind::curving;
        if (!c.IsNull()) {
            check_keys(c, where + ".curving", {"w", "design_obstacle"});
            if (c["w"]) {
                b.w = as<double>(c["w"], where + ".curving.w");
            }
            b.design_obstacle = parse_obstacle(c["design_obstacle"], where + ".curving.design_obstacle");
        }
        if (!(b.w > 0.0)) {
            throw ScenarioError("'" + where + ".curving.w' must be positive");
        }
    }
    if (kinds != 1) {
        throw ScenarioError("'" + where + "' must define exactly one of gaussian, focus, bessel, curving");
    }
    if (with_label) {
        b.label = as<std::string>(required(node, "label", where), where + ".label");
        check_label(b.label, where);
        if (node["power_budget"]) {
            b.power_budget = as<double>(node["power_budget"], where + ".power_budget");
        }
    } else {
        b.label = to_string(b.kind);
    }
    return b;
}

GridSpec parse_grid(const YAML::Node& node) {
    GridSpec g;
    g.nx = 200;
    g.ny = 200;
    if (!node) {
        return g;
    }
    check_keys(node, "grid", {"x_range", "y_range", "nx", "ny"});
    auto range = [&](const char* key, double& lo, double& hi) {
        const auto r = node[key];
        if (!r) {
            return;
        }
        if (!r.IsSequence() || r.size() != 2) {
            throw ScenarioError(std::string("'grid.") + key + "' must be a [min, max] pair");
        }
        lo = as<double>(r[0], std::string("grid.") + key);
        hi = as<double>(r[1], std::string("grid.") + key);
    };
    range("x_range", g.x_min, g.x_max);
    range("y_range", g.y_min, g.y_max);
    if (node["nx"]) {
        g.nx = get_count(node, "nx", "grid");
    }
    if (node["ny"]) {
        g.ny = get_count(node, "ny", "grid");
    }
    g.validate();
    return g;
}

double parse_budget(const YAML::Node& root, const UlaConfig& cfg) {
    if (!root["power_budget"]) {
        return static_cast<double>(cfg.n_elements());
    }
    const double b = as<double>(root["power_budget"], "power_budget");
    if (!(b > 0.0)) {
        throw ScenarioError("'power_budget' must be positive");
    }
    return b;
}

YAML::Node load_yaml(const std::string& text) {
    try {
        YAML::Node root = YAML::Load(text);
        require_map(root, "<root>");
        return root;
    } catch (const YAML::Exception& e) {
        throw ScenarioError(std::string("YAML syntax error: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open scenario file '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

template <typename Fn>
auto with_context(Fn&& fn) {
    try {
        return fn();
    } catch (const ScenarioError&) {
        throw;
    } catch (const InvalidInput& e) {
        throw ScenarioError(e.what());
    } catch (const YAML::Exception& e) {
        throw ScenarioError(std::string("scenario error: ") + e.what());
    }
}

}  // namespace

const char* to_string(BeamKind k) {
    switch (k) {
        case BeamKind::gaussian: return "gaussian";
        case BeamKind::focus: return "focus";
        case BeamKind::bessel: return "bessel";
        case BeamKind::curving: return "curving";
    }
    return "unknown";
}

bool is_scenario_set(const std::string& yaml_text) {
    return static_cast<bool>(load_yaml(yaml_text)["beams"]);
}

Scenario parse_scenario(const std::string& yaml_text) {
    return with_context([&] {
        const YAML::Node root = load_yaml(yaml_text);
        check_keys(root, "<root>",
                   {"array", "user", "obstacle", "beam", "grid", "power_budget", "analysis", "line_cut"});
        const UlaConfig cfg = parse_array(required(root, "array", "<root>"));
        const Point2 user = parse_point(required(root, "user", "<root>"), "user");
        Scenario s{cfg,
                   user,
                   parse_obstacle(root["obstacle"], "obstacle"),
                   parse_beam_body(required(root, "beam", "<root>"), "beam", false),
                   parse_grid(root["grid"]),
                   parse_budget(root, cfg),
                   std::nullopt,
                   {}};
        if (const auto a = root["analysis"]) {
            check_keys(a, "analysis", {"d_target"});
            if (a["d_target"]) {
                s.d_target = as<double>(a["d_target"], "analysis.d_target");
                if (!(*s.d_target > 0.0)) {
                    throw ScenarioError("'analysis.d_target' must be positive");
                }
            }
        }
        if (const auto lc = root["line_cut"]) {
            check_keys(lc, "line_cut", {"theta_deg", "length", "samples"});
            if (lc["theta_deg"]) {
                s.line_cut.theta_deg = as<double>(lc["theta_deg"], "line_cut.theta_deg");
            }
            if (lc["length"]) {
                s.line_cut.length = as<double>(lc["length"], "line_cut.length");
            }
            if (lc["samples"]) {
                s.line_cut.samples = get_count(lc, "samples", "line_cut");
            }
        }
        if (!(user.y > 0.0)) {
            throw ScenarioError("'user.y' must be positive");
        }
        return s;
    });
}

ScenarioSet parse_scenario_set(const std::string& yaml_text) {
    return with_context([&] {
        const YAML::Node root = load_yaml(yaml_text);
        check_keys(root, "<root>", {"array", "user", "power_budget", "error_box", "beams", "scenarios"});
        const UlaConfig cfg = parse_array(required(root, "array", "<root>"));
        const Point2 user = parse_point(required(root, "user", "<root>"), "user");
        ScenarioSet set{cfg, user, parse_budget(root, cfg), ErrorBox{}, {}, {}};
        set.box.center = user;
        if (const auto b = root["error_box"]) {
            check_keys(b, "error_box", {"half_width_x", "half_width_y", "nx", "ny"});
            if (b["half_width_x"]) set.box.half_width_x = get_double(b, "half_width_x", "error_box");
            if (b["half_width_y"]) set.box.half_width_y = get_double(b, "half_width_y", "error_box");
            if (b["nx"]) set.box.nx = get_count(b, "nx", "error_box");
            if (b["ny"]) set.box.ny = get_count(b, "ny", "error_box");
        }
        set.box.validate();

        const YAML::Node beams = required(root, "beams", "<root>");
        if (!beams.IsSequence() || beams.size() < 2) {
            throw ScenarioError("'beams' must list at least 2 beams");
        }
        std::set<std::string> labels;
        for (std::size_t i = 0; i < beams.size(); ++i) {
            BeamSpec b = parse_beam_body(beams[i], "beams[" + std::to_string(i) + "]", true);
            if (!labels.insert(b.label).second) {
                throw ScenarioError("duplicate beam label '" + b.label + "'");
            }
            if (b.power_budget && *b.power_budget != set.power_budget) {
                throw ScenarioError("beam '" + b.label + "' has a power budget different from the shared budget");
            }
            set.beams.push_back(std::move(b));
        }

        const YAML::Node cases = required(root, "scenarios", "<root>");
        if (!cases.IsSequence() || cases.size() == 0) {
            throw ScenarioError("'scenarios' must be a non-empty list");
        }
        labels.clear();
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const std::string where = "scenarios[" + std::to_string(i) + "]";
            const YAML::Node c = cases[i];
            check_keys(c, where, {"label", "obstacle", "design_obstacle"});
            CompareCase cc;
            cc.label = as<std::string>(required(c, "label", where), where + ".label");
            check_label(cc.label, where);
            if (!labels.insert(cc.label).second) {
                throw ScenarioError("duplicate scenario label '" + cc.label + "'");
            }
            cc.obstacle = parse_obstacle(c["obstacle"], where + ".obstacle");
            cc.design_obstacle = parse_obstacle(c["design_obstacle"], where + ".design_obstacle");
            set.cases.push_back(std::move(cc));
        }
        return set;
    });
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

ScenarioSet load_scenario_set(const std::filesystem::path& path) {
    return parse_scenario_set(read_file(path));
}

}  // namespace nfbeam
