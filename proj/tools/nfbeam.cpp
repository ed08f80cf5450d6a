// SPDX-License-Identifier: Apache-2.0
//
// nfbeam: command-line front end.
//
//   nfbeam analyze    --scenario s.yaml [--out dir]
//   nfbeam synthesize --scenario s.yaml --out dir
//   nfbeam simulate   --scenario s.yaml --out dir [--grid NX,NY] [--line-cut]
//   nfbeam compare    --scenario set.yaml --out dir [--levels N]
//   nfbeam optimize   --scenario s.yaml --out dir
//
// Exit codes: 0 success, 2 usage or validation error, 3 infeasible
// optimisation, 4 I/O error.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "nfbeam/commands.hpp"
#include "nfbeam/grid_io.hpp"

namespace {

using nfbeam::Json;

std::pair<std::size_t, std::size_t> parse_grid_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw nfbeam::ScenarioError("--grid expects NX,NY");
    }
    try {
        const long long nx = std::stoll(text.substr(0, comma));
        const long long ny = std::stoll(text.substr(comma + 1));
        if (nx < 2 || ny < 2) {
            throw nfbeam::ScenarioError("--grid needs NX, NY >= 2");
        }
        return {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
    } catch (const std::logic_error&) {
        throw nfbeam::ScenarioError("--grid expects two integers NX,NY");
    }
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field beam synthesis and analysis for uniform linear arrays"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::string grid_flag;
    bool line_cut = false;
    std::size_t levels = 101;

    auto add_common = [&](CLI::App* sub, bool out_required) {
        sub->add_option("--scenario", scenario_path, "Scenario file (YAML)")->required();
        auto* out = sub->add_option("--out", out_dir, "Output directory");
        if (out_required) {
            out->required();
        }
    };

    auto* analyze = app.add_subcommand("analyze", "Bessel design limits report (JSON on stdout)");
    add_common(analyze, false);
    auto* synthesize = app.add_subcommand("synthesize", "Write the excitation CSV");
    add_common(synthesize, true);
    auto* simulate = app.add_subcommand("simulate", "Field grid CSV/PGM and optional line cut");
    add_common(simulate, true);
    simulate->add_option("--grid", grid_flag, "Override grid samples as NX,NY");
    simulate->add_flag("--line-cut", line_cut, "Also write line_cut.csv");
    auto* compare = app.add_subcommand("compare", "Beam-family metrics over a scenario set");
    add_common(compare, true);
    compare->add_option("--levels", levels, "Number of CDF levels")->check(CLI::Range(2, 100000));
    auto* optimize = app.add_subcommand("optimize", "Curving trajectory optimisation report");
    add_common(optimize, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? nfbeam::kExitOk : nfbeam::kExitUsage;
    }

    nfbeam::CommandOptions opt;
    if (!out_dir.empty()) {
        opt.out_dir = out_dir;
    }
    opt.line_cut = line_cut;
    opt.levels = levels;

    try {
        if (!grid_flag.empty()) {
            opt.grid = parse_grid_flag(grid_flag);
        }
        if (*analyze) {
            const Json j = nfbeam::cmd_analyze(nfbeam::load_scenario(scenario_path));
            print(j);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(opt.out_dir);
                nfbeam::write_text_file(opt.out_dir / "analysis.json", j.dump(2) + "\n");
            }
        } else if (*synthesize) {
            print(nfbeam::cmd_synthesize(nfbeam::load_scenario(scenario_path), opt));
        } else if (*simulate) {
            print(nfbeam::cmd_simulate(nfbeam::load_scenario(scenario_path), opt));
        } else if (*compare) {
            print(nfbeam::cmd_compare(nfbeam::load_scenario_set(scenario_path), opt));
        } else if (*optimize) {
            print(nfbeam::cmd_optimize(nfbeam::load_scenario(scenario_path), opt));
        }
    } catch (const nfbeam::OptimizationFailure& e) {
        print(e.diagnostic());
        std::cerr << "error: " << e.what() << '\n';
        return nfbeam::kExitInfeasible;
    } catch (const nfbeam::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nfbeam::kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nfbeam::kExitIo;
    } catch (const nfbeam::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nfbeam::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nfbeam::kExitUsage;
    }
    return nfbeam::kExitOk;
}
