// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/grid_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nfbeam {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
    if (!os) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    return fmt::format("{:.17g}", v);
}

void write_grid_csv(const FieldGrid& grid, const std::filesystem::path& path) {
    auto os = open_out(path, false);
    os << "x,y,re,im,abs\n";
    for (std::size_t iy = 0; iy < grid.spec.ny; ++iy) {
        const double y = grid.spec.y_at(iy);
        for (std::size_t ix = 0; ix < grid.spec.nx; ++ix) {
            const auto& v = grid.at(ix, iy);
            const double a = std::abs(v);
            os << format_double(grid.spec.x_at(ix)) << ',' << format_double(y) << ','
               << format_double(v.real()) << ',' << format_double(v.imag()) << ','
               << format_double(std::isfinite(a) ? a : std::nan("")) << '\n';
        }
    }
    finish(os, path);
}

void write_grid_pgm(const FieldGrid& grid, const std::filesystem::path& path) {
    auto os = open_out(path, true);
    const double peak = grid.max_abs();
    os << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n255\n";
    std::vector<unsigned char> row(grid.spec.nx);
    for (std::size_t r = 0; r < grid.spec.ny; ++r) {
        const std::size_t iy = grid.spec.ny - 1 - r;
        for (std::size_t ix = 0; ix < grid.spec.nx; ++ix) {
            const double a = std::abs(grid.at(ix, iy));
            double level = 0.0;
            if (std::isfinite(a) && peak > 0.0) {
                level = std::round(255.0 * a / peak);
            }
            row[ix] = static_cast<unsigned char>(std::clamp(level, 0.0, 255.0));
        }
        os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    finish(os, path);
}

FieldGrid read_grid_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::string line;
    if (!std::getline(is, line) || line != "x,y,re,im,abs") {
        throw IoError("'" + path.string() + "' is not a field grid CSV");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::complex<double>> vals;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        double f[5];
        for (double& v : f) {
            if (!std::getline(ss, cell, ',')) {
                throw IoError("malformed row in '" + path.string() + "'");
            }
            v = std::strtod(cell.c_str(), nullptr);
        }
        xs.push_back(f[0]);
        ys.push_back(f[1]);
        vals.emplace_back(f[2], f[3]);
    }
    std::size_t nx = 0;
    while (nx < ys.size() && ys[nx] == ys.front()) {
        ++nx;
    }
    if (nx < 2 || vals.size() % nx != 0 || vals.size() / nx < 2) {
        throw IoError("'" + path.string() + "' does not hold a rectangular grid");
    }
    GridSpec spec;
    spec.nx = nx;
    spec.ny = vals.size() / nx;
    spec.x_min = xs.front();
    spec.x_max = xs[nx - 1];
    spec.y_min = ys.front();
    spec.y_max = ys.back();
    return FieldGrid{spec, std::move(vals)};
}

void write_line_cut_csv(const std::vector<std::pair<double, double>>& cut,
                        const std::filesystem::path& path) {
    auto os = open_out(path, false);
    os << "distance,abs\n";
    for (const auto& [d, a] : cut) {
        os << format_double(d) << ',' << format_double(a) << '\n';
    }
    finish(os, path);
}

void write_excitation_csv(const UlaConfig& cfg, const Excitation& exc, const std::filesystem::path& path) {
    auto os = open_out(path, false);
    os << "index,x,gamma,phase_rad,active\n";
    for (std::size_t i = 0; i < exc.size(); ++i) {
        os << i << ',' << format_double(cfg.element_x(i)) << ',' << format_double(exc.magnitude[i]) << ','
           << format_double(exc.phase[i]) << ',' << (exc.active[i] ? 1 : 0) << '\n';
    }
    finish(os, path);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    auto os = open_out(path, false);
    os << text;
    finish(os, path);
}

}  // namespace nfbeam
