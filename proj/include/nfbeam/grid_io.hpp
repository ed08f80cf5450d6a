// SPDX-License-Identifier: Apache-2.0
//
// Serialisation of field grids, line cuts and excitations.
//
// Grid CSV: header "x,y,re,im,abs", one row per sample in storage order
// (x fastest, then y), numbers printed with 17 significant digits so that a
// re-read reproduces the doubles exactly. Interior (obstacle) samples print
// as "nan".
//
// Grid PGM: binary P5, width nx, height ny, maxval 255. The first image row is
// the largest y so the picture is upright. Pixel = round(255 |E| / max|E|);
// interior samples are 0.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfbeam/excitation.hpp"
#include "nfbeam/field.hpp"

namespace nfbeam {

/// Raised when a file cannot be read or written; the message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

void write_grid_csv(const FieldGrid& grid, const std::filesystem::path& path);
void write_grid_pgm(const FieldGrid& grid, const std::filesystem::path& path);

/// Reads a grid CSV written by write_grid_csv. The spec is rebuilt from the
/// coordinates, so nx and ny must be at least 2.
FieldGrid read_grid_csv(const std::filesystem::path& path);

/// Columns: distance, abs.
void write_line_cut_csv(const std::vector<std::pair<double, double>>& cut,
                        const std::filesystem::path& path);

/// Columns: index, x, gamma, phase_rad, active.
void write_excitation_csv(const UlaConfig& cfg, const Excitation& exc, const std::filesystem::path& path);

/// Writes text to a file, replacing it. Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nfbeam
