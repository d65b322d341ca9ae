#pragma once

#include <string>
#include <vector>

#include "hjhom/environment.hpp"

namespace hjhom {

/// Binary PGM (P5, maxval 255).  Values are clamped to [lo, hi] and mapped
/// linearly onto [0, 255]; for c_omega heatmaps [lo, hi] = [-1/2, 1/2], so a
/// value v maps to round((v + 1/2) * 255).
std::string render_pgm(const Environment::GridField& field, double lo,
                       double hi);

void write_file(const std::string& path, const std::string& contents);

}  // namespace hjhom
