#pragma once

#include <string>

#include "nonloc/grid.hpp"

namespace nonloc {

// Writes <path> as a JSON header {d, n, box, dtype:"f64", order:"row-major",
// payload:"<name>.bin"} and the raw little-endian float64 values in the
// sibling .bin file.
void write_grid_function(const std::string& path, const GridFunction& u);

GridFunction read_grid_function(const std::string& path);

}  // namespace nonloc
