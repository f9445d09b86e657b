#pragma once

#include <filesystem>
#include <iosfwd>

#include "mrfgrid/surrogate/grid.hpp"

namespace mrfgrid {

inline constexpr int kGridFormatVersion = 1;

void write_grid(std::ostream& out, const SurrogateGrid& grid);
void write_grid(const std::filesystem::path& path, const SurrogateGrid& grid);

/// Throws UsageError on malformed files or an unknown format_version.
SurrogateGrid read_grid(std::istream& in);
SurrogateGrid read_grid(const std::filesystem::path& path);

}  // namespace mrfgrid
