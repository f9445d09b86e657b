#include "mrfgrid/core/lattice.hpp"

#include <string>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

Lattice::Lattice(int height, int width) : height_(height), width_(width) {
  if (height < 1 || width < 1) {
    throw UsageError("lattice dimensions must be positive, got " + std::to_string(height) +
                     "x" + std::to_string(width));
  }
  const int n = height * width;
  neighbors_.assign(n, {-1, -1, -1, -1});
  degree_.assign(n, 0);
  edges_.reserve(static_cast<std::size_t>(height) * (width - 1) +
                 static_cast<std::size_t>(height - 1) * width);

  auto link = [this](int i, int j) {
    edges_.emplace_back(i, j);
    neighbors_[i][degree_[i]++] = j;
    neighbors_[j][degree_[j]++] = i;
  };
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const int i = r * width + c;
      if (c + 1 < width) link(i, i + 1);
      if (r + 1 < height) link(i, i + width);
    }
  }
}

Lattice build_lattice(int height, int width) { return Lattice(height, width); }

}  // namespace mrfgrid
