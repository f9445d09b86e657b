#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mrfgrid {

/// First-order (4-neighbour) lattice with free boundary. Pixels are indexed
/// row-major: index = row * width + col.
class Lattice {
 public:
  Lattice(int height, int width);

  int height() const { return height_; }
  int width() const { return width_; }
  int size() const { return height_ * width_; }

  /// Each undirected edge once, as (i, j) with i < j.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const int> neighbors(int site) const {
    return {neighbors_[site].data(), degree_[site]};
  }

  /// Checkerboard colour (0 or 1); no two neighbours share a colour.
  int color(int site) const { return (site / width_ + site % width_) % 2; }

 private:
  int height_;
  int width_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::array<int, 4>> neighbors_;
  std::vector<std::uint8_t> degree_;
};

Lattice build_lattice(int height, int width);

}  // namespace mrfgrid
