#pragma once

#include <array>
#include <functional>
#include <vector>

#include "plateau/functional.hpp"
#include "plateau/raster.hpp"

namespace plateau {

// The discrete cover Y: nodes (cell, sheet) with permutation-twisted face
// adjacency. Node ordering is lexicographic in cell index, then sheet.
class CoverGraph {
 public:
  explicit CoverGraph(const RasterScene& raster);

  const RasterScene& raster() const { return *raster_; }
  int degree() const { return d_; }
  int num_nodes() const { return raster_->num_cells() * d_; }
  int node(int cell, int sheet) const { return cell * d_ + (sheet - 1); }
  int node_cell(int n) const { return n / d_; }
  int node_sheet(int n) const { return n % d_ + 1; }
  std::vector<int> fiber(int cell) const;

  // Base adjacencies (face pairs) with crossing permutation id and plain
  // face weight h^(n-1); cell_a < cell_b along +axis.
  void for_each_base_pair(
      const std::function<void(int cell_a, int cell_b, int perm, double w)>& fn) const;
  // Cover edges: d edges per base pair, (c,s) -- (c', pi(s)).
  void for_each_cover_edge(const std::function<void(int node_a, int node_b, double w)>& fn) const;
  int64_t num_cover_edges() const;

 private:
  const RasterScene* raster_;
  int d_;
};

CoverGraph build_cover(const RasterScene& raster);

struct BasePath {
  std::vector<std::array<int, 3>> cells;
  bool closed = false;
};

class CoverError : public std::runtime_error {
 public:
  explicit CoverError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered composition of signed crossing permutations along the path.
Permutation path_monodromy(const RasterScene& raster, const BasePath& path);

// Unoriented linking parity: crossing count (mod 2) of the loop with the
// designated cut family (all patches when empty — the degree-2 default).
// Errors if the loop is open or crosses a face touching an S-marked element.
int link2(const RasterScene& raster, const BasePath& loop, std::vector<int> patch_family = {});

// h(x; Sigma, Gamma): parity of total crossings of both rasters' cuts along
// any path from the basepoint, by BFS. Both rasters must share the grid.
std::vector<uint8_t> parity_region(const RasterScene& raster_sigma,
                                   const RasterScene& raster_gamma,
                                   const std::array<int, 3>& basepoint_cell);

// Rewrites a degree-2 labeling over cover(Sigma) as one over cover(Gamma)
// with the same projected jump set: flip the sheet wherever the parity
// region is odd.
Labeling transport_labeling(const Labeling& sigma, const RasterScene& raster_sigma,
                            const RasterScene& raster_gamma);

}  // namespace plateau
