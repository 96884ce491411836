#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plateau/raster.hpp"

namespace plateau {

class CoverGraph;

// Active-sheet labeling: sigma maps every cell to the sheet carrying value 1.
// This encodes the fiber-constrained field u on the cover: u(c,s) = 1 iff
// s = sigma(c), so the fiber sum is 1 by construction.
struct Labeling {
  uint64_t raster_key = 0;
  int degree = 2;
  std::vector<uint8_t> sheet;  // 1..degree per cell

  int operator()(int cell) const { return sheet[static_cast<size_t>(cell)]; }
};

// All cells on the Dirichlet sheet (the collar condition extended everywhere).
Labeling uniform_labeling(const RasterScene& raster);
bool labeling_admissible(const RasterScene& raster, const Labeling& sigma);

// Degree-2 constrained lifting of a binary base field: sigma = 1 where
// v = 1, sigma = 2 where v = 0. The cut id names the chart the field is read
// in; it must exist in the raster.
Labeling lift_constrained(const std::vector<uint8_t>& v, const RasterScene& raster,
                          const std::string& cut_id);

enum class WeightingKind { Plain, Crofton };

// One energy term: an (ordered) cell pair with the composed crossing
// permutation from a to b and its weight. Axis terms correspond to a single
// grid face; diagonal (Crofton) terms to the two faces of their bent path.
struct WeightTerm {
  int32_t cell_a = 0;
  int32_t cell_b = 0;
  int16_t perm = 0;   // permutation id in the raster's table
  uint8_t axis1 = 0;  // first step axis
  int8_t dir1 = 1;
  uint8_t axis2 = 255;  // 255: axis term
  int8_t dir2 = 0;
  double weight = 0;
};

class Weighting {
 public:
  static Weighting plain(const RasterScene& raster);
  static Weighting crofton(const RasterScene& raster);
  static Weighting make(const RasterScene& raster, WeightingKind kind) {
    return kind == WeightingKind::Plain ? plain(raster) : crofton(raster);
  }

  WeightingKind kind() const { return kind_; }
  const std::vector<WeightTerm>& terms() const { return terms_; }
  uint64_t raster_key() const { return raster_key_; }
  double mean_weight() const;
  // The grid faces an energy term is attributed to (1 for axis terms,
  // 2 for diagonal terms, half weight each).
  static int term_faces(const RasterScene& raster, const WeightTerm& t, FaceKey out[2]);

 private:
  WeightingKind kind_ = WeightingKind::Plain;
  std::vector<WeightTerm> terms_;
  uint64_t raster_key_ = 0;
};

// E(sigma) = sum over terms of w * [sigma(b) != pi(sigma(a))].
// The reported total variation is TV = 2 E (one unit jump counted on both
// sheets of the fiber).
double energy(const Labeling& sigma, const CoverGraph& cover, const Weighting& weighting);

struct JumpSet {
  std::vector<std::pair<FaceKey, double>> faces;  // sorted, weights > 0
  double total_area = 0;
};

// Faces where the twisted labeling mismatches, weighted so that
// total_area == energy(sigma) exactly under the same weighting.
JumpSet jump_set(const Labeling& sigma, const CoverGraph& cover, const Weighting& weighting);

// Chart views of the encoded field u for a degree-2 cover with a cut pair
// (Sigma = cut_a, Sigma' = cut_b): v1, v2 read u in the Sigma charts,
// v3, v4 in the Sigma' charts; chart 3/4 values differ from 1/2 by the
// crossing-parity region between the two cuts.
struct ChartView {
  int chart = 1;  // 1..4
  std::vector<uint8_t> values;
};

std::vector<ChartView> chart_views(const Labeling& sigma, const RasterScene& raster,
                                   const std::string& cut_a, const std::string& cut_b);

class FunctionalError : public std::runtime_error {
 public:
  explicit FunctionalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plateau
