#pragma once

#include <string>
#include <vector>

#include "plateau/functional.hpp"
#include "plateau/raster.hpp"
#include "plateau/solve.hpp"

namespace plateau {

class MeasureError : public std::runtime_error {
 public:
  explicit MeasureError(const std::string& what) : std::runtime_error(what) {}
};

// Sum of jump-face weights; equals the energy of the labeling the set was
// extracted from, so TV = 2 * area.
double area(const JumpSet& jump);

struct WettingSegment {
  std::string segment_id;
  std::string monodromy_class;  // worst elementary class along the chain
  bool wetted = false;
  double min_distance_cells = 0;  // Chebyshev distance to the nearest jump face
};

struct WettingReport {
  std::vector<WettingSegment> segments;
};

// Per boundary-chain wetting: a segment is wetted when a jump face lies in
// the 1-ring (the elementary-loop faces) of one of its codim-2 elements.
WettingReport wetting_report(const JumpSet& jump, const RasterScene& raster);

// Wavefront OBJ export: one quad per 3D jump face, one line segment per 2D
// jump face; vertices deduplicated, deterministic ordering.
void export_obj(const JumpSet& jump, const RasterScene& raster, const std::string& path);

// Run report: {scene, grid, weighting, solver, certificate, energy, tv,
// area, wetting, seed, wallclock} plus the effective config echo.
void report_json(const SolveResult& result, const WettingReport& wetting,
                 const RasterScene& raster, const std::string& weighting_name,
                 const std::string& path, const std::vector<std::pair<std::string, std::string>>&
                                               config_echo = {});

}  // namespace plateau
