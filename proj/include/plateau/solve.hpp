#pragma once

#include <cstdint>
#include <string>

#include "plateau/cover.hpp"
#include "plateau/functional.hpp"
#include "plateau/raster.hpp"

namespace plateau {

class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveResult {
  Labeling labeling;
  double energy = 0;  // recomputed from scratch on return
  double tv = 0;      // = 2 * energy
  std::string solver;
  std::string certificate;  // "exact" or "heuristic"
  uint64_t seed = 0;
  int restarts = 0;
  double wallclock_sec = 0;
};

struct HeuristicParams {
  uint64_t seed = 0;
  int restarts = 8;
  double initial_temperature = -1;  // < 0: mean term weight
  double decay = 0.95;
  int stall_sweeps = 50;  // stop after this many sweeps without improvement
  int max_sweeps = 4000;
  int swap_rounds = 8;
  int threads = 1;
};

// Exhaustive search over all labelings with the Dirichlet collar fixed.
// Ties break to the lexicographically smallest labeling. Errors when
// degree^(#non-collar cells) exceeds max_states.
SolveResult brute_force(const RasterScene& raster, const CoverGraph& cover,
                        const Weighting& weighting, uint64_t max_states = (1ull << 24));

// Exact s-t min-cut on the degree-2 cover graph. The constrained labeling is
// read off the source side (sheet-1 node wins on inconsistent fibers); the
// run is certified by comparing the recomputed constrained energy with the
// cut value and falls back to the heuristic when they disagree.
SolveResult mincut_degree2(const RasterScene& raster, const CoverGraph& cover,
                           const Weighting& weighting);

// Multi-start annealing + iterated conditional re-labeling + submodular
// pairwise-sheet swap moves. Deterministic for a fixed seed; restarts may
// run in parallel and merge by (energy, lexicographic labeling).
SolveResult heuristic(const RasterScene& raster, const CoverGraph& cover,
                      const Weighting& weighting, const HeuristicParams& params = {});

}  // namespace plateau
