#include "plateau/solve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "maxflow.hpp"

namespace plateau {

namespace {

constexpr int64_t kScale = 1 << 16;
constexpr int64_t kInf = int64_t{1} << 56;

double now_sec() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

int64_t scaled(double w) { return static_cast<int64_t>(std::llround(w * kScale)); }

int64_t scaled_energy(const RasterScene& raster, const Weighting& weighting,
                      const Labeling& sigma) {
  int64_t e = 0;
  for (const auto& t : weighting.terms()) {
    const int sa = sigma.sheet[static_cast<size_t>(t.cell_a)];
    const int sb = sigma.sheet[static_cast<size_t>(t.cell_b)];
    if (raster.apply_perm(t.perm, sa) != sb) e += scaled(t.weight);
  }
  return e;
}

// Per-cell incidence of weighting terms, for local move evaluation.
std::vector<std::vector<int32_t>> build_incidence(const RasterScene& raster,
                                                  const Weighting& weighting) {
  std::vector<std::vector<int32_t>> inc(static_cast<size_t>(raster.num_cells()));
  const auto& terms = weighting.terms();
  for (size_t ti = 0; ti < terms.size(); ++ti) {
    inc[static_cast<size_t>(terms[ti].cell_a)].push_back(static_cast<int32_t>(ti));
    inc[static_cast<size_t>(terms[ti].cell_b)].push_back(static_cast<int32_t>(ti));
  }
  return inc;
}

double cell_local_energy(const RasterScene& raster, const Weighting& weighting,
                         const std::vector<std::vector<int32_t>>& inc, const Labeling& sigma,
                         int cell, int sheet) {
  double e = 0;
  for (int32_t ti : inc[static_cast<size_t>(cell)]) {
    const auto& t = weighting.terms()[static_cast<size_t>(ti)];
    const int sa = t.cell_a == cell ? sheet : sigma.sheet[static_cast<size_t>(t.cell_a)];
    const int sb = t.cell_b == cell ? sheet : sigma.sheet[static_cast<size_t>(t.cell_b)];
    if (raster.apply_perm(t.perm, sa) != sb) e += t.weight;
  }
  return e;
}

SolveResult finish(const RasterScene& raster, const CoverGraph& cover, const Weighting& weighting,
                   Labeling labeling, const std::string& solver, const std::string& certificate,
                   uint64_t seed, int restarts, double t0) {
  SolveResult res;
  res.labeling = std::move(labeling);
  res.energy = energy(res.labeling, cover, weighting);
  res.tv = 2.0 * res.energy;
  res.solver = solver;
  res.certificate = certificate;
  res.seed = seed;
  res.restarts = restarts;
  res.wallclock_sec = now_sec() - t0;
  (void)raster;
  return res;
}

}  // namespace

SolveResult brute_force(const RasterScene& raster, const CoverGraph& cover,
                        const Weighting& weighting, uint64_t max_states) {
  const double t0 = now_sec();
  const int d = raster.degree();
  std::vector<int> free_cells;
  for (int c = 0; c < raster.num_cells(); ++c)
    if (!raster.is_collar(c)) free_cells.push_back(c);
  double states = std::pow(static_cast<double>(d), static_cast<double>(free_cells.size()));
  if (states > static_cast<double>(max_states))
    throw SolveError("brute force state space " + std::to_string(free_cells.size()) +
                     " cells^" + std::to_string(d) + " exceeds the limit");

  Labeling sigma = uniform_labeling(raster);
  for (int c : free_cells) sigma.sheet[static_cast<size_t>(c)] = 1;
  Labeling best = sigma;
  double best_e = energy(sigma, cover, weighting);

  // Odometer in lexicographic order of the labeling vector: the last free
  // cell varies fastest; strict improvement keeps the lexicographically
  // smallest argmin.
  while (true) {
    int pos = static_cast<int>(free_cells.size()) - 1;
    while (pos >= 0) {
      uint8_t& s = sigma.sheet[static_cast<size_t>(free_cells[static_cast<size_t>(pos)])];
      if (s < d) {
        ++s;
        break;
      }
      s = 1;
      --pos;
    }
    if (pos < 0) break;
    const double e = energy(sigma, cover, weighting);
    if (e < best_e - 1e-12) {
      best_e = e;
      best = sigma;
    }
  }
  return finish(raster, cover, weighting, std::move(best), "brute", "exact", 0, 0, t0);
}

SolveResult mincut_degree2(const RasterScene& raster, const CoverGraph& cover,
                           const Weighting& weighting) {
  const double t0 = now_sec();
  if (raster.degree() != 2) throw SolveError("mincut_degree2 requires a degree-2 cover");
  const int n_cells = raster.num_cells();
  const int n_nodes = cover.num_nodes();
  const int src = n_nodes, snk = n_nodes + 1;
  MaxFlow mf(n_nodes + 2);
  const int ds = raster.dirichlet_sheet();
  for (int c = 0; c < n_cells; ++c) {
    if (!raster.is_collar(c)) continue;
    mf.add_edge(src, cover.node(c, ds), kInf, 0);
    mf.add_edge(cover.node(c, 3 - ds), snk, kInf, 0);
  }
  for (const auto& t : weighting.terms()) {
    const int64_t cap = scaled(t.weight);
    if (cap <= 0) continue;
    for (int s = 1; s <= 2; ++s) {
      const int a = cover.node(t.cell_a, s);
      const int b = cover.node(t.cell_b, raster.apply_perm(t.perm, s));
      mf.add_edge(a, b, cap, cap);
    }
  }
  const int64_t cut = mf.solve(src, snk);

  // Read the constrained labeling off the source side; the sheet-1 node
  // decides fibers left inconsistent by the unconstrained cut.
  Labeling sigma = uniform_labeling(raster);
  for (int c = 0; c < n_cells; ++c) {
    if (raster.is_collar(c)) continue;
    sigma.sheet[static_cast<size_t>(c)] = mf.source_side(cover.node(c, 1))
                                              ? static_cast<uint8_t>(ds)
                                              : static_cast<uint8_t>(3 - ds);
  }
  // Certify: the recomputed constrained energy must equal cut/2 in the same
  // integer weights; otherwise fall back to the heuristic.
  const int64_t e_int = scaled_energy(raster, weighting, sigma);
  if (2 * e_int != cut) {
    HeuristicParams params;
    params.restarts = 8;
    SolveResult fb = heuristic(raster, cover, weighting, params);
    fb.solver = "mincut";
    fb.certificate = "heuristic";
    fb.wallclock_sec = now_sec() - t0;
    return fb;
  }
  return finish(raster, cover, weighting, std::move(sigma), "mincut", "exact", 0, 0, t0);
}

namespace {

struct RestartOutcome {
  double energy = 0;
  Labeling labeling;
};

// One pairwise-sheet swap move (sheets a < b) solved as a binary min-cut
// when every induced pairwise term is submodular; returns false (no change)
// otherwise.
bool swap_move(const RasterScene& raster, const Weighting& weighting,
               const std::vector<std::vector<int32_t>>& inc, Labeling& sigma, int la, int lb) {
  const int n_cells = raster.num_cells();
  std::vector<int32_t> var(static_cast<size_t>(n_cells), -1);
  std::vector<int32_t> cells;
  for (int c = 0; c < n_cells; ++c) {
    const int s = sigma.sheet[static_cast<size_t>(c)];
    if ((s == la || s == lb) && !raster.is_collar(c)) {
      var[static_cast<size_t>(c)] = static_cast<int32_t>(cells.size());
      cells.push_back(c);
    }
  }
  if (cells.empty()) return false;

  const int n_vars = static_cast<int>(cells.size());
  std::vector<int64_t> lin(static_cast<size_t>(n_vars), 0);  // coefficient of x=1 (label lb)
  struct PairArc {
    int u, v;
    int64_t cap;
  };
  std::vector<PairArc> arcs;

  auto label_of = [&](int x) { return x == 0 ? la : lb; };
  for (const auto& t : weighting.terms()) {
    const int va = var[static_cast<size_t>(t.cell_a)];
    const int vb = var[static_cast<size_t>(t.cell_b)];
    if (va < 0 && vb < 0) continue;
    const int64_t wcap = scaled(t.weight);
    auto mism = [&](int sa, int sb) {
      return raster.apply_perm(t.perm, sa) != sb ? wcap : int64_t{0};
    };
    if (va >= 0 && vb >= 0) {
      const int64_t A = mism(label_of(0), label_of(0));
      const int64_t B = mism(label_of(0), label_of(1));
      const int64_t C = mism(label_of(1), label_of(0));
      const int64_t D = mism(label_of(1), label_of(1));
      if (A + D > B + C) return false;  // non-submodular: skip the pair move
      lin[static_cast<size_t>(va)] += C - A;
      lin[static_cast<size_t>(vb)] += D - C;
      if (B + C - A - D > 0) arcs.push_back({va, vb, B + C - A - D});
    } else if (va >= 0) {
      const int sb = sigma.sheet[static_cast<size_t>(t.cell_b)];
      lin[static_cast<size_t>(va)] += mism(lb, sb) - mism(la, sb);
    } else {
      const int sa = sigma.sheet[static_cast<size_t>(t.cell_a)];
      lin[static_cast<size_t>(vb)] += mism(sa, lb) - mism(sa, la);
    }
  }

  MaxFlow mf(n_vars + 2);
  const int src = n_vars, snk = n_vars + 1;
  for (int vi = 0; vi < n_vars; ++vi) {
    const int64_t c = lin[static_cast<size_t>(vi)];
    // x=1 means sink side here: cost c*x via src->v (cut when v on sink side)
    if (c > 0)
      mf.add_edge(src, vi, c, 0);
    else if (c < 0)
      mf.add_edge(vi, snk, -c, 0);
  }
  for (const auto& arc : arcs) mf.add_edge(arc.u, arc.v, arc.cap, 0);
  mf.solve(src, snk);

  const int64_t before = scaled_energy(raster, weighting, sigma);
  Labeling trial = sigma;
  for (int vi = 0; vi < n_vars; ++vi) {
    const bool x_one = !mf.source_side(vi);  // sink side: label lb
    trial.sheet[static_cast<size_t>(cells[static_cast<size_t>(vi)])] =
        static_cast<uint8_t>(x_one ? lb : la);
  }
  const int64_t after = scaled_energy(raster, weighting, trial);
  if (after < before) {
    sigma = std::move(trial);
    return true;
  }
  (void)inc;
  return false;
}

// Exact re-labeling of one grid line (all cells along `axis` at fixed
// transverse coordinates) by chain dynamic programming, everything else
// fixed. Weighting terms never join two non-adjacent cells of a line, so
// the chain decomposition is exact. Returns true when the line improved.
bool line_dp_pass(const RasterScene& raster, const Weighting& weighting,
                  const std::vector<std::vector<int32_t>>& inc, Labeling& sigma, int axis,
                  std::array<int, 3> base) {
  const int d = raster.degree();
  const int len = raster.dims()[axis];
  const int ds = raster.dirichlet_sheet();
  std::vector<int> cells(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) {
    std::array<int, 3> cc = base;
    cc[axis] = i;
    cells[static_cast<size_t>(i)] = raster.cell_index(cc[0], cc[1], cc[2]);
  }
  auto in_line_pos = [&](int cell) -> int {
    const auto cc = raster.cell_at(cell);
    for (int a = 0; a < 3; ++a)
      if (a != axis && cc[a] != base[a]) return -1;
    return cc[axis];
  };

  const double kBig = 1e30;
  std::vector<double> unary(static_cast<size_t>(len * d), 0.0);
  std::vector<double> pair(static_cast<size_t>(std::max(0, len - 1) * d * d), 0.0);
  double current_cost = 0;
  for (int i = 0; i < len; ++i) {
    const int c = cells[static_cast<size_t>(i)];
    for (int32_t ti : inc[static_cast<size_t>(c)]) {
      const auto& t = weighting.terms()[static_cast<size_t>(ti)];
      const int other = t.cell_a == c ? t.cell_b : t.cell_a;
      const int opos = in_line_pos(other);
      if (opos == i + 1) {
        for (int s = 1; s <= d; ++s)
          for (int s2 = 1; s2 <= d; ++s2) {
            const int sa = t.cell_a == c ? s : s2;
            const int sb = t.cell_a == c ? s2 : s;
            if (raster.apply_perm(t.perm, sa) != sb)
              pair[static_cast<size_t>((i * d + (s - 1)) * d + (s2 - 1))] += t.weight;
          }
      } else if (opos == i - 1) {
        // counted as pair[i-1] from the other endpoint
      } else {
        const int so = sigma.sheet[static_cast<size_t>(other)];
        for (int s = 1; s <= d; ++s) {
          const int sa = t.cell_a == c ? s : so;
          const int sb = t.cell_a == c ? so : s;
          if (raster.apply_perm(t.perm, sa) != sb)
            unary[static_cast<size_t>(i * d + (s - 1))] += t.weight;
        }
      }
    }
  }
  // current line cost under the same decomposition
  for (int i = 0; i < len; ++i) {
    const int s = sigma.sheet[static_cast<size_t>(cells[static_cast<size_t>(i)])];
    current_cost += unary[static_cast<size_t>(i * d + (s - 1))];
    if (i + 1 < len) {
      const int s2 = sigma.sheet[static_cast<size_t>(cells[static_cast<size_t>(i + 1)])];
      current_cost += pair[static_cast<size_t>((i * d + (s - 1)) * d + (s2 - 1))];
    }
  }

  auto allowed = [&](int i, int s) {
    return !raster.is_collar(cells[static_cast<size_t>(i)]) || s == ds;
  };
  std::vector<double> dp(static_cast<size_t>(len * d), kBig);
  std::vector<int8_t> from(static_cast<size_t>(len * d), 0);
  for (int s = 1; s <= d; ++s)
    if (allowed(0, s)) dp[static_cast<size_t>(s - 1)] = unary[static_cast<size_t>(s - 1)];
  for (int i = 1; i < len; ++i)
    for (int s = 1; s <= d; ++s) {
      if (!allowed(i, s)) continue;
      double best = kBig;
      int8_t arg = 0;
      for (int s2 = 1; s2 <= d; ++s2) {
        const double v = dp[static_cast<size_t>((i - 1) * d + (s2 - 1))] +
                         pair[static_cast<size_t>(((i - 1) * d + (s2 - 1)) * d + (s - 1))];
        if (v < best) {
          best = v;
          arg = static_cast<int8_t>(s2);
        }
      }
      dp[static_cast<size_t>(i * d + (s - 1))] = best + unary[static_cast<size_t>(i * d + (s - 1))];
      from[static_cast<size_t>(i * d + (s - 1))] = arg;
    }
  double best = kBig;
  int arg = 0;
  for (int s = 1; s <= d; ++s) {
    const double v = dp[static_cast<size_t>((len - 1) * d + (s - 1))];
    if (v < best) {
      best = v;
      arg = s;
    }
  }
  if (best >= current_cost - 1e-12) return false;
  for (int i = len - 1; i >= 0; --i) {
    sigma.sheet[static_cast<size_t>(cells[static_cast<size_t>(i)])] = static_cast<uint8_t>(arg);
    arg = from[static_cast<size_t>(i * d + (arg - 1))];
  }
  return true;
}

bool line_sweep(const RasterScene& raster, const Weighting& weighting,
                const std::vector<std::vector<int32_t>>& inc, Labeling& sigma) {
  bool changed = false;
  const auto& n = raster.dims();
  const int dim = raster.dimension();
  for (int axis = 0; axis < dim; ++axis) {
    const int b = (axis + 1) % 3, c = (axis + 2) % 3;
    std::array<int, 3> base{0, 0, 0};
    for (int qc = 0; qc < n[c]; ++qc)
      for (int qb = 0; qb < n[b]; ++qb) {
        base[b] = qb;
        base[c] = qc;
        if (line_dp_pass(raster, weighting, inc, sigma, axis, base)) changed = true;
      }
  }
  return changed;
}

RestartOutcome run_restart(const RasterScene& raster, const Weighting& weighting,
                           const std::vector<std::vector<int32_t>>& inc,
                           const HeuristicParams& params, uint64_t restart_seed,
                           bool uniform_start) {
  const int d = raster.degree();
  const int n_cells = raster.num_cells();
  std::mt19937_64 rng(restart_seed);
  Labeling sigma = uniform_labeling(raster);
  std::vector<int> free_cells;
  for (int c = 0; c < n_cells; ++c)
    if (!raster.is_collar(c)) free_cells.push_back(c);
  std::uniform_int_distribution<int> sheet_dist(1, d);
  if (!uniform_start)
    for (int c : free_cells)
      sigma.sheet[static_cast<size_t>(c)] = static_cast<uint8_t>(sheet_dist(rng));

  double temp = params.initial_temperature > 0 ? params.initial_temperature
                                               : std::max(weighting.mean_weight(), 1e-12);
  double best_e = 0;
  for (const auto& t : weighting.terms()) {
    const int sa = sigma.sheet[static_cast<size_t>(t.cell_a)];
    const int sb = sigma.sheet[static_cast<size_t>(t.cell_b)];
    if (raster.apply_perm(t.perm, sa) != sb) best_e += t.weight;
  }
  Labeling best = sigma;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto icm_pass = [&](Labeling& lab) {
    bool changed = false;
    for (int c : free_cells) {
      const int cur = lab.sheet[static_cast<size_t>(c)];
      int arg = cur;
      double arg_e = cell_local_energy(raster, weighting, inc, lab, c, cur);
      for (int s = 1; s <= d; ++s) {
        if (s == cur) continue;
        const double e = cell_local_energy(raster, weighting, inc, lab, c, s);
        if (e < arg_e - 1e-12) {
          arg_e = e;
          arg = s;
        }
      }
      if (arg != cur) {
        lab.sheet[static_cast<size_t>(c)] = static_cast<uint8_t>(arg);
        changed = true;
      }
    }
    return changed;
  };
  auto total_energy = [&](const Labeling& lab) {
    double e = 0;
    for (const auto& t : weighting.terms()) {
      const int sa = lab.sheet[static_cast<size_t>(t.cell_a)];
      const int sb = lab.sheet[static_cast<size_t>(t.cell_b)];
      if (raster.apply_perm(t.perm, sa) != sb) e += t.weight;
    }
    return e;
  };

  // Proposal mix: uniform random sheet, or a face-neighbor's label
  // transported through the crossing permutation (advances or retreats a
  // jump front by one cell).
  const int dim = raster.dimension();
  std::uniform_int_distribution<int> dir_dist(0, 2 * dim - 1);
  auto transported_neighbor_label = [&](int c) -> int {
    const auto cc = raster.cell_at(c);
    const int pick = dir_dist(rng);
    const int axis = pick / 2;
    const int dir = pick % 2 == 0 ? +1 : -1;
    std::array<int, 3> nb = cc;
    nb[axis] += dir;
    if (!raster.in_grid(nb[0], nb[1], nb[2])) return sigma.sheet[static_cast<size_t>(c)];
    const int nb_idx = raster.cell_index(nb[0], nb[1], nb[2]);
    const int perm = raster.step_perm(axis, nb, -dir);  // stepping nb -> c
    return raster.apply_perm(perm, sigma.sheet[static_cast<size_t>(nb_idx)]);
  };

  auto icm_to_convergence = [&](Labeling& lab) {
    int guard = 0;
    bool changed = true;
    while (changed && ++guard < 200) {
      changed = icm_pass(lab);
      if (line_sweep(raster, weighting, inc, lab)) changed = true;
    }
  };

  // Initial quench, then annealing with the thermal state carried across
  // sweeps; progress is measured on periodically quenched snapshots.
  icm_to_convergence(sigma);
  best = sigma;
  best_e = total_energy(sigma);

  constexpr int kQuenchPeriod = 5;
  int stall = 0;
  for (int sweep = 0; sweep < params.max_sweeps && stall < params.stall_sweeps; ++sweep) {
    for (int c : free_cells) {
      const int cur = sigma.sheet[static_cast<size_t>(c)];
      int prop;
      if (unit(rng) < 0.5) {
        prop = transported_neighbor_label(c);
      } else {
        prop = sheet_dist(rng);
      }
      if (prop == cur) prop = prop % d + 1;
      const double e_cur = cell_local_energy(raster, weighting, inc, sigma, c, cur);
      const double e_prop = cell_local_energy(raster, weighting, inc, sigma, c, prop);
      const double delta = e_prop - e_cur;
      if (delta <= 0 || unit(rng) < std::exp(-delta / temp))
        sigma.sheet[static_cast<size_t>(c)] = static_cast<uint8_t>(prop);
    }
    temp *= params.decay;

    ++stall;
    if (sweep % kQuenchPeriod == kQuenchPeriod - 1) {
      Labeling trial = sigma;
      icm_to_convergence(trial);
      const double e = total_energy(trial);
      if (e < best_e - 1e-12) {
        best_e = e;
        best = trial;
        stall = 0;
      }
    }
  }

  sigma = best;
  // Pairwise-sheet expansion (swap) rounds
  for (int round = 0; round < params.swap_rounds; ++round) {
    bool improved = false;
    for (int la = 1; la <= d; ++la)
      for (int lb = la + 1; lb <= d; ++lb)
        if (swap_move(raster, weighting, inc, sigma, la, lb)) improved = true;
    if (!improved) break;
  }

  RestartOutcome out;
  out.labeling = sigma;
  out.energy = total_energy(sigma);
  return out;
}

}  // namespace

SolveResult heuristic(const RasterScene& raster, const CoverGraph& cover,
                      const Weighting& weighting, const HeuristicParams& params) {
  const double t0 = now_sec();
  const auto inc = build_incidence(raster, weighting);
  const int restarts = std::max(1, params.restarts);
  std::vector<RestartOutcome> outcomes(static_cast<size_t>(restarts));

  const int threads = std::clamp(params.threads, 1, restarts);
  // Restart 0 starts from the constant Dirichlet labeling; the rest start
  // from random admissible fields.
  auto work = [&](int r) {
    outcomes[static_cast<size_t>(r)] = run_restart(
        raster, weighting, inc, params, params.seed + 1000003ull * static_cast<uint64_t>(r), r == 0);
  };
  if (threads <= 1) {
    for (int r = 0; r < restarts; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        int r;
        while ((r = next.fetch_add(1)) < restarts) work(r);
      });
    for (auto& th : pool) th.join();
  }

  // Deterministic merge regardless of completion order.
  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    const auto& a = outcomes[static_cast<size_t>(r)];
    const auto& b = outcomes[static_cast<size_t>(best)];
    if (a.energy < b.energy - 1e-12 ||
        (std::abs(a.energy - b.energy) <= 1e-12 && a.labeling.sheet < b.labeling.sheet))
      best = r;
  }
  SolveResult res = finish(raster, cover, weighting, std::move(outcomes[static_cast<size_t>(best)].labeling),
                           "heuristic", "heuristic", params.seed, restarts, t0);
  return res;
}

}  // namespace plateau
