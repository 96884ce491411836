#include "plateau/cover.hpp"

#include <deque>

namespace plateau {

CoverGraph::CoverGraph(const RasterScene& raster) : raster_(&raster), d_(raster.degree()) {}

CoverGraph build_cover(const RasterScene& raster) {
  ValidationReport rep = validate(raster);
  if (rep.status == ValidationStatus::Fail)
    throw CoverError("cannot build cover: validation failed (" +
                     (rep.notes.empty() ? std::string("inconsistent gluing") : rep.notes.front()) +
                     ")");
  return CoverGraph(raster);
}

std::vector<int> CoverGraph::fiber(int cell) const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(d_));
  for (int s = 1; s <= d_; ++s) out.push_back(node(cell, s));
  return out;
}

void CoverGraph::for_each_base_pair(
    const std::function<void(int, int, int, double)>& fn) const {
  const auto& n = raster_->dims();
  const int dim = raster_->dimension();
  const double w = dim == 3 ? raster_->spacing() * raster_->spacing() : raster_->spacing();
  std::array<int, 3> c{};
  for (c[2] = 0; c[2] < n[2]; ++c[2])
    for (c[1] = 0; c[1] < n[1]; ++c[1])
      for (c[0] = 0; c[0] < n[0]; ++c[0]) {
        for (int axis = 0; axis < dim; ++axis) {
          if (c[axis] + 1 >= n[axis]) continue;
          std::array<int, 3> b = c;
          b[axis] += 1;
          fn(raster_->cell_index(c[0], c[1], c[2]), raster_->cell_index(b[0], b[1], b[2]),
             raster_->step_perm(axis, c, +1), w);
        }
      }
}

void CoverGraph::for_each_cover_edge(
    const std::function<void(int, int, double)>& fn) const {
  for_each_base_pair([&](int ca, int cb, int perm, double w) {
    for (int s = 1; s <= d_; ++s) fn(node(ca, s), node(cb, raster_->apply_perm(perm, s)), w);
  });
}

int64_t CoverGraph::num_cover_edges() const {
  int64_t count = 0;
  for_each_base_pair([&](int, int, int, double) { count += d_; });
  return count;
}

Permutation path_monodromy(const RasterScene& raster, const BasePath& path) {
  if (path.cells.size() < 2) return Permutation::identity(raster.degree());
  int acc = 0;
  const size_t steps = path.cells.size() - 1;
  for (size_t t = 0; t < steps; ++t) {
    const auto& from = path.cells[t];
    const auto& to = path.cells[t + 1];
    if (!raster.in_grid(from[0], from[1], from[2]) || !raster.in_grid(to[0], to[1], to[2]))
      throw CoverError("path leaves the grid");
    int axis = -1, dir = 0, moved = 0;
    for (int a = 0; a < 3; ++a) {
      if (to[a] != from[a]) {
        axis = a;
        dir = to[a] - from[a];
        ++moved;
      }
    }
    if (moved != 1 || (dir != 1 && dir != -1))
      throw CoverError("consecutive path cells are not face-adjacent");
    acc = raster.compose_perms(acc, raster.step_perm(axis, from, dir));
  }
  return raster.perm(acc);
}

namespace {

// The codim-2 elements bounding a grid face.
std::vector<Elem> face_elems(const RasterScene& raster, int axis, const std::array<int, 3>& lo) {
  std::vector<Elem> out;
  if (raster.dimension() == 2) {
    // face between cells along `axis`; endpoints are two lattice vertices
    Elem e;
    e.axis = 2;
    if (axis == 0) {
      e.q = {lo[0] + 1, lo[1], 0};
      out.push_back(e);
      e.q = {lo[0] + 1, lo[1] + 1, 0};
      out.push_back(e);
    } else {
      e.q = {lo[0], lo[1] + 1, 0};
      out.push_back(e);
      e.q = {lo[0] + 1, lo[1] + 1, 0};
      out.push_back(e);
    }
    return out;
  }
  // 3D: the 4 lattice edges of the face between lo and lo+e_axis
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  std::array<int, 3> base = lo;
  base[axis] += 1;  // lattice plane of the face
  for (int side = 0; side < 2; ++side) {
    Elem eb;  // edge along b
    eb.axis = b;
    eb.q = base;
    eb.q[c] += side;
    out.push_back(eb);
    Elem ec;  // edge along c
    ec.axis = c;
    ec.q = base;
    ec.q[b] += side;
    out.push_back(ec);
  }
  return out;
}

}  // namespace

int link2(const RasterScene& raster, const BasePath& loop, std::vector<int> patch_family) {
  if (!loop.closed || loop.cells.size() < 2 || loop.cells.front() != loop.cells.back())
    throw CoverError("link2 requires a closed loop (first cell repeated at the end)");
  std::vector<bool> in_family(static_cast<size_t>(raster.num_patches()), patch_family.empty());
  for (int p : patch_family) in_family.at(static_cast<size_t>(p)) = true;
  int count = 0;
  for (size_t t = 0; t + 1 < loop.cells.size(); ++t) {
    const auto& from = loop.cells[t];
    const auto& to = loop.cells[t + 1];
    int axis = -1, dir = 0, moved = 0;
    for (int a = 0; a < 3; ++a)
      if (to[a] != from[a]) {
        axis = a;
        dir = to[a] - from[a];
        ++moved;
      }
    if (moved != 1 || (dir != 1 && dir != -1))
      throw CoverError("consecutive loop cells are not face-adjacent");
    std::array<int, 3> lo = from;
    if (dir < 0) lo[axis] -= 1;
    for (const Elem& e : face_elems(raster, axis, lo)) {
      const int c = raster.elem_curve(e);
      if (c >= 0 && raster.curve_role(c) == CurveRole::Boundary)
        throw CoverError("loop touches an S-marked element");
    }
    const int ref = raster.face_patch_ref(axis, lo);
    if (ref != 0 && in_family[static_cast<size_t>(std::abs(ref) - 1)]) ++count;
  }
  return count % 2;
}

std::vector<uint8_t> parity_region(const RasterScene& ra, const RasterScene& rb,
                                   const std::array<int, 3>& basepoint_cell) {
  if (ra.dims() != rb.dims() || ra.dimension() != rb.dimension())
    throw CoverError("parity_region requires matching grids");
  if (!ra.in_grid(basepoint_cell[0], basepoint_cell[1], basepoint_cell[2]))
    throw CoverError("basepoint outside grid");
  const int n_cells = ra.num_cells();
  std::vector<uint8_t> parity(static_cast<size_t>(n_cells), 0);
  std::vector<uint8_t> seen(static_cast<size_t>(n_cells), 0);
  std::deque<int> queue;
  const int start = ra.cell_index(basepoint_cell[0], basepoint_cell[1], basepoint_cell[2]);
  seen[static_cast<size_t>(start)] = 1;
  queue.push_back(start);
  const int dim = ra.dimension();
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const auto c = ra.cell_at(cur);
    for (int axis = 0; axis < dim; ++axis) {
      for (int dir : {+1, -1}) {
        std::array<int, 3> nb = c;
        nb[axis] += dir;
        if (!ra.in_grid(nb[0], nb[1], nb[2])) continue;
        const int nb_idx = ra.cell_index(nb[0], nb[1], nb[2]);
        if (seen[static_cast<size_t>(nb_idx)]) continue;
        std::array<int, 3> lo = c;
        if (dir < 0) lo[axis] -= 1;
        const bool flip = (ra.face_patch_ref(axis, lo) != 0) != (rb.face_patch_ref(axis, lo) != 0);
        seen[static_cast<size_t>(nb_idx)] = 1;
        parity[static_cast<size_t>(nb_idx)] =
            static_cast<uint8_t>(parity[static_cast<size_t>(cur)] ^ (flip ? 1 : 0));
        queue.push_back(nb_idx);
      }
    }
  }
  return parity;
}

Labeling transport_labeling(const Labeling& sigma, const RasterScene& ra, const RasterScene& rb) {
  if (ra.degree() != 2 || rb.degree() != 2)
    throw CoverError("transport_labeling requires degree 2");
  if (sigma.raster_key != ra.content_key())
    throw CoverError("labeling does not belong to the source raster");
  // Basepoint: the first collar cell (the corner), which sits off both cut
  // systems by the scene collar invariant.
  std::vector<uint8_t> h = parity_region(ra, rb, {0, 0, 0});
  Labeling out = sigma;
  out.raster_key = rb.content_key();
  for (size_t c = 0; c < out.sheet.size(); ++c)
    if (h[c]) out.sheet[c] = static_cast<uint8_t>(3 - out.sheet[c]);
  return out;
}

}  // namespace plateau
