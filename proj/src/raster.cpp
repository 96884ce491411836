#include "plateau/raster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace plateau {

namespace {

// Fixed sub-cell jitter applied to patch geometry before the crossing tests.
// Authored geometry sits on lattice planes; the offset breaks ties where a
// crossing segment would graze a triangle edge (diagonal patches) without
// moving any crossing across a cell-center boundary.
const Vec3 kJitter(1.09e-4, 2.17e-4, 3.41e-4);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 < 1e-30) return (p - a).norm();
  double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Segment p0->p1 against triangle; returns crossing parameter sign of
// (normal . direction): +1/-1, or 0 when no transversal crossing.
int segment_triangle_crossing(const Vec3& p0, const Vec3& p1, const Triangle& tri) {
  const Vec3 dir = p1 - p0;
  const Vec3 e1 = tri.b - tri.a;
  const Vec3 e2 = tri.c - tri.a;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < 1e-14) return 0;
  const double inv = 1.0 / det;
  const Vec3 tvec = p0 - tri.a;
  const double u = tvec.dot(pvec) * inv;
  if (u < 0.0 || u > 1.0) return 0;
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv;
  if (v < 0.0 || u + v > 1.0) return 0;
  const double t = e2.dot(qvec) * inv;
  if (t <= 0.0 || t >= 1.0) return 0;
  return tri.normal().dot(dir) > 0 ? +1 : -1;
}

// 2D: segment p0->p1 (dual step) against cut segment a->b; sign of
// (left normal of a->b) . direction, or 0.
int segment_segment_crossing(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b) {
  const double rx = p1.x() - p0.x(), ry = p1.y() - p0.y();
  const double sx = b.x() - a.x(), sy = b.y() - a.y();
  const double denom = rx * sy - ry * sx;
  if (std::abs(denom) < 1e-14) return 0;
  const double qpx = a.x() - p0.x(), qpy = a.y() - p0.y();
  const double t = (qpx * sy - qpy * sx) / denom;
  const double u = (qpx * ry - qpy * rx) / denom;
  if (t <= 0.0 || t >= 1.0 || u < 0.0 || u > 1.0) return 0;
  const double nx = -sy, ny = sx;  // left normal of the cut direction
  return nx * rx + ny * ry > 0 ? +1 : -1;
}

}  // namespace

Vec3 RasterScene::cell_center(int idx) const {
  auto c = cell_at(idx);
  return origin_ + h_ * Vec3(c[0] + 0.5, c[1] + 0.5, dimension_ == 3 ? c[2] + 0.5 : 0.0);
}

bool RasterScene::is_collar(int idx) const {
  auto c = cell_at(idx);
  if (c[0] == 0 || c[0] == n_[0] - 1 || c[1] == 0 || c[1] == n_[1] - 1) return true;
  if (dimension_ == 3 && (c[2] == 0 || c[2] == n_[2] - 1)) return true;
  return false;
}

int RasterScene::num_interior_cells() const {
  int count = 0;
  for (int idx = 0; idx < num_cells(); ++idx)
    if (!is_collar(idx)) ++count;
  return count;
}

int RasterScene::perm_id(const Permutation& p) {
  for (size_t i = 0; i < perm_table_.size(); ++i)
    if (perm_table_[i] == p) return static_cast<int>(i);
  perm_table_.push_back(p);
  std::array<uint8_t, 8> app{};
  for (int s = 1; s <= degree_; ++s) app[static_cast<size_t>(s - 1)] = static_cast<uint8_t>(p.apply(s));
  perm_apply_.push_back(app);
  perm_inverse_.push_back(-1);
  for (auto& row : compose_cache_) row.resize(perm_table_.size(), -1);
  compose_cache_.emplace_back(perm_table_.size(), -1);
  const int id = static_cast<int>(perm_table_.size()) - 1;
  // resolve inverses lazily but eagerly is cheap here
  const Permutation inv = p.inverse();
  for (size_t i = 0; i < perm_table_.size(); ++i) {
    if (perm_table_[i] == inv) {
      perm_inverse_[static_cast<size_t>(id)] = static_cast<int>(i);
      perm_inverse_[i] = id;
    }
  }
  if (perm_inverse_[static_cast<size_t>(id)] < 0) {
    // inverse not interned yet; intern it (recursion terminates: inverse of
    // inverse is p which is present)
    const int inv_id = perm_id(inv);
    perm_inverse_[static_cast<size_t>(id)] = inv_id;
    perm_inverse_[static_cast<size_t>(inv_id)] = id;
  }
  return id;
}

int RasterScene::compose_perms(int a, int b) const {
  const int slot = compose_cache_[static_cast<size_t>(a)][static_cast<size_t>(b)];
  if (slot < 0) throw RasterError("permutation table not sealed");
  return slot;
}

void RasterScene::seal_perm_table() {
  // Close the interned set under composition so later queries are pure reads.
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t n = perm_table_.size();
    if (n > 720) throw RasterError("face permutation closure exceeds |S_6|");
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        if (compose_cache_[a][b] >= 0) continue;
        const size_t before = perm_table_.size();
        compose_cache_[a][b] = perm_id(perm_table_[a] * perm_table_[b]);
        if (perm_table_.size() != before) grew = true;
      }
    if (perm_table_.size() != n) grew = true;
  }
}

int RasterScene::face_linear(int axis, const std::array<int, 3>& cell) const {
  const int fa = n_[axis] - 1;
  (void)fa;
  // faces indexed by the lower cell (i along axis in [0, n_axis-2])
  const int i = cell[0], j = cell[1], k = cell[2];
  switch (axis) {
    case 0:
      return (k * n_[1] + j) * (n_[0] - 1) + i;
    case 1:
      return (k * (n_[1] - 1) + j) * n_[0] + i;
    default:
      return (k * n_[1] + j) * n_[0] + i;
  }
}

bool RasterScene::face_in_grid(int axis, const std::array<int, 3>& cell) const {
  if (!in_grid(cell[0], cell[1], cell[2])) return false;
  std::array<int, 3> hi = cell;
  hi[axis] += 1;
  return in_grid(hi[0], hi[1], hi[2]);
}

int RasterScene::face_patch_ref(int axis, const std::array<int, 3>& cell) const {
  return face_ref_[static_cast<size_t>(axis)][static_cast<size_t>(face_linear(axis, cell))];
}

Vec3 RasterScene::face_center(int axis, const std::array<int, 3>& cell) const {
  Vec3 c = origin_ + h_ * Vec3(cell[0] + 0.5, cell[1] + 0.5, dimension_ == 3 ? cell[2] + 0.5 : 0.0);
  c[axis] += 0.5 * h_;
  return c;
}

int RasterScene::step_perm(int axis, const std::array<int, 3>& cell, int dir) const {
  std::array<int, 3> lo = cell;
  if (dir < 0) lo[axis] -= 1;
  const int16_t id = face_perm_plus_[static_cast<size_t>(axis)][static_cast<size_t>(face_linear(axis, lo))];
  return dir > 0 ? id : perm_inverse_[static_cast<size_t>(id)];
}

int RasterScene::elem_linear(const Elem& e) const {
  // lattice points along each axis: n+1 transverse, n along the edge axis
  const int a = e.axis;
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  const int nb = n_[b] + 1, nc = n_[c] + 1;
  (void)nc;
  return (e.q[c] * nb + e.q[b]) * n_[a] + e.q[a];
}

bool RasterScene::elem_interior(const Elem& e) const {
  const int a = e.axis;
  if (dimension_ == 2 && a != 2) return false;
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  if (e.q[a] < 0 || e.q[a] >= n_[a]) return false;
  if (dimension_ == 2) return e.q[0] >= 1 && e.q[0] <= n_[0] - 1 && e.q[1] >= 1 && e.q[1] <= n_[1] - 1;
  return e.q[b] >= 1 && e.q[b] <= n_[b] - 1 && e.q[c] >= 1 && e.q[c] <= n_[c] - 1;
}

std::array<std::array<int, 3>, 4> RasterScene::elem_loop_cells(const Elem& e) const {
  const int a = e.axis;
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  std::array<std::array<int, 3>, 4> cells;
  const int offs[4][2] = {{-1, -1}, {0, -1}, {0, 0}, {-1, 0}};
  for (int t = 0; t < 4; ++t) {
    std::array<int, 3> cc{};
    cc[a] = e.q[a];
    cc[b] = e.q[b] + offs[t][0];
    cc[c] = e.q[c] + offs[t][1];
    cells[static_cast<size_t>(t)] = cc;
  }
  return cells;
}

int RasterScene::elem_monodromy(const Elem& e) const {
  if (!elem_interior(e)) return 0;
  auto cells = elem_loop_cells(e);
  int acc = 0;
  for (int t = 0; t < 4; ++t) {
    const auto& from = cells[static_cast<size_t>(t)];
    const auto& to = cells[static_cast<size_t>((t + 1) % 4)];
    int axis = 0, dir = 0;
    for (int ax = 0; ax < 3; ++ax) {
      if (to[ax] != from[ax]) {
        axis = ax;
        dir = to[ax] - from[ax];
      }
    }
    acc = compose_perms(acc, step_perm(axis, from, dir));
  }
  return acc;
}

int RasterScene::elem_curve(const Elem& e) const {
  const int a = e.axis;
  if (dimension_ == 2 && a != 2) return -1;
  if (e.q[a] < 0 || e.q[a] >= n_[a]) return -1;
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  if (e.q[b] < 0 || e.q[b] > n_[b] || e.q[c] < 0 || e.q[c] > n_[c]) return -1;
  return elem_curve_[static_cast<size_t>(a)][static_cast<size_t>(elem_linear(e))];
}

Vec3 RasterScene::elem_midpoint(const Elem& e) const {
  Vec3 p = origin_ + h_ * Vec3(e.q[0], e.q[1], dimension_ == 3 ? e.q[2] : 0.0);
  if (dimension_ == 3) p[e.axis] += 0.5 * h_;
  return p;
}

void RasterScene::for_each_elem(const std::function<void(const Elem&)>& fn) const {
  if (dimension_ == 2) {
    for (int j = 0; j <= n_[1]; ++j)
      for (int i = 0; i <= n_[0]; ++i) fn(Elem{2, {i, j, 0}});
    return;
  }
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    Elem e;
    e.axis = a;
    for (int qc = 0; qc <= n_[c]; ++qc)
      for (int qb = 0; qb <= n_[b]; ++qb)
        for (int qa = 0; qa < n_[a]; ++qa) {
          e.q[a] = qa;
          e.q[b] = qb;
          e.q[c] = qc;
          fn(e);
        }
  }
}

// ---------------------------------------------------------------------------
// rasterize
// ---------------------------------------------------------------------------

namespace {

// Greedy lattice walk from `from` to `to` hugging the straight segment.
std::vector<std::array<int, 3>> lattice_walk(std::array<int, 3> from, const std::array<int, 3>& to,
                                             const Vec3& seg_a, const Vec3& seg_b, double h,
                                             const Vec3& origin) {
  std::vector<std::array<int, 3>> points{from};
  auto dist = [&](const std::array<int, 3>& p) {
    Vec3 world = origin + h * Vec3(p[0], p[1], p[2]);
    return point_segment_distance(world, seg_a, seg_b);
  };
  std::array<int, 3> cur = from;
  int guard = 0;
  while (cur != to && ++guard < 100000) {
    int best_axis = -1;
    double best_d = 0;
    for (int a = 0; a < 3; ++a) {
      if (cur[a] == to[a]) continue;
      std::array<int, 3> nxt = cur;
      nxt[a] += (to[a] > cur[a]) ? 1 : -1;
      const double d = dist(nxt);
      if (best_axis < 0 || d < best_d - 1e-12) {
        best_axis = a;
        best_d = d;
      }
    }
    cur[best_axis] += (to[best_axis] > cur[best_axis]) ? 1 : -1;
    points.push_back(cur);
  }
  return points;
}

}  // namespace

RasterScene rasterize(const SceneSpec& spec) {
  spec.check();
  RasterScene r;
  r.scene_name_ = spec.name;
  r.dimension_ = spec.dimension;
  r.h_ = spec.grid_spacing;
  r.origin_ = spec.domain.min();
  r.degree_ = spec.degree;
  r.dirichlet_sheet_ = spec.dirichlet_sheet;
  for (int a = 0; a < 3; ++a) {
    const double extent = spec.domain.max()[a] - spec.domain.min()[a];
    if (a == 2 && spec.dimension == 2) {
      r.n_[2] = 1;
      continue;
    }
    const int cells = static_cast<int>(std::lround(extent / r.h_));
    if (cells < 8) throw RasterError("grid must be at least 8 cells per axis");
    r.n_[a] = cells;
  }

  r.perm_table_.clear();
  r.perm_inverse_.clear();
  r.perm_apply_.clear();
  r.compose_cache_.clear();
  r.perm_id(Permutation::identity(spec.degree));  // id 0

  for (const auto& p : spec.cut_patches) {
    r.patch_ids_.push_back(p.id);
    r.patch_perms_.push_back(p.permutation);
  }

  for (int a = 0; a < 3; ++a) {
    size_t count = 0;
    switch (a) {
      case 0: count = static_cast<size_t>(std::max(0, r.n_[0] - 1)) * r.n_[1] * r.n_[2]; break;
      case 1: count = static_cast<size_t>(r.n_[0]) * std::max(0, r.n_[1] - 1) * r.n_[2]; break;
      default: count = static_cast<size_t>(r.n_[0]) * r.n_[1] * std::max(0, r.n_[2] - 1); break;
    }
    if (spec.dimension == 2 && a == 2) count = 0;
    if (spec.dimension == 2 && a < 2) {
      count = a == 0 ? static_cast<size_t>(r.n_[0] - 1) * r.n_[1] : static_cast<size_t>(r.n_[0]) * (r.n_[1] - 1);
    }
    r.face_ref_[static_cast<size_t>(a)].assign(count, 0);
    r.face_perm_plus_[static_cast<size_t>(a)].assign(count, 0);
  }

  // --- patch crossings ---
  const double h = r.h_;
  auto center_of = [&](const std::array<int, 3>& cell) -> Vec3 {
    return r.origin_ + h * Vec3(cell[0] + 0.5, cell[1] + 0.5, spec.dimension == 3 ? cell[2] + 0.5 : 0.0);
  };
  auto record_crossing = [&](int axis, const std::array<int, 3>& cell, int patch, int sign) {
    const size_t lin = static_cast<size_t>(r.face_linear(axis, cell));
    int32_t& slot = r.face_ref_[static_cast<size_t>(axis)][lin];
    const int32_t val = sign * (patch + 1);
    if (slot != 0 && slot != val) {
      const int other = std::abs(slot) - 1;
      if (other != patch)
        throw RasterError("overlapping cut patches '" + r.patch_ids_[static_cast<size_t>(other)] +
                          "' and '" + r.patch_ids_[static_cast<size_t>(patch)] + "' on one grid face");
      throw RasterError("cut patch '" + r.patch_ids_[static_cast<size_t>(patch)] +
                        "' crosses a grid face twice");
    }
    slot = val;
  };

  const Vec3 jitter = kJitter * h;
  for (size_t pi = 0; pi < spec.cut_patches.size(); ++pi) {
    const auto& patch = spec.cut_patches[pi];
    if (spec.dimension == 3) {
      for (const Triangle& tri0 : patch.triangles) {
        Triangle tri{tri0.a + jitter, tri0.b + jitter, tri0.c + jitter};
        Eigen::AlignedBox3d bb;
        bb.extend(tri.a).extend(tri.b).extend(tri.c);
        for (int axis = 0; axis < 3; ++axis) {
          // candidate lower cells whose crossing segment can reach the bbox
          std::array<int, 3> lo{}, hi{};
          for (int a = 0; a < 3; ++a) {
            double bmin = (bb.min()[a] - r.origin_[a]) / h;
            double bmax = (bb.max()[a] - r.origin_[a]) / h;
            if (a == axis) {
              lo[a] = std::max(0, static_cast<int>(std::floor(bmin - 1.5)));
              hi[a] = std::min(r.n_[a] - 2, static_cast<int>(std::ceil(bmax - 0.5)));
            } else {
              lo[a] = std::max(0, static_cast<int>(std::floor(bmin - 0.5)));
              hi[a] = std::min(r.n_[a] - 1, static_cast<int>(std::ceil(bmax - 0.5)));
            }
          }
          std::array<int, 3> cell{};
          for (cell[0] = lo[0]; cell[0] <= hi[0]; ++cell[0])
            for (cell[1] = lo[1]; cell[1] <= hi[1]; ++cell[1])
              for (cell[2] = lo[2]; cell[2] <= hi[2]; ++cell[2]) {
                std::array<int, 3> nb = cell;
                nb[axis] += 1;
                const Vec3 c0 = center_of(cell), c1 = center_of(nb);
                const int sgn = segment_triangle_crossing(c0, c1, tri);
                if (sgn != 0) record_crossing(axis, cell, static_cast<int>(pi), sgn);
              }
        }
      }
    } else {
      for (size_t s = 0; s + 1 < patch.polyline.size(); ++s) {
        const Vec3 a = patch.polyline[s] + jitter;
        const Vec3 b = patch.polyline[s + 1] + jitter;
        Eigen::AlignedBox3d bb;
        bb.extend(a).extend(b);
        for (int axis = 0; axis < 2; ++axis) {
          std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
          for (int ax = 0; ax < 2; ++ax) {
            double bmin = (bb.min()[ax] - r.origin_[ax]) / h;
            double bmax = (bb.max()[ax] - r.origin_[ax]) / h;
            if (ax == axis) {
              lo[ax] = std::max(0, static_cast<int>(std::floor(bmin - 1.5)));
              hi[ax] = std::min(r.n_[ax] - 2, static_cast<int>(std::ceil(bmax - 0.5)));
            } else {
              lo[ax] = std::max(0, static_cast<int>(std::floor(bmin - 0.5)));
              hi[ax] = std::min(r.n_[ax] - 1, static_cast<int>(std::ceil(bmax - 0.5)));
            }
          }
          std::array<int, 3> cell{0, 0, 0};
          for (cell[0] = lo[0]; cell[0] <= hi[0]; ++cell[0])
            for (cell[1] = lo[1]; cell[1] <= hi[1]; ++cell[1]) {
              std::array<int, 3> nb = cell;
              nb[axis] += 1;
              const int sgn = segment_segment_crossing(center_of(cell), center_of(nb), a, b);
              if (sgn != 0) record_crossing(axis, cell, static_cast<int>(pi), sgn);
            }
        }
      }
    }
  }

  // face-canonical permutation ids
  for (int axis = 0; axis < 3; ++axis) {
    auto& refs = r.face_ref_[static_cast<size_t>(axis)];
    auto& ids = r.face_perm_plus_[static_cast<size_t>(axis)];
    for (size_t f = 0; f < refs.size(); ++f) {
      if (refs[f] == 0) continue;
      const int patch = std::abs(refs[f]) - 1;
      const Permutation& p = r.patch_perms_[static_cast<size_t>(patch)];
      ids[f] = static_cast<int16_t>(r.perm_id(refs[f] > 0 ? p : p.inverse()));
    }
  }

  // --- marker chains ---
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    size_t count = static_cast<size_t>(r.n_[a]) * (r.n_[b] + 1) * (r.n_[c] + 1);
    if (spec.dimension == 2) count = a == 2 ? static_cast<size_t>(r.n_[0] + 1) * (r.n_[1] + 1) : 0;
    r.elem_curve_[static_cast<size_t>(a)].assign(count, -1);
  }
  // 2D stores vertices as z-edges with q[a]=0 and n_[2]=1; elem_linear then
  // needs n_[2] >= 1 which holds.

  auto snap_lattice = [&](const Vec3& p) {
    std::array<int, 3> q{};
    for (int a = 0; a < 3; ++a) {
      if (spec.dimension == 2 && a == 2) {
        q[2] = 0;
        continue;
      }
      q[a] = std::clamp(static_cast<int>(std::lround((p[a] - r.origin_[a]) / h)), 0, r.n_[a]);
    }
    return q;
  };
  auto mark_elem = [&](const Elem& e, int curve_idx) {
    auto& slot = r.elem_curve_[static_cast<size_t>(e.axis)][static_cast<size_t>(r.elem_linear(e))];
    if (slot < 0) slot = curve_idx;
  };

  for (size_t ci = 0; ci < spec.boundary_curves.size(); ++ci) {
    const auto& cur = spec.boundary_curves[ci];
    r.curve_ids_.push_back(cur.id.empty() ? "curve" + std::to_string(ci) : cur.id);
    r.curve_roles_.push_back(cur.role);
    if (spec.dimension == 2) {
      for (const Vec3& p : cur.points) {
        auto q = snap_lattice(p);
        mark_elem(Elem{2, {q[0], q[1], 0}}, static_cast<int>(ci));
      }
      continue;
    }
    for (size_t s = 0; s + 1 < cur.points.size(); ++s) {
      auto qa = snap_lattice(cur.points[s]);
      auto qb = snap_lattice(cur.points[s + 1]);
      auto pts = lattice_walk(qa, qb, cur.points[s], cur.points[s + 1], h, r.origin_);
      for (size_t t = 0; t + 1 < pts.size(); ++t) {
        const auto& u = pts[t];
        const auto& v = pts[t + 1];
        for (int a = 0; a < 3; ++a) {
          if (v[a] != u[a]) {
            Elem e;
            e.axis = a;
            e.q = u;
            if (v[a] < u[a]) e.q[a] -= 1;
            mark_elem(e, static_cast<int>(ci));
          }
        }
      }
    }
    if (cur.points.size() == 1) {
      // isolated 3D point: mark the nearest lattice edges around it
      auto q = snap_lattice(cur.points[0]);
      for (int a = 0; a < 3; ++a) {
        Elem e;
        e.axis = a;
        e.q = q;
        mark_elem(e, static_cast<int>(ci));
        e.q[a] -= 1;
        if (e.q[a] >= 0) mark_elem(e, static_cast<int>(ci));
      }
    }
  }

  r.seal_perm_table();

  // --- rim absorption: non-identity elements within 2h of a declared curve
  // join that curve's marker set ---
  const double absorb = 2.0 * h + 1e-9;
  auto curve_distance = [&](const Vec3& p, const BoundaryCurve& cur) {
    double best = 1e300;
    if (cur.points.size() == 1) return (p - cur.points[0]).norm();
    for (size_t s = 0; s + 1 < cur.points.size(); ++s)
      best = std::min(best, point_segment_distance(p, cur.points[s], cur.points[s + 1]));
    return best;
  };
  r.for_each_elem([&](const Elem& e) {
    if (!r.elem_interior(e)) return;
    if (r.elem_curve(e) >= 0) return;
    if (r.elem_monodromy(e) == 0) return;
    const Vec3 mid = r.elem_midpoint(e);
    int best_curve = -1;
    double best_d = absorb;
    for (size_t ci = 0; ci < spec.boundary_curves.size(); ++ci) {
      const double d = curve_distance(mid, spec.boundary_curves[ci]);
      if (d <= best_d) {
        best_d = d;
        best_curve = static_cast<int>(ci);
      }
    }
    if (best_curve >= 0) mark_elem(e, best_curve);
  });

  // curve element lists
  r.curve_elems_.assign(r.curve_ids_.size(), {});
  r.for_each_elem([&](const Elem& e) {
    const int c = r.elem_curve(e);
    if (c >= 0) r.curve_elems_[static_cast<size_t>(c)].push_back(e);
  });
  for (size_t ci = 0; ci < r.curve_elems_.size(); ++ci) {
    if (r.curve_elems_[ci].empty())
      throw RasterError("boundary curve '" + r.curve_ids_[ci] + "' snapped to no grid elements");
  }

  // content key: FNV over dims + face table
  uint64_t key = 1469598103934665603ull;
  auto mix = [&key](uint64_t v) {
    key ^= v;
    key *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(r.n_[0]));
  mix(static_cast<uint64_t>(r.n_[1]));
  mix(static_cast<uint64_t>(r.n_[2]));
  mix(static_cast<uint64_t>(r.degree_));
  for (int a = 0; a < 3; ++a)
    for (int32_t v : r.face_ref_[static_cast<size_t>(a)]) mix(static_cast<uint64_t>(static_cast<int64_t>(v) + (1 << 20)));
  r.content_key_ = key;
  return r;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

const char* elem_class_name(ElemClass c) {
  switch (c) {
    case ElemClass::Trivial: return "trivial";
    case ElemClass::FrameWettingForced: return "frame-wetting-forced";
    case ElemClass::FrameWettingOptional: return "frame-wetting-optional";
    case ElemClass::Wire: return "wire";
    default: return "inconsistent";
  }
}

const char* validation_status_name(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::Pass: return "pass";
    case ValidationStatus::Warn: return "warn";
    default: return "fail";
  }
}

ValidationReport validate(const RasterScene& raster) {
  ValidationReport rep;
  bool warn = false;
  raster.for_each_elem([&](const Elem& e) {
    if (!raster.elem_interior(e)) return;
    ++rep.elements_checked;
    const int mono = raster.elem_monodromy(e);
    const int curve = raster.elem_curve(e);
    if (curve < 0) {
      if (mono != 0) {
        ++rep.inconsistent;
        rep.records.push_back({e, mono, ElemClass::Inconsistent, -1});
      }
      return;
    }
    ElemRecord rec;
    rec.elem = e;
    rec.perm_id = mono;
    rec.curve = curve;
    const Permutation& p = raster.perm(mono);
    if (raster.curve_role(curve) == CurveRole::InvisibleWire) {
      rec.cls = ElemClass::Wire;
      ++rep.wire;
      if (!p.fixes(raster.dirichlet_sheet())) warn = true;
    } else if (mono == 0) {
      rec.cls = ElemClass::Trivial;
    } else if (!p.has_fixed_point()) {
      rec.cls = ElemClass::FrameWettingForced;
      ++rep.forced;
    } else {
      rec.cls = ElemClass::FrameWettingOptional;
      ++rep.optional_wetting;
    }
    rep.records.push_back(rec);
  });
  if (rep.inconsistent > 0)
    rep.status = ValidationStatus::Fail;
  else if (warn)
    rep.status = ValidationStatus::Warn;
  else
    rep.status = ValidationStatus::Pass;
  if (rep.inconsistent > 0) {
    std::ostringstream note;
    note << rep.inconsistent << " element(s) off S+wires have non-identity monodromy";
    rep.notes.push_back(note.str());
  }
  if (warn) rep.notes.push_back("wire monodromy moves the Dirichlet sheet (wetting left open)");
  return rep;
}

}  // namespace plateau
