#include "plateau/functional.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "plateau/cover.hpp"

namespace plateau {

namespace {

// Crofton pair weights per unit h^(n-1), ratio fixed at 1/sqrt(2) per unit
// pair length. 2D: min-max balanced over directions. 3D: exact for
// axis-normal interfaces, balanced between face- and body-diagonal normals;
// f(n) >= |n_axis| holds, so flat axis-aligned films are discretely optimal.
constexpr double kCrofton2Axis = 0.397824735;
constexpr double kCrofton2Diag = 0.281303295;
constexpr double kCrofton3Axis = 0.060114516;
constexpr double kCrofton3Diag = 0.234971371;

}  // namespace

Labeling uniform_labeling(const RasterScene& raster) {
  Labeling l;
  l.raster_key = raster.content_key();
  l.degree = raster.degree();
  l.sheet.assign(static_cast<size_t>(raster.num_cells()),
                 static_cast<uint8_t>(raster.dirichlet_sheet()));
  return l;
}

bool labeling_admissible(const RasterScene& raster, const Labeling& sigma) {
  if (sigma.raster_key != raster.content_key()) return false;
  if (sigma.degree != raster.degree()) return false;
  if (sigma.sheet.size() != static_cast<size_t>(raster.num_cells())) return false;
  for (int c = 0; c < raster.num_cells(); ++c) {
    const int s = sigma.sheet[static_cast<size_t>(c)];
    if (s < 1 || s > sigma.degree) return false;
    if (raster.is_collar(c) && s != raster.dirichlet_sheet()) return false;
  }
  return true;
}

Labeling lift_constrained(const std::vector<uint8_t>& v, const RasterScene& raster,
                          const std::string& cut_id) {
  if (raster.degree() != 2) throw FunctionalError("constrained lifting requires degree 2");
  if (v.size() != static_cast<size_t>(raster.num_cells()))
    throw FunctionalError("base field size does not match the grid");
  bool found = false;
  for (int p = 0; p < raster.num_patches(); ++p)
    if (raster.patch_id(p) == cut_id) found = true;
  if (!found) throw FunctionalError("unknown cut id '" + cut_id + "'");
  const uint8_t collar_value = raster.dirichlet_sheet() == 1 ? 1 : 0;
  Labeling l;
  l.raster_key = raster.content_key();
  l.degree = 2;
  l.sheet.resize(v.size());
  for (int c = 0; c < raster.num_cells(); ++c) {
    const uint8_t val = v[static_cast<size_t>(c)];
    if (val > 1) throw FunctionalError("base field must be {0,1}-valued");
    if (raster.is_collar(c) && val != collar_value)
      throw FunctionalError("base field violates the Dirichlet collar");
    l.sheet[static_cast<size_t>(c)] = val ? 1 : 2;
  }
  return l;
}

double Weighting::mean_weight() const {
  if (terms_.empty()) return 0;
  double sum = 0;
  for (const auto& t : terms_) sum += t.weight;
  return sum / static_cast<double>(terms_.size());
}

Weighting Weighting::plain(const RasterScene& raster) {
  Weighting w;
  w.kind_ = WeightingKind::Plain;
  w.raster_key_ = raster.content_key();
  const int dim = raster.dimension();
  const double fw = dim == 3 ? raster.spacing() * raster.spacing() : raster.spacing();
  const auto& n = raster.dims();
  std::array<int, 3> c{};
  for (c[2] = 0; c[2] < n[2]; ++c[2])
    for (c[1] = 0; c[1] < n[1]; ++c[1])
      for (c[0] = 0; c[0] < n[0]; ++c[0])
        for (int axis = 0; axis < dim; ++axis) {
          if (c[axis] + 1 >= n[axis]) continue;
          std::array<int, 3> b = c;
          b[axis] += 1;
          WeightTerm t;
          t.cell_a = raster.cell_index(c[0], c[1], c[2]);
          t.cell_b = raster.cell_index(b[0], b[1], b[2]);
          t.perm = static_cast<int16_t>(raster.step_perm(axis, c, +1));
          t.axis1 = static_cast<uint8_t>(axis);
          t.dir1 = 1;
          t.weight = fw;
          w.terms_.push_back(t);
        }
  return w;
}

Weighting Weighting::crofton(const RasterScene& raster) {
  Weighting w;
  w.kind_ = WeightingKind::Crofton;
  w.raster_key_ = raster.content_key();
  const int dim = raster.dimension();
  const double h = raster.spacing();
  const double unit = dim == 3 ? h * h : h;
  const double w_axis = (dim == 3 ? kCrofton3Axis : kCrofton2Axis) * unit;
  const double w_diag = (dim == 3 ? kCrofton3Diag : kCrofton2Diag) * unit;
  const auto& n = raster.dims();

  std::map<std::pair<int, std::array<int, 3>>, size_t> axis_term_at;
  std::array<int, 3> c{};
  for (c[2] = 0; c[2] < n[2]; ++c[2])
    for (c[1] = 0; c[1] < n[1]; ++c[1])
      for (c[0] = 0; c[0] < n[0]; ++c[0])
        for (int axis = 0; axis < dim; ++axis) {
          if (c[axis] + 1 >= n[axis]) continue;
          std::array<int, 3> b = c;
          b[axis] += 1;
          WeightTerm t;
          t.cell_a = raster.cell_index(c[0], c[1], c[2]);
          t.cell_b = raster.cell_index(b[0], b[1], b[2]);
          t.perm = static_cast<int16_t>(raster.step_perm(axis, c, +1));
          t.axis1 = static_cast<uint8_t>(axis);
          t.dir1 = 1;
          t.weight = w_axis;
          axis_term_at[{axis, c}] = w.terms_.size();
          w.terms_.push_back(t);
        }

  // Diagonal families: first step +axis1, second step +-axis2, composed in
  // x,y,z order. Pairs whose bend element is marked or carries non-identity
  // monodromy (a rim) are dropped, their weight folded into the path's two
  // axis terms.
  struct Family {
    int a1, a2, d2;
  };
  std::vector<Family> families;
  if (dim == 2) {
    families = {{0, 1, +1}, {0, 1, -1}};
  } else {
    families = {{0, 1, +1}, {0, 1, -1}, {0, 2, +1}, {0, 2, -1}, {1, 2, +1}, {1, 2, -1}};
  }
  for (c[2] = 0; c[2] < n[2]; ++c[2])
    for (c[1] = 0; c[1] < n[1]; ++c[1])
      for (c[0] = 0; c[0] < n[0]; ++c[0]) {
        for (const auto& fam : families) {
          std::array<int, 3> mid = c, dst = c;
          mid[fam.a1] += 1;
          dst[fam.a1] += 1;
          dst[fam.a2] += fam.d2;
          if (!raster.in_grid(mid[0], mid[1], mid[2]) || !raster.in_grid(dst[0], dst[1], dst[2]))
            continue;
          const int p1 = raster.step_perm(fam.a1, c, +1);
          const int p2 = raster.step_perm(fam.a2, mid, fam.d2);
          const int composed = raster.compose_perms(p1, p2);
          // other order, for the order-independence test
          std::array<int, 3> mid_alt = c;
          mid_alt[fam.a2] += fam.d2;
          const int q1 = raster.step_perm(fam.a2, c, fam.d2);
          const int q2 = raster.step_perm(fam.a1, mid_alt, +1);
          const int composed_alt = raster.compose_perms(q1, q2);

          Elem bend;
          if (dim == 2) {
            bend.axis = 2;
            bend.q = {c[0] + 1, fam.d2 > 0 ? c[1] + 1 : c[1], 0};
          } else {
            const int a3 = 3 - fam.a1 - fam.a2;
            bend.axis = a3;
            bend.q = c;
            bend.q[fam.a1] += 1;
            bend.q[fam.a2] += fam.d2 > 0 ? 1 : 0;
          }
          const bool drop = raster.elem_curve(bend) >= 0 || raster.elem_monodromy(bend) != 0 ||
                            composed != composed_alt;
          if (drop) {
            std::array<int, 3> lo2 = mid;
            if (fam.d2 < 0) lo2[fam.a2] -= 1;
            auto it1 = axis_term_at.find({fam.a1, c});
            auto it2 = axis_term_at.find({fam.a2, lo2});
            if (it1 != axis_term_at.end()) w.terms_[it1->second].weight += 0.5 * w_diag;
            if (it2 != axis_term_at.end()) w.terms_[it2->second].weight += 0.5 * w_diag;
            continue;
          }
          WeightTerm t;
          t.cell_a = raster.cell_index(c[0], c[1], c[2]);
          t.cell_b = raster.cell_index(dst[0], dst[1], dst[2]);
          t.perm = static_cast<int16_t>(composed);
          t.axis1 = static_cast<uint8_t>(fam.a1);
          t.dir1 = 1;
          t.axis2 = static_cast<uint8_t>(fam.a2);
          t.dir2 = static_cast<int8_t>(fam.d2);
          t.weight = w_diag;
          w.terms_.push_back(t);
        }
      }
  return w;
}

int Weighting::term_faces(const RasterScene& raster, const WeightTerm& t, FaceKey out[2]) {
  const auto a = raster.cell_at(t.cell_a);
  out[0].axis = t.axis1;
  out[0].cell = a;
  if (t.dir1 < 0) out[0].cell[t.axis1] -= 1;
  if (t.axis2 == 255) return 1;
  std::array<int, 3> mid = a;
  mid[t.axis1] += t.dir1;
  out[1].axis = t.axis2;
  out[1].cell = mid;
  if (t.dir2 < 0) out[1].cell[t.axis2] -= 1;
  return 2;
}

double energy(const Labeling& sigma, const CoverGraph& cover, const Weighting& weighting) {
  const RasterScene& raster = cover.raster();
  if (sigma.raster_key != raster.content_key() || weighting.raster_key() != raster.content_key())
    throw FunctionalError("labeling/weighting does not match this cover's raster");
  double e = 0;
  for (const auto& t : weighting.terms()) {
    const int sa = sigma.sheet[static_cast<size_t>(t.cell_a)];
    const int sb = sigma.sheet[static_cast<size_t>(t.cell_b)];
    if (raster.apply_perm(t.perm, sa) != sb) e += t.weight;
  }
  return e;
}

JumpSet jump_set(const Labeling& sigma, const CoverGraph& cover, const Weighting& weighting) {
  const RasterScene& raster = cover.raster();
  if (sigma.raster_key != raster.content_key() || weighting.raster_key() != raster.content_key())
    throw FunctionalError("labeling/weighting does not match this cover's raster");
  std::map<FaceKey, double> acc;
  for (const auto& t : weighting.terms()) {
    const int sa = sigma.sheet[static_cast<size_t>(t.cell_a)];
    const int sb = sigma.sheet[static_cast<size_t>(t.cell_b)];
    if (raster.apply_perm(t.perm, sa) == sb) continue;
    FaceKey fk[2];
    const int nf = Weighting::term_faces(raster, t, fk);
    for (int f = 0; f < nf; ++f) acc[fk[f]] += t.weight / nf;
  }
  JumpSet js;
  js.faces.reserve(acc.size());
  for (const auto& [face, wt] : acc) {
    js.faces.emplace_back(face, wt);
    js.total_area += wt;
  }
  return js;
}

std::vector<ChartView> chart_views(const Labeling& sigma, const RasterScene& raster,
                                   const std::string& cut_a, const std::string& cut_b) {
  if (raster.degree() != 2) throw FunctionalError("chart views require degree 2");
  if (sigma.raster_key != raster.content_key())
    throw FunctionalError("labeling does not match the raster");
  int pa = -1, pb = -1;
  for (int p = 0; p < raster.num_patches(); ++p) {
    if (raster.patch_id(p) == cut_a) pa = p;
    if (raster.patch_id(p) == cut_b) pb = p;
  }
  if (pa < 0 || pb < 0 || pa == pb)
    throw FunctionalError("chart views need two distinct cut ids present in the raster");

  // Crossing parity of the two-cut family from the collar corner: 0 on the
  // exterior region, 1 on the region between the cuts.
  const int n_cells = raster.num_cells();
  std::vector<uint8_t> h(static_cast<size_t>(n_cells), 0), seen(static_cast<size_t>(n_cells), 0);
  std::deque<int> queue;
  seen[0] = 1;
  queue.push_back(0);
  const int dim = raster.dimension();
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const auto c = raster.cell_at(cur);
    for (int axis = 0; axis < dim; ++axis)
      for (int dir : {+1, -1}) {
        std::array<int, 3> nb = c;
        nb[axis] += dir;
        if (!raster.in_grid(nb[0], nb[1], nb[2])) continue;
        const int nb_idx = raster.cell_index(nb[0], nb[1], nb[2]);
        if (seen[static_cast<size_t>(nb_idx)]) continue;
        std::array<int, 3> lo = c;
        if (dir < 0) lo[axis] -= 1;
        const int ref = raster.face_patch_ref(axis, lo);
        const int patch = ref == 0 ? -1 : std::abs(ref) - 1;
        const bool flip = patch == pa || patch == pb;
        seen[static_cast<size_t>(nb_idx)] = 1;
        h[static_cast<size_t>(nb_idx)] =
            static_cast<uint8_t>(h[static_cast<size_t>(cur)] ^ (flip ? 1 : 0));
        queue.push_back(nb_idx);
      }
  }

  std::vector<ChartView> views(4);
  for (int v = 0; v < 4; ++v) {
    views[static_cast<size_t>(v)].chart = v + 1;
    views[static_cast<size_t>(v)].values.resize(static_cast<size_t>(n_cells));
  }
  for (int c = 0; c < n_cells; ++c) {
    const uint8_t v1 = sigma.sheet[static_cast<size_t>(c)] == 1 ? 1 : 0;
    const uint8_t v3 = static_cast<uint8_t>(v1 ^ h[static_cast<size_t>(c)]);
    views[0].values[static_cast<size_t>(c)] = v1;
    views[1].values[static_cast<size_t>(c)] = static_cast<uint8_t>(1 - v1);
    views[2].values[static_cast<size_t>(c)] = v3;
    views[3].values[static_cast<size_t>(c)] = static_cast<uint8_t>(1 - v3);
  }
  return views;
}

}  // namespace plateau
