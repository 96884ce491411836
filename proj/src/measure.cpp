#include "plateau/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

using nlohmann::json;

namespace plateau {

double area(const JumpSet& jump) { return jump.total_area; }

namespace {

std::string class_rank_name(int rank) {
  switch (rank) {
    case 3: return "frame-wetting-forced";
    case 2: return "frame-wetting-optional";
    case 1: return "wire";
    default: return "trivial";
  }
}

int elem_class_rank(const RasterScene& raster, const Elem& e) {
  const int mono = raster.elem_monodromy(e);
  const int c = raster.elem_curve(e);
  if (c >= 0 && raster.curve_role(c) == CurveRole::InvisibleWire) return 1;
  if (mono == 0) return 0;
  return raster.perm(mono).has_fixed_point() ? 2 : 3;
}

}  // namespace

WettingReport wetting_report(const JumpSet& jump, const RasterScene& raster) {
  WettingReport rep;
  std::set<FaceKey> jump_faces;
  std::vector<Vec3> jump_centers;
  for (const auto& [face, w] : jump.faces) {
    jump_faces.insert(face);
    jump_centers.push_back(raster.face_center(face.axis, face.cell));
  }

  for (int c = 0; c < raster.num_curves(); ++c) {
    WettingSegment seg;
    seg.segment_id = raster.curve_id(c);
    int worst = 0;
    bool wetted = false;
    double min_dist = std::numeric_limits<double>::infinity();
    for (const Elem& e : raster.curve_elements(c)) {
      worst = std::max(worst, elem_class_rank(raster, e));
      if (!raster.elem_interior(e)) continue;
      // 1-ring faces: the faces of the elementary loop around e
      auto cells = raster.elem_loop_cells(e);
      for (int t = 0; t < 4 && !wetted; ++t) {
        const auto& from = cells[static_cast<size_t>(t)];
        const auto& to = cells[static_cast<size_t>((t + 1) % 4)];
        for (int axis = 0; axis < 3; ++axis) {
          if (to[axis] == from[axis]) continue;
          FaceKey fk;
          fk.axis = axis;
          fk.cell = to[axis] > from[axis] ? from : to;
          if (jump_faces.count(fk)) wetted = true;
        }
      }
      const Vec3 mid = raster.elem_midpoint(e);
      for (const Vec3& fc : jump_centers) {
        const double d = (mid - fc).cwiseAbs().maxCoeff() / raster.spacing();
        min_dist = std::min(min_dist, d);
      }
    }
    seg.monodromy_class = class_rank_name(worst);
    seg.wetted = wetted;
    seg.min_distance_cells = std::isfinite(min_dist) ? min_dist : -1;
    rep.segments.push_back(std::move(seg));
  }
  return rep;
}

void export_obj(const JumpSet& jump, const RasterScene& raster, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeasureError("cannot open '" + path + "' for writing");
  out << "# plateau-cover film export\n";
  out << "# scene " << raster.scene_name() << ", " << jump.faces.size() << " jump faces\n";

  std::map<std::array<int, 3>, int> vertex_index;
  std::vector<std::array<int, 3>> vertices;
  auto vertex = [&](std::array<int, 3> q) {
    auto it = vertex_index.find(q);
    if (it != vertex_index.end()) return it->second;
    const int idx = static_cast<int>(vertices.size()) + 1;
    vertex_index.emplace(q, idx);
    vertices.push_back(q);
    return idx;
  };

  struct Record {
    std::vector<int> verts;
  };
  std::vector<Record> faces;
  const bool planar = raster.dimension() == 2;
  for (const auto& [face, w] : jump.faces) {
    (void)w;
    const int axis = face.axis;
    const auto& lo = face.cell;
    if (planar) {
      // the jump face is a lattice segment
      std::array<int, 3> a{}, b{};
      if (axis == 0) {
        a = {lo[0] + 1, lo[1], 0};
        b = {lo[0] + 1, lo[1] + 1, 0};
      } else {
        a = {lo[0], lo[1] + 1, 0};
        b = {lo[0] + 1, lo[1] + 1, 0};
      }
      faces.push_back({{vertex(a), vertex(b)}});
    } else {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      std::array<int, 3> base = lo;
      base[axis] += 1;
      std::array<std::array<int, 2>, 4> offs = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
      Record rec;
      for (const auto& o : offs) {
        std::array<int, 3> q = base;
        q[u] += o[0];
        q[v] += o[1];
        rec.verts.push_back(vertex(q));
      }
      faces.push_back(std::move(rec));
    }
  }

  out.precision(12);
  for (const auto& q : vertices) {
    const Vec3 p = raster.origin() + raster.spacing() * Vec3(q[0], q[1], q[2]);
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (const auto& rec : faces) {
    out << (planar ? "l" : "f");
    for (int vi : rec.verts) out << ' ' << vi;
    out << '\n';
  }
  if (!out) throw MeasureError("write failure on '" + path + "'");
}

void report_json(const SolveResult& result, const WettingReport& wetting,
                 const RasterScene& raster, const std::string& weighting_name,
                 const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& config_echo) {
  json j;
  j["scene"] = raster.scene_name();
  j["grid"] = {raster.dims()[0], raster.dims()[1], raster.dims()[2]};
  j["grid_spacing"] = raster.spacing();
  j["weighting"] = weighting_name;
  j["solver"] = result.solver;
  j["certificate"] = result.certificate;
  j["energy"] = result.energy;
  j["tv"] = result.tv;
  j["area"] = result.energy;  // area(jump_set) == energy under one weighting
  j["seed"] = result.seed;
  j["restarts"] = result.restarts;
  j["wallclock_sec"] = result.wallclock_sec;
  j["wetting"] = json::array();
  for (const auto& seg : wetting.segments) {
    json js;
    js["segment"] = seg.segment_id;
    js["monodromy_class"] = seg.monodromy_class;
    js["wetted"] = seg.wetted;
    js["min_distance_cells"] = seg.min_distance_cells;
    j["wetting"].push_back(std::move(js));
  }
  if (!config_echo.empty()) {
    json cfg;
    for (const auto& [k, v] : config_echo) cfg[k] = v;
    j["config"] = std::move(cfg);
  }
  std::ofstream out(path);
  if (!out) throw MeasureError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw MeasureError("write failure on '" + path + "'");
}

}  // namespace plateau
