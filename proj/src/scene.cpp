#include "plateau/scene.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

using nlohmann::json;

namespace plateau {

namespace {

Vec3 read_point(const json& j, int dimension) {
  if (!j.is_array() || j.size() < static_cast<size_t>(dimension))
    throw SceneError("point must be an array of " + std::to_string(dimension) + " numbers");
  double x = j.at(0).get<double>();
  double y = j.at(1).get<double>();
  double z = dimension == 3 ? j.at(2).get<double>() : 0.0;
  return {x, y, z};
}

json write_point(const Vec3& p, int dimension) {
  json j = json::array({p.x(), p.y()});
  if (dimension == 3) j.push_back(p.z());
  return j;
}

Permutation read_perm(const json& j, int degree) {
  if (!j.is_array()) throw SceneError("permutation must be an image array");
  std::vector<int> img;
  for (const auto& v : j) img.push_back(v.get<int>());
  if (static_cast<int>(img.size()) != degree)
    throw SceneError("permutation length does not match scene degree");
  try {
    return Permutation::from_image(img);
  } catch (const GroupError& e) {
    throw SceneError(std::string("bad permutation: ") + e.what());
  }
}

}  // namespace

void SceneSpec::check() const {
  if (dimension != 2 && dimension != 3) throw SceneError("dimension must be 2 or 3");
  if (degree < 2) throw SceneError("cover degree must be >= 2");
  if (dirichlet_sheet < 1 || dirichlet_sheet > degree)
    throw SceneError("dirichlet_sheet out of {1..degree}");
  if (grid_spacing <= 0) throw SceneError("grid_spacing must be positive");
  if (domain.isEmpty()) throw SceneError("empty domain box");

  const double collar = 2.0 * grid_spacing;
  auto check_inside = [&](const Vec3& p, const std::string& what) {
    for (int a = 0; a < dimension; ++a) {
      if (p[a] < domain.min()[a] + collar || p[a] > domain.max()[a] - collar)
        throw SceneError(what + " violates the 2-cell collar to the domain box");
    }
  };
  for (const auto& c : boundary_curves) {
    if (c.points.empty()) throw SceneError("boundary curve with no points");
    for (const auto& p : c.points) check_inside(p, "boundary curve '" + c.id + "'");
  }
  for (const auto& patch : cut_patches) {
    if (patch.permutation.degree() != degree)
      throw SceneError("cut patch '" + patch.id + "' permutation degree mismatch");
    if (dimension == 3) {
      if (patch.triangles.empty())
        throw SceneError("3D cut patch '" + patch.id + "' needs triangles");
      for (const auto& t : patch.triangles) {
        check_inside(t.a, "patch '" + patch.id + "'");
        check_inside(t.b, "patch '" + patch.id + "'");
        check_inside(t.c, "patch '" + patch.id + "'");
        if (t.normal().norm() < 1e-12) throw SceneError("degenerate triangle in '" + patch.id + "'");
      }
    } else {
      if (patch.polyline.size() < 2)
        throw SceneError("2D cut patch '" + patch.id + "' needs a polyline");
      for (const auto& p : patch.polyline) check_inside(p, "patch '" + patch.id + "'");
    }
  }
  if (presentation) {
    // Constructing the homomorphism re-checks that relators map to id.
    Homomorphism hom(presentation->presentation, presentation->images);
    if (hom.degree() != degree) throw SceneError("presentation images have wrong degree");
    if (presentation->basepoint < 1 || presentation->basepoint > degree)
      throw SceneError("presentation basepoint out of range");
  }
}

bool SceneSpec::operator==(const SceneSpec& o) const {
  auto curves_eq = [](const BoundaryCurve& a, const BoundaryCurve& b) {
    return a.role == b.role && a.id == b.id && a.points == b.points;
  };
  auto tri_eq = [](const Triangle& a, const Triangle& b) {
    return a.a == b.a && a.b == b.b && a.c == b.c;
  };
  if (name != o.name || dimension != o.dimension || grid_spacing != o.grid_spacing ||
      degree != o.degree || dirichlet_sheet != o.dirichlet_sheet)
    return false;
  if (domain.min() != o.domain.min() || domain.max() != o.domain.max()) return false;
  if (boundary_curves.size() != o.boundary_curves.size()) return false;
  for (size_t i = 0; i < boundary_curves.size(); ++i)
    if (!curves_eq(boundary_curves[i], o.boundary_curves[i])) return false;
  if (cut_patches.size() != o.cut_patches.size()) return false;
  for (size_t i = 0; i < cut_patches.size(); ++i) {
    const auto& a = cut_patches[i];
    const auto& b = o.cut_patches[i];
    if (a.id != b.id || a.permutation != b.permutation || a.polyline != b.polyline) return false;
    if (a.triangles.size() != b.triangles.size()) return false;
    for (size_t t = 0; t < a.triangles.size(); ++t)
      if (!tri_eq(a.triangles[t], b.triangles[t])) return false;
  }
  if (presentation.has_value() != o.presentation.has_value()) return false;
  if (presentation) {
    const auto& p = *presentation;
    const auto& q = *o.presentation;
    if (p.presentation.generators != q.presentation.generators) return false;
    if (p.presentation.relators.size() != q.presentation.relators.size()) return false;
    for (size_t i = 0; i < p.presentation.relators.size(); ++i)
      if (!(p.presentation.relators[i].letters() == q.presentation.relators[i].letters()))
        return false;
    if (p.images != q.images || p.basepoint != q.basepoint) return false;
  }
  return true;
}

SceneSpec parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene document is not valid JSON: ") + e.what());
  }
  SceneSpec spec;
  try {
    spec.name = j.at("name").get<std::string>();
    spec.dimension = j.at("dimension").get<int>();
    if (spec.dimension != 2 && spec.dimension != 3) throw SceneError("dimension must be 2 or 3");
    const auto& dom = j.at("domain");
    Vec3 lo = read_point(dom.at("min"), spec.dimension);
    Vec3 hi = read_point(dom.at("max"), spec.dimension);
    spec.domain = Eigen::AlignedBox3d(lo, hi);
    spec.grid_spacing = j.at("grid_spacing").get<double>();
    spec.degree = j.at("degree").get<int>();
    if (spec.degree < 2) throw SceneError("degree must be >= 2");
    spec.dirichlet_sheet = j.at("dirichlet_sheet").get<int>();
    for (const auto& jc : j.value("boundary_curves", json::array())) {
      BoundaryCurve c;
      std::string role = jc.at("role").get<std::string>();
      if (role == "boundary")
        c.role = CurveRole::Boundary;
      else if (role == "invisible_wire")
        c.role = CurveRole::InvisibleWire;
      else
        throw SceneError("unknown curve role '" + role + "'");
      c.id = jc.value("id", "");
      for (const auto& jp : jc.at("points")) c.points.push_back(read_point(jp, spec.dimension));
      spec.boundary_curves.push_back(std::move(c));
    }
    for (const auto& jp : j.value("cut_patches", json::array())) {
      CutPatchSpec patch;
      patch.id = jp.at("id").get<std::string>();
      patch.permutation = read_perm(jp.at("permutation"), spec.degree);
      if (spec.dimension == 3) {
        for (const auto& jt : jp.at("triangles")) {
          if (!jt.is_array() || jt.size() != 3) throw SceneError("triangle must list 3 points");
          patch.triangles.push_back(
              {read_point(jt.at(0), 3), read_point(jt.at(1), 3), read_point(jt.at(2), 3)});
        }
      } else {
        for (const auto& jq : jp.at("polyline")) patch.polyline.push_back(read_point(jq, 2));
      }
      spec.cut_patches.push_back(std::move(patch));
    }
    if (j.contains("presentation")) {
      const auto& pj = j.at("presentation");
      ScenePresentation sp;
      for (const auto& g : pj.at("generators")) sp.presentation.generators.push_back(g.get<std::string>());
      for (const auto& r : pj.value("relators", json::array()))
        sp.presentation.relators.push_back(
            Word::parse(r.get<std::string>(), sp.presentation.generators));
      for (const auto& g : sp.presentation.generators) {
        if (!pj.at("images").contains(g)) throw SceneError("presentation image missing for " + g);
        sp.images.push_back(read_perm(pj.at("images").at(g), spec.degree));
      }
      sp.basepoint = pj.value("basepoint", 1);
      spec.presentation = std::move(sp);
    }
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene schema violation: ") + e.what());
  } catch (const GroupError& e) {
    throw SceneError(std::string("scene schema violation: ") + e.what());
  }
  spec.check();
  return spec;
}

std::string serialize_scene(const SceneSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["dimension"] = spec.dimension;
  j["domain"]["min"] = write_point(spec.domain.min(), spec.dimension);
  j["domain"]["max"] = write_point(spec.domain.max(), spec.dimension);
  j["grid_spacing"] = spec.grid_spacing;
  j["degree"] = spec.degree;
  j["dirichlet_sheet"] = spec.dirichlet_sheet;
  j["boundary_curves"] = json::array();
  for (const auto& c : spec.boundary_curves) {
    json jc;
    jc["role"] = c.role == CurveRole::Boundary ? "boundary" : "invisible_wire";
    if (!c.id.empty()) jc["id"] = c.id;
    jc["points"] = json::array();
    for (const auto& p : c.points) jc["points"].push_back(write_point(p, spec.dimension));
    j["boundary_curves"].push_back(std::move(jc));
  }
  j["cut_patches"] = json::array();
  for (const auto& patch : spec.cut_patches) {
    json jp;
    jp["id"] = patch.id;
    jp["permutation"] = patch.permutation.image();
    if (spec.dimension == 3) {
      jp["triangles"] = json::array();
      for (const auto& t : patch.triangles)
        jp["triangles"].push_back(
            json::array({write_point(t.a, 3), write_point(t.b, 3), write_point(t.c, 3)}));
    } else {
      jp["polyline"] = json::array();
      for (const auto& p : patch.polyline) jp["polyline"].push_back(write_point(p, 2));
    }
    j["cut_patches"].push_back(std::move(jp));
  }
  if (spec.presentation) {
    json pj;
    pj["generators"] = spec.presentation->presentation.generators;
    pj["relators"] = json::array();
    for (const auto& r : spec.presentation->presentation.relators)
      pj["relators"].push_back(r.str(spec.presentation->presentation.generators));
    for (size_t i = 0; i < spec.presentation->images.size(); ++i)
      pj["images"][spec.presentation->presentation.generators[i]] =
          spec.presentation->images[i].image();
    pj["basepoint"] = spec.presentation->basepoint;
    j["presentation"] = std::move(pj);
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Built-in scenes. All geometry is authored on a unit lattice inside a small
// integer box so that any grid whose size is a multiple of the box edge puts
// patches on lattice planes and curves on lattice edges.
// ---------------------------------------------------------------------------

namespace {

// Axis-aligned rectangle in the plane {axes[axis] = level}, spanning
// [u0,u1] x [v0,v1] in the remaining axes (in increasing-axis order), with
// triangle winding chosen so the normal is sign * unit(axis).
std::vector<Triangle> axis_rect(int axis, double level, double u0, double u1, double v0, double v1,
                                int sign) {
  const int ua = axis == 0 ? 1 : 0;
  const int va = axis == 2 ? 1 : 2;
  auto pt = [&](double u, double v) {
    Vec3 p;
    p[axis] = level;
    p[ua] = u;
    p[va] = v;
    return p;
  };
  Triangle t1{pt(u0, v0), pt(u1, v0), pt(u1, v1)};
  Triangle t2{pt(u0, v0), pt(u1, v1), pt(u0, v1)};
  Vec3 want = Vec3::Zero();
  want[axis] = sign;
  if (t1.normal().dot(want) < 0) {
    std::swap(t1.b, t1.c);
    std::swap(t2.b, t2.c);
  }
  return {t1, t2};
}

CutPatchSpec rect_patch(const std::string& id, const Permutation& perm, int axis, double level,
                        double u0, double u1, double v0, double v1, int sign) {
  CutPatchSpec p;
  p.id = id;
  p.permutation = perm;
  p.triangles = axis_rect(axis, level, u0, u1, v0, v1, sign);
  return p;
}

BoundaryCurve curve(const std::string& id, CurveRole role, std::vector<Vec3> pts) {
  BoundaryCurve c;
  c.id = id;
  c.role = role;
  c.points = std::move(pts);
  return c;
}

SceneSpec two_points_2d() {
  SceneSpec s;
  s.name = "two_points_2d";
  s.dimension = 2;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(16, 16, 0));
  s.grid_spacing = 0.5;
  s.degree = 2;
  s.dirichlet_sheet = 1;
  s.boundary_curves.push_back(curve("p0", CurveRole::Boundary, {{5, 8, 0}}));
  s.boundary_curves.push_back(curve("p1", CurveRole::Boundary, {{10, 8, 0}}));
  CutPatchSpec cut;
  cut.id = "segment";
  cut.permutation = Permutation::cycle(2, {1, 2});
  cut.polyline = {{5, 8, 0}, {10, 8, 0}};
  s.cut_patches.push_back(cut);
  ScenePresentation sp;
  sp.presentation.generators = {"a", "b"};
  sp.images = {Permutation::cycle(2, {1, 2}), Permutation::cycle(2, {1, 2})};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

SceneSpec steiner3_2d() {
  SceneSpec s;
  s.name = "steiner3_2d";
  s.dimension = 2;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(16, 16, 0));
  s.grid_spacing = 0.5;
  s.degree = 3;
  s.dirichlet_sheet = 1;
  // Terminals of a near-equilateral triangle with lattice-friendly apex.
  const Vec3 A(3, 4, 0), B(13, 4, 0), C(8, 13, 0), M(8, 7, 0);
  s.boundary_curves.push_back(curve("pA", CurveRole::Boundary, {A}));
  s.boundary_curves.push_back(curve("pB", CurveRole::Boundary, {B}));
  s.boundary_curves.push_back(curve("pC", CurveRole::Boundary, {C}));
  const Permutation rot = Permutation::cycle(3, {1, 2, 3});
  for (auto [id, tip] : {std::pair<const char*, Vec3>{"armA", A}, {"armB", B}, {"armC", C}}) {
    CutPatchSpec cut;
    cut.id = id;
    cut.permutation = rot;
    cut.polyline = {M, tip};
    s.cut_patches.push_back(cut);
  }
  ScenePresentation sp;
  sp.presentation.generators = {"a", "b", "c"};
  sp.images = {rot, rot, rot};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

SceneSpec circle_3d() {
  SceneSpec s;
  s.name = "circle_3d";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(12, 12, 12));
  s.grid_spacing = 0.375;  // 32^3 grid by default; radius 3 = 8 cells
  s.degree = 2;
  s.dirichlet_sheet = 1;
  const Vec3 center(6, 6, 6);
  const double radius = 3.0;
  const int n = 96;
  std::vector<Vec3> ring;
  for (int i = 0; i <= n; ++i) {
    double a = 2.0 * M_PI * i / n;
    ring.push_back(center + Vec3(radius * std::cos(a), radius * std::sin(a), 0));
  }
  s.boundary_curves.push_back(curve("circle", CurveRole::Boundary, ring));
  CutPatchSpec disk;
  disk.id = "disk";
  disk.permutation = Permutation::cycle(2, {1, 2});
  for (int i = 0; i < n; ++i) disk.triangles.push_back({center, ring[i], ring[i + 1]});
  s.cut_patches.push_back(disk);
  ScenePresentation sp;
  sp.presentation.generators = {"a"};
  sp.images = {Permutation::cycle(2, {1, 2})};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

SceneSpec cube_skeleton() {
  SceneSpec s;
  s.name = "cube_skeleton";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(12, 12, 12));
  s.grid_spacing = 0.5;  // 24^3 by default
  s.degree = 3;
  s.dirichlet_sheet = 1;
  const double lo = 3, hi = 9;
  // 12 edges of the cube, one boundary curve each.
  const Vec3 v[8] = {{lo, lo, lo}, {hi, lo, lo}, {hi, hi, lo}, {lo, hi, lo},
                     {lo, lo, hi}, {hi, lo, hi}, {hi, hi, hi}, {lo, hi, hi}};
  const int edges[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                            {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  for (int e = 0; e < 12; ++e)
    s.boundary_curves.push_back(
        curve("edge" + std::to_string(e), CurveRole::Boundary, {v[edges[e][0]], v[edges[e][1]]}));
  // Faces oriented exterior-to-interior; opposite faces share a permutation:
  // id on the y pair (the tunnel), the two nontrivial powers of (1 2 3) on
  // the x and z pairs.
  const Permutation id3 = Permutation::identity(3);
  const Permutation r = Permutation::cycle(3, {1, 2, 3});
  const Permutation r2 = Permutation::cycle(3, {1, 3, 2});
  s.cut_patches.push_back(rect_patch("x_lo", r, 0, lo, lo, hi, lo, hi, +1));
  s.cut_patches.push_back(rect_patch("x_hi", r, 0, hi, lo, hi, lo, hi, -1));
  s.cut_patches.push_back(rect_patch("y_lo", id3, 1, lo, lo, hi, lo, hi, +1));
  s.cut_patches.push_back(rect_patch("y_hi", id3, 1, hi, lo, hi, lo, hi, -1));
  s.cut_patches.push_back(rect_patch("z_lo", r2, 2, lo, lo, hi, lo, hi, +1));
  s.cut_patches.push_back(rect_patch("z_hi", r2, 2, hi, lo, hi, lo, hi, -1));
  ScenePresentation sp;
  sp.presentation.generators = {"a", "b", "c", "d", "e"};
  sp.images = {r, r, r, r, r};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

// The partially wetted curve: a horizontal table sheet whose boundary is the
// upper lobe of S, continuing through a hairpin (down at y=11, under the
// table, back up at y=5) that pierces the table; an invisible-wire disk
// crosses the descending leg. Crossing the wire disk turns the (1 2) sheet
// into the (1 3) ribbon, and crossing the table turns it into the (2 3)
// tongue whose free rim is the unwetted lower lobe.
SceneSpec almgren() {
  SceneSpec s;
  s.name = "almgren";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(14, 14, 14));
  s.grid_spacing = 0.5;  // 28^3 by default
  s.degree = 3;
  s.dirichlet_sheet = 1;
  const Permutation p12 = Permutation::cycle(3, {1, 2});
  const Permutation p13 = Permutation::cycle(3, {1, 3});
  const Permutation p23 = Permutation::cycle(3, {2, 3});

  s.cut_patches.push_back(rect_patch("table", p12, 2, 9, 3, 11, 3, 11, +1));
  s.cut_patches.push_back(rect_patch("descender_upper", p12, 1, 11, 5, 9, 7, 9, +1));
  s.cut_patches.push_back(rect_patch("descender_ribbon", p13, 1, 11, 5, 9, 6, 7, +1));
  s.cut_patches.push_back(rect_patch("underrun", p13, 2, 6, 5, 9, 5, 11, +1));
  s.cut_patches.push_back(rect_patch("ascender_ribbon", p13, 1, 5, 5, 9, 6, 9, +1));
  s.cut_patches.push_back(rect_patch("tongue", p23, 1, 5, 5, 9, 9, 12, +1));
  s.cut_patches.push_back(rect_patch("wire_disk", p23, 2, 7, 5, 9, 10, 12, +1));

  // S is one closed curve: table rim with a gap at the north edge, then the
  // hairpin strands and the free tongue rim. Split into labeled chains so
  // wetting can be reported per portion.
  s.boundary_curves.push_back(curve("rim", CurveRole::Boundary,
                                    {{9, 11, 9},
                                     {11, 11, 9},
                                     {11, 3, 9},
                                     {3, 3, 9},
                                     {3, 11, 9},
                                     {5, 11, 9}}));
  s.boundary_curves.push_back(curve("neck_left", CurveRole::Boundary,
                                    {{5, 11, 9}, {5, 11, 6}, {5, 5, 6}, {5, 5, 9}}));
  s.boundary_curves.push_back(curve("neck_right", CurveRole::Boundary,
                                    {{9, 11, 9}, {9, 11, 6}, {9, 5, 6}, {9, 5, 9}}));
  s.boundary_curves.push_back(curve("tongue_base_left", CurveRole::Boundary,
                                    {{5, 5, 9}, {5, 5, 10}}));
  s.boundary_curves.push_back(curve("tongue_base_right", CurveRole::Boundary,
                                    {{9, 5, 9}, {9, 5, 10}}));
  s.boundary_curves.push_back(curve("lower_lobe", CurveRole::Boundary,
                                    {{5, 5, 10}, {5, 5, 12}, {9, 5, 12}, {9, 5, 10}}));
  s.boundary_curves.push_back(curve("wire", CurveRole::InvisibleWire,
                                    {{5, 10, 7}, {9, 10, 7}, {9, 12, 7}, {5, 12, 7}, {5, 10, 7}}));

  ScenePresentation sp;
  sp.presentation.generators = {"a", "b"};
  sp.images = {p12, p23};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

// Film that retracts to its boundary: S winds twice around the stack (outer
// loop at z=5, inner loop at z=7, joined by two short connectors), spanned
// by two stacked disks. A full-width wire membrane at y=7 crosses both
// disks; past it the cyclic gluing (1 2 3) reverses to (1 3 2).
SceneSpec moebius_retract() {
  SceneSpec s;
  s.name = "moebius_retract";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(14, 14, 14));
  s.grid_spacing = 0.5;  // 28^3 by default
  s.degree = 3;
  s.dirichlet_sheet = 1;
  const Permutation r = Permutation::cycle(3, {1, 2, 3});
  const Permutation r2 = Permutation::cycle(3, {1, 3, 2});
  const Permutation p23 = Permutation::cycle(3, {2, 3});

  s.cut_patches.push_back(rect_patch("lower_south", r, 2, 5, 3, 11, 3, 7, +1));
  s.cut_patches.push_back(rect_patch("lower_north", r2, 2, 5, 3, 11, 7, 11, +1));
  s.cut_patches.push_back(rect_patch("upper_south", r, 2, 7, 4, 10, 4, 7, +1));
  s.cut_patches.push_back(rect_patch("upper_north", r2, 2, 7, 4, 10, 7, 10, +1));
  s.cut_patches.push_back(rect_patch("wire_disk", p23, 1, 7, 2, 12, 4, 8, +1));

  // One boundary curve: outer loop (z=5), connector, inner loop (z=7),
  // connector back.
  s.boundary_curves.push_back(curve("boundary", CurveRole::Boundary,
                                    {{10, 3, 5},  {3, 3, 5},  {3, 11, 5}, {11, 11, 5},
                                     {11, 4, 5},  {11, 4, 7}, {10, 4, 7}, {10, 10, 7},
                                     {4, 10, 7},  {4, 4, 7},  {9, 4, 7},  {9, 3, 7},
                                     {10, 3, 7},  {10, 3, 5}}));
  s.boundary_curves.push_back(curve("wire", CurveRole::InvisibleWire,
                                    {{2, 7, 4}, {12, 7, 4}, {12, 7, 8}, {2, 7, 8}, {2, 7, 4}}));

  ScenePresentation sp;
  sp.presentation.generators = {"a", "b"};
  sp.presentation.relators = {Word::parse("ababABAB", {"a", "b"})};
  sp.images = {r, p23};
  sp.basepoint = 1;
  s.presentation = sp;
  return s;
}

void octahedron_frame(SceneSpec& s, const Vec3& c, double rad) {
  const Vec3 vx_p = c + Vec3(rad, 0, 0), vx_m = c - Vec3(rad, 0, 0);
  const Vec3 vy_p = c + Vec3(0, rad, 0), vy_m = c - Vec3(0, rad, 0);
  const Vec3 vz_p = c + Vec3(0, 0, rad), vz_m = c - Vec3(0, 0, rad);
  const Vec3 verts[6] = {vx_p, vx_m, vy_p, vy_m, vz_p, vz_m};
  const int ed[12][2] = {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3},
                         {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}};
  for (int e = 0; e < 12; ++e)
    s.boundary_curves.push_back(
        curve("edge" + std::to_string(e), CurveRole::Boundary, {verts[ed[e][0]], verts[ed[e][1]]}));
}

SceneSpec octahedron_checker() {
  SceneSpec s;
  s.name = "octahedron_checker";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(12, 12, 12));
  s.grid_spacing = 0.5;  // 24^3 by default
  s.degree = 3;
  s.dirichlet_sheet = 1;
  const Vec3 c(6, 6, 6);
  const double rad = 4;
  octahedron_frame(s, c, rad);
  const Permutation r = Permutation::cycle(3, {1, 2, 3});
  // Four faces in checkerboard position (sign product +1); every edge of the
  // skeleton borders exactly one of them.
  const int signs[4][3] = {{+1, +1, +1}, {+1, -1, -1}, {-1, +1, -1}, {-1, -1, +1}};
  for (int f = 0; f < 4; ++f) {
    CutPatchSpec patch;
    patch.id = "face" + std::to_string(f);
    patch.permutation = r;
    Vec3 a = c + Vec3(signs[f][0] * rad, 0, 0);
    Vec3 b = c + Vec3(0, signs[f][1] * rad, 0);
    Vec3 d = c + Vec3(0, 0, signs[f][2] * rad);
    patch.triangles.push_back({a, b, d});
    s.cut_patches.push_back(patch);
  }
  return s;
}

SceneSpec octahedron_diametral() {
  SceneSpec s;
  s.name = "octahedron_diametral";
  s.dimension = 3;
  s.domain = Eigen::AlignedBox3d(Vec3(0, 0, 0), Vec3(12, 12, 12));
  s.grid_spacing = 0.5;
  s.degree = 3;
  s.dirichlet_sheet = 1;
  const Vec3 c(6, 6, 6);
  const double rad = 4;
  octahedron_frame(s, c, rad);
  const Permutation r = Permutation::cycle(3, {1, 2, 3});
  // The three diametral squares; the cyclic permutations commute, so the
  // pairwise crossings along the diameters need no splitting.
  const int axes[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int q = 0; q < 3; ++q) {
    CutPatchSpec patch;
    patch.id = "square" + std::to_string(q);
    patch.permutation = r;
    Vec3 u = Vec3::Zero(), v = Vec3::Zero();
    u[axes[q][0]] = rad;
    v[axes[q][1]] = rad;
    const Vec3 quad[4] = {c + u, c + v, c - u, c - v};
    patch.triangles.push_back({quad[0], quad[1], quad[2]});
    patch.triangles.push_back({quad[0], quad[2], quad[3]});
    s.cut_patches.push_back(patch);
  }
  return s;
}

}  // namespace

std::vector<std::string> builtin_scene_names() {
  return {"two_points_2d",    "steiner3_2d", "circle_3d",          "cube_skeleton",
          "almgren",          "moebius_retract", "octahedron_checker", "octahedron_diametral"};
}

SceneSpec builtin_scene(const std::string& name) {
  SceneSpec s;
  if (name == "two_points_2d")
    s = two_points_2d();
  else if (name == "steiner3_2d")
    s = steiner3_2d();
  else if (name == "circle_3d")
    s = circle_3d();
  else if (name == "cube_skeleton")
    s = cube_skeleton();
  else if (name == "almgren")
    s = almgren();
  else if (name == "moebius_retract")
    s = moebius_retract();
  else if (name == "octahedron_checker")
    s = octahedron_checker();
  else if (name == "octahedron_diametral")
    s = octahedron_diametral();
  else
    throw SceneError("unknown built-in scene '" + name + "'");
  s.check();
  return s;
}

}  // namespace plateau
