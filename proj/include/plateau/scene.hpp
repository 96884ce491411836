#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plateau/permgroup.hpp"

namespace plateau {

using Vec3 = Eigen::Vector3d;

class SceneError : public std::runtime_error {
 public:
  explicit SceneError(const std::string& what) : std::runtime_error(what) {}
};

enum class CurveRole { Boundary, InvisibleWire };

// A polyline in 3D or a point set / polyline in 2D (z = 0). A closed curve
// repeats its first point at the end.
struct BoundaryCurve {
  CurveRole role = CurveRole::Boundary;
  std::string id;
  std::vector<Vec3> points;
};

struct Triangle {
  Vec3 a, b, c;
  Vec3 normal() const { return (b - a).cross(c - a); }
};

// Oriented cut piece: a triangle soup in 3D, an oriented polyline in 2D.
// Sheets are glued across it by `permutation` when crossing along the
// declared normal (3D: triangle winding; 2D: left normal of the polyline).
struct CutPatchSpec {
  std::string id;
  Permutation permutation;
  std::vector<Triangle> triangles;  // 3D
  std::vector<Vec3> polyline;       // 2D
};

// Optional group-theoretic datum carried by a scene: a presentation of
// pi_1 of the base complement together with generator images in S_d.
struct ScenePresentation {
  Presentation presentation;
  std::vector<Permutation> images;
  int basepoint = 1;
};

struct SceneSpec {
  std::string name;
  int dimension = 3;  // 2 or 3
  Eigen::AlignedBox3d domain;
  double grid_spacing = 1.0;  // authoring default; CLI --grid overrides
  int degree = 2;
  int dirichlet_sheet = 1;
  std::vector<BoundaryCurve> boundary_curves;
  std::vector<CutPatchSpec> cut_patches;
  std::optional<ScenePresentation> presentation;

  // Throws SceneError on any type-invariant violation (degree < 2, bad
  // dirichlet sheet, permutation degree mismatch, geometry without the
  // required 2-cell collar to the domain box).
  void check() const;

  bool operator==(const SceneSpec& o) const;
};

// Scene document I/O (UTF-8 JSON, permutations as 1-based image lists).
SceneSpec parse_scene(const std::string& text);
std::string serialize_scene(const SceneSpec& spec);

// Built-in scenes: two_points_2d, steiner3_2d, circle_3d, cube_skeleton,
// almgren, moebius_retract, octahedron_checker, octahedron_diametral.
SceneSpec builtin_scene(const std::string& name);
std::vector<std::string> builtin_scene_names();

}  // namespace plateau
