#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "plateau/scene.hpp"

namespace plateau {

// Codim-2 grid element: a lattice edge along `axis` starting at lattice
// point q (3D), or the lattice vertex (q[0], q[1]) represented as the unique
// z-edge in 2D.
struct Elem {
  int axis = 2;
  std::array<int, 3> q{0, 0, 0};
  bool operator==(const Elem& o) const { return axis == o.axis && q == o.q; }
  bool operator<(const Elem& o) const {
    if (axis != o.axis) return axis < o.axis;
    return q < o.q;
  }
};

struct FaceKey {
  int axis = 0;
  std::array<int, 3> cell{0, 0, 0};  // lower cell of the adjacent pair
  bool operator==(const FaceKey& o) const { return axis == o.axis && cell == o.cell; }
  bool operator<(const FaceKey& o) const {
    if (axis != o.axis) return axis < o.axis;
    return cell < o.cell;
  }
};

// The discrete base: a uniform grid over the domain box, the face-crossing
// table built from the cut patches, and the S / invisible-wire markers on
// codim-2 elements.
class RasterScene {
 public:
  int dimension() const { return dimension_; }
  const std::array<int, 3>& dims() const { return n_; }
  double spacing() const { return h_; }
  const Vec3& origin() const { return origin_; }
  int degree() const { return degree_; }
  int dirichlet_sheet() const { return dirichlet_sheet_; }
  const std::string& scene_name() const { return scene_name_; }

  int num_cells() const { return n_[0] * n_[1] * n_[2]; }
  int cell_index(int i, int j, int k) const { return (k * n_[1] + j) * n_[0] + i; }
  std::array<int, 3> cell_at(int idx) const {
    int i = idx % n_[0];
    int j = (idx / n_[0]) % n_[1];
    int k = idx / (n_[0] * n_[1]);
    return {i, j, k};
  }
  Vec3 cell_center(int idx) const;
  bool in_grid(int i, int j, int k) const {
    return i >= 0 && i < n_[0] && j >= 0 && j < n_[1] && k >= 0 && k < n_[2];
  }
  // Outermost cell layer carrying the Dirichlet condition.
  bool is_collar(int idx) const;
  int num_interior_cells() const;

  // --- permutation table (face-canonical permutations by id) ---
  int identity_perm() const { return 0; }
  const Permutation& perm(int id) const { return perm_table_[static_cast<size_t>(id)]; }
  int perm_id(const Permutation& p);  // interns p
  int inverse_perm(int id) const { return perm_inverse_[static_cast<size_t>(id)]; }
  int compose_perms(int a, int b) const;  // left-to-right; table sealed at build
  int apply_perm(int id, int sheet) const {
    return perm_apply_[static_cast<size_t>(id)][static_cast<size_t>(sheet - 1)];
  }
  int num_perms() const { return static_cast<int>(perm_table_.size()); }

  // --- faces ---
  // Crossing permutation id when stepping from cell `cell` one step along
  // +axis (dir=+1) or -axis (dir=-1); the face is the one crossed.
  int step_perm(int axis, const std::array<int, 3>& cell, int dir) const;
  // Signed patch reference of the face between `cell` and `cell`+e_axis:
  // 0 if uncrossed, otherwise +-(patch_index+1); sign +1 means the patch
  // normal points along +axis at the crossing.
  int face_patch_ref(int axis, const std::array<int, 3>& cell) const;
  bool face_in_grid(int axis, const std::array<int, 3>& cell) const;
  Vec3 face_center(int axis, const std::array<int, 3>& cell) const;

  int num_patches() const { return static_cast<int>(patch_ids_.size()); }
  const std::string& patch_id(int p) const { return patch_ids_[static_cast<size_t>(p)]; }
  const Permutation& patch_perm(int p) const { return patch_perms_[static_cast<size_t>(p)]; }

  // --- codim-2 elements ---
  // In 2D only axis 2 elements exist (lattice vertices, k = 0).
  bool elem_interior(const Elem& e) const;
  // Composed permutation id of the fixed elementary loop around e
  // (identity for non-interior elements).
  int elem_monodromy(const Elem& e) const;
  // Curve index carrying this element, or -1.
  int elem_curve(const Elem& e) const;
  bool elem_marked(const Elem& e) const { return elem_curve(e) >= 0; }
  Vec3 elem_midpoint(const Elem& e) const;
  // The four cells of the elementary loop, in traversal order.
  std::array<std::array<int, 3>, 4> elem_loop_cells(const Elem& e) const;
  // Iterate all elements (interior and not).
  void for_each_elem(const std::function<void(const Elem&)>& fn) const;

  // --- curves ---
  int num_curves() const { return static_cast<int>(curve_ids_.size()); }
  const std::string& curve_id(int c) const { return curve_ids_[static_cast<size_t>(c)]; }
  CurveRole curve_role(int c) const { return curve_roles_[static_cast<size_t>(c)]; }
  const std::vector<Elem>& curve_elements(int c) const {
    return curve_elems_[static_cast<size_t>(c)];
  }

  // Deterministic content hash of grid + face table (labelings reference it).
  uint64_t content_key() const { return content_key_; }

  friend RasterScene rasterize(const SceneSpec& spec);

 private:
  int elem_linear(const Elem& e) const;
  int face_linear(int axis, const std::array<int, 3>& cell) const;
  void seal_perm_table();

  std::string scene_name_;
  int dimension_ = 3;
  std::array<int, 3> n_{0, 0, 1};
  double h_ = 1;
  Vec3 origin_ = Vec3::Zero();
  int degree_ = 2;
  int dirichlet_sheet_ = 1;

  std::vector<Permutation> patch_perms_;
  std::vector<std::string> patch_ids_;

  std::array<std::vector<int32_t>, 3> face_ref_;   // signed patch refs
  std::array<std::vector<int32_t>, 3> elem_curve_;  // curve index or -1

  std::vector<std::string> curve_ids_;
  std::vector<CurveRole> curve_roles_;
  std::vector<std::vector<Elem>> curve_elems_;

  // interned permutations
  std::vector<Permutation> perm_table_;
  std::vector<int> perm_inverse_;
  std::vector<std::array<uint8_t, 8>> perm_apply_;
  std::vector<std::vector<int>> compose_cache_;
  std::array<std::vector<int16_t>, 3> face_perm_plus_;  // perm id crossing +axis

  uint64_t content_key_ = 0;
};

class RasterError : public std::runtime_error {
 public:
  explicit RasterError(const std::string& what) : std::runtime_error(what) {}
};

// Snaps S and wires to lattice chains, builds the face-crossing table from
// the cut patches (error on overlapping patches), and absorbs patch-rim
// elements lying within 2h of a declared curve into that curve's marker set.
RasterScene rasterize(const SceneSpec& spec);

enum class ElemClass { Trivial, FrameWettingForced, FrameWettingOptional, Wire, Inconsistent };

struct ElemRecord {
  Elem elem;
  int perm_id = 0;
  ElemClass cls = ElemClass::Trivial;
  int curve = -1;
};

enum class ValidationStatus { Pass, Warn, Fail };

struct ValidationReport {
  ValidationStatus status = ValidationStatus::Pass;
  // Records for every marked element and every non-trivial unmarked one.
  std::vector<ElemRecord> records;
  int64_t elements_checked = 0;
  int64_t inconsistent = 0;
  int64_t forced = 0;
  int64_t optional_wetting = 0;
  int64_t wire = 0;
  std::vector<std::string> notes;
};

// Classifies the elementary monodromy of every interior codim-2 element:
// off S + wires non-identity => Inconsistent (status Fail); on S with
// fixed-point-free monodromy => FrameWettingForced; on S fixing some sheet
// => FrameWettingOptional; on a wire => Wire (Warn when the monodromy moves
// the Dirichlet sheet).
ValidationReport validate(const RasterScene& raster);

const char* elem_class_name(ElemClass c);
const char* validation_status_name(ValidationStatus s);

}  // namespace plateau
