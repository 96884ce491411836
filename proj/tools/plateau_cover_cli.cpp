// plateau-cover: build permutation-glued covers of a gridded domain minus a
// boundary frame, minimize the constrained total variation, and export the
// resulting film.
//
// Exit codes: 0 success (validate: pass/warn), 1 domain failure, 2 usage or
// schema error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "plateau/cover.hpp"
#include "plateau/measure.hpp"
#include "plateau/permgroup.hpp"
#include "plateau/raster.hpp"
#include "plateau/scene.hpp"
#include "plateau/solve.hpp"

using nlohmann::json;
using namespace plateau;

namespace {

struct SceneSource {
  std::string builtin;
  std::string file;
};

SceneSpec load_scene(const SceneSource& src) {
  if (!src.builtin.empty() && !src.file.empty())
    throw SceneError("--scene and --file are mutually exclusive");
  if (!src.builtin.empty()) return builtin_scene(src.builtin);
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    if (!in) throw SceneError("cannot open scene file '" + src.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
  }
  throw SceneError("no scene given (use --scene NAME or --file PATH)");
}

void apply_grid(SceneSpec& spec, int grid) {
  if (grid == 0) return;
  if (grid < 8) throw SceneError("--grid must be at least 8");
  double extent = 0;
  for (int a = 0; a < spec.dimension; ++a)
    extent = std::max(extent, spec.domain.max()[a] - spec.domain.min()[a]);
  spec.grid_spacing = extent / grid;
}

int threads_from_env() {
  const char* env = std::getenv("PLATEAU_COVER_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

SolveResult run_solver(const std::string& solver, const RasterScene& raster,
                       const CoverGraph& cover, const Weighting& weighting, uint64_t seed,
                       int restarts) {
  HeuristicParams params;
  params.seed = seed;
  params.restarts = restarts;
  params.threads = threads_from_env();
  if (solver == "brute") return brute_force(raster, cover, weighting);
  if (solver == "mincut") return mincut_degree2(raster, cover, weighting);
  if (solver == "heuristic") return heuristic(raster, cover, weighting, params);
  // auto
  if (raster.degree() == 2) return mincut_degree2(raster, cover, weighting);
  const double states =
      std::pow(static_cast<double>(raster.degree()), raster.num_interior_cells());
  if (states <= static_cast<double>(1ull << 24)) return brute_force(raster, cover, weighting);
  return heuristic(raster, cover, weighting, params);
}

void print_validation(const ValidationReport& rep, const RasterScene& raster) {
  std::cout << "validation: " << validation_status_name(rep.status) << "\n";
  std::cout << "  elements checked: " << rep.elements_checked << "\n";
  std::cout << "  frame-wetting-forced: " << rep.forced
            << ", frame-wetting-optional: " << rep.optional_wetting << ", wire: " << rep.wire
            << ", inconsistent: " << rep.inconsistent << "\n";
  for (const auto& note : rep.notes) std::cout << "  note: " << note << "\n";
  // per-curve summary
  for (int c = 0; c < raster.num_curves(); ++c) {
    int forced = 0, optional_w = 0, trivial = 0, wire = 0;
    for (const auto& rec : rep.records) {
      if (rec.curve != c) continue;
      switch (rec.cls) {
        case ElemClass::FrameWettingForced: ++forced; break;
        case ElemClass::FrameWettingOptional: ++optional_w; break;
        case ElemClass::Wire: ++wire; break;
        default: ++trivial; break;
      }
    }
    std::cout << "  curve " << raster.curve_id(c) << ": forced " << forced << ", optional "
              << optional_w << ", wire " << wire << ", trivial " << trivial << "\n";
  }
}

int cmd_scenes() {
  for (const auto& name : builtin_scene_names()) {
    SceneSpec s = builtin_scene(name);
    std::cout << name << "  (dim " << s.dimension << ", degree " << s.degree << ", "
              << s.cut_patches.size() << " patches)\n";
  }
  return 0;
}

int cmd_validate(const SceneSource& src, int grid) {
  SceneSpec spec = load_scene(src);
  apply_grid(spec, grid);
  RasterScene raster = rasterize(spec);
  ValidationReport rep = validate(raster);
  print_validation(rep, raster);
  return rep.status == ValidationStatus::Fail ? 1 : 0;
}

int cmd_solve(const SceneSource& src, int grid, const std::string& weighting_name,
              const std::string& solver, uint64_t seed, int restarts, const std::string& out_dir) {
  SceneSpec spec = load_scene(src);
  apply_grid(spec, grid);
  RasterScene raster = rasterize(spec);
  ValidationReport rep = validate(raster);
  if (rep.status == ValidationStatus::Fail) {
    print_validation(rep, raster);
    std::cerr << "error: scene does not validate\n";
    return 1;
  }
  CoverGraph cover = build_cover(raster);
  Weighting weighting = weighting_name == "crofton" ? Weighting::crofton(raster)
                                                    : Weighting::plain(raster);
  SolveResult result = run_solver(solver, raster, cover, weighting, seed, restarts);
  JumpSet jump = jump_set(result.labeling, cover, weighting);
  WettingReport wetting = wetting_report(jump, raster);

  std::cout << "scene        " << raster.scene_name() << "\n";
  std::cout << "grid         " << raster.dims()[0] << "x" << raster.dims()[1];
  if (raster.dimension() == 3) std::cout << "x" << raster.dims()[2];
  std::cout << "  (h = " << raster.spacing() << ")\n";
  std::cout << "solver       " << result.solver << " [" << result.certificate << "]\n";
  std::cout << "energy       " << result.energy << "\n";
  std::cout << "tv           " << result.tv << "\n";
  std::cout << "area         " << area(jump) << "\n";
  std::cout << "wallclock    " << result.wallclock_sec << " s\n";
  for (const auto& seg : wetting.segments)
    std::cout << "wetting      " << seg.segment_id << ": " << (seg.wetted ? "wetted" : "dry")
              << " (" << seg.monodromy_class << ", dist " << seg.min_distance_cells << ")\n";

  if (!out_dir.empty()) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir))
      throw MeasureError("cannot create output directory '" + out_dir + "'");
    std::vector<std::pair<std::string, std::string>> echo = {
        {"scene", src.builtin.empty() ? src.file : src.builtin},
        {"grid", std::to_string(grid)},
        {"weighting", weighting_name},
        {"solver", solver},
        {"seed", std::to_string(seed)},
        {"restarts", std::to_string(restarts)},
        {"out", out_dir}};
    report_json(result, wetting, raster, weighting_name, (dir / "report.json").string(), echo);
    export_obj(jump, raster, (dir / "film.obj").string());
    std::cout << "wrote        " << (dir / "report.json").string() << ", "
              << (dir / "film.obj").string() << "\n";
  }
  return 0;
}

int cmd_compare_cuts(const SceneSource& src_a, const SceneSource& src_b, int grid,
                     const std::string& weighting_name) {
  SceneSpec spec_a = load_scene(src_a);
  SceneSpec spec_b = load_scene(src_b);
  apply_grid(spec_a, grid);
  apply_grid(spec_b, grid);
  if (spec_a.degree != 2 || spec_b.degree != 2)
    throw SceneError("compare-cuts requires degree-2 scenes");
  RasterScene ra = rasterize(spec_a);
  RasterScene rb = rasterize(spec_b);
  if (ra.dims() != rb.dims()) throw SceneError("compare-cuts requires the same grid");
  // same S: compare boundary marker sets
  std::set<Elem> sa, sb;
  for (int c = 0; c < ra.num_curves(); ++c)
    if (ra.curve_role(c) == CurveRole::Boundary)
      for (const Elem& e : ra.curve_elements(c)) sa.insert(e);
  for (int c = 0; c < rb.num_curves(); ++c)
    if (rb.curve_role(c) == CurveRole::Boundary)
      for (const Elem& e : rb.curve_elements(c)) sb.insert(e);
  if (sa != sb) throw SceneError("compare-cuts requires the same boundary frame S");

  CoverGraph ca = build_cover(ra), cb = build_cover(rb);
  Weighting wa = weighting_name == "crofton" ? Weighting::crofton(ra) : Weighting::plain(ra);
  Weighting wb = weighting_name == "crofton" ? Weighting::crofton(rb) : Weighting::plain(rb);
  SolveResult res_a = mincut_degree2(ra, ca, wa);
  SolveResult res_b = mincut_degree2(rb, cb, wb);
  std::cout << "cut system A: energy " << res_a.energy << " [" << res_a.certificate << "]\n";
  std::cout << "cut system B: energy " << res_b.energy << " [" << res_b.certificate << "]\n";

  // transported-labeling check: the jump set must carry over exactly
  Labeling moved = transport_labeling(res_a.labeling, ra, rb);
  JumpSet ja = jump_set(res_a.labeling, ca, wa);
  JumpSet jb = jump_set(moved, cb, wb);
  const bool same_jumps = ja.faces == jb.faces;
  std::cout << "transported labeling: jump set "
            << (same_jumps ? "identical" : "DIFFERS") << ", energy "
            << energy(moved, cb, wb) << "\n";

  const double tol = 1e-9 * std::max(1.0, std::abs(res_a.energy));
  if (std::abs(res_a.energy - res_b.energy) > tol || !same_jumps) {
    std::cerr << "error: cut systems disagree\n";
    return 1;
  }
  std::cout << "minimum is independent of the cut system\n";
  return 0;
}

int cmd_group_check(const SceneSource& src, const std::string& group_file) {
  Presentation pres;
  std::vector<Permutation> images;
  int basepoint = 1;
  if (!group_file.empty()) {
    std::ifstream in(group_file);
    if (!in) throw SceneError("cannot open '" + group_file + "'");
    json j = json::parse(in, nullptr, true);
    for (const auto& g : j.at("generators")) pres.generators.push_back(g.get<std::string>());
    for (const auto& r : j.value("relators", json::array()))
      pres.relators.push_back(Word::parse(r.get<std::string>(), pres.generators));
    for (const auto& g : pres.generators) {
      std::vector<int> img;
      for (const auto& v : j.at("images").at(g)) img.push_back(v.get<int>());
      images.push_back(Permutation::from_image(img));
    }
    basepoint = j.value("basepoint", 1);
  } else {
    SceneSpec spec = load_scene(src);
    if (!spec.presentation)
      throw SceneError("scene '" + spec.name + "' carries no presentation data");
    pres = spec.presentation->presentation;
    images = spec.presentation->images;
    basepoint = spec.presentation->basepoint;
  }
  const bool relations_ok = check_relations(pres, images);
  json out;
  out["relations_ok"] = relations_ok;
  if (relations_ok) {
    Homomorphism hom(pres, images);
    out["index"] = subgroup_index(hom, basepoint);
    out["normal"] = is_normal(hom, basepoint);
  }
  std::cout << out.dump(2) << "\n";
  return relations_ok ? 0 : 1;
}

int cmd_monodromy(const SceneSource& src, int grid, const std::string& loop_file) {
  SceneSpec spec = load_scene(src);
  apply_grid(spec, grid);
  RasterScene raster = rasterize(spec);
  std::ifstream in(loop_file);
  if (!in) throw SceneError("cannot open loop file '" + loop_file + "'");
  json j = json::parse(in, nullptr, true);
  BasePath path;
  for (const auto& jc : j.at("cells")) {
    std::array<int, 3> c{0, 0, 0};
    for (size_t a = 0; a < jc.size() && a < 3; ++a) c[a] = jc.at(a).get<int>();
    path.cells.push_back(c);
  }
  path.closed = j.value("closed", path.cells.size() > 1 && path.cells.front() == path.cells.back());
  Permutation mono = path_monodromy(raster, path);
  std::cout << "monodromy: " << mono.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-space solver for Plateau-type problems"};
  app.require_subcommand(1);

  SceneSource src, src_b;
  int grid = 0;
  std::string weighting = "plain", solver = "auto", out_dir, group_file, loop_file;
  uint64_t seed = 0;
  int restarts = 8;

  auto add_scene_opts = [&](CLI::App* cmd) {
    cmd->add_option("--scene", src.builtin, "built-in scene name");
    cmd->add_option("--file", src.file, "scene JSON file");
    cmd->add_option("--grid", grid, "cells along the longest axis");
  };

  auto* scenes = app.add_subcommand("scenes", "list built-in scenes");
  auto* validate_cmd = app.add_subcommand("validate", "rasterize and check gluing consistency");
  add_scene_opts(validate_cmd);
  auto* solve_cmd = app.add_subcommand("solve", "minimize the constrained total variation");
  add_scene_opts(solve_cmd);
  solve_cmd->add_option("--weighting", weighting, "plain|crofton")
      ->check(CLI::IsMember({"plain", "crofton"}));
  solve_cmd->add_option("--solver", solver, "auto|brute|mincut|heuristic")
      ->check(CLI::IsMember({"auto", "brute", "mincut", "heuristic"}));
  solve_cmd->add_option("--seed", seed, "heuristic RNG seed");
  solve_cmd->add_option("--restarts", restarts, "heuristic restarts");
  solve_cmd->add_option("--out", out_dir, "output directory for report.json and film.obj");
  auto* compare_cmd = app.add_subcommand("compare-cuts", "solve two cut systems for the same S");
  add_scene_opts(compare_cmd);
  compare_cmd->add_option("--scene-b", src_b.builtin, "built-in name of variant B");
  compare_cmd->add_option("--file-b", src_b.file, "scene JSON file of variant B");
  compare_cmd->add_option("--weighting", weighting, "plain|crofton")
      ->check(CLI::IsMember({"plain", "crofton"}));
  auto* group_cmd = app.add_subcommand("group-check", "presentation / homomorphism fingerprints");
  group_cmd->add_option("--scene", src.builtin, "built-in scene carrying a presentation");
  group_cmd->add_option("--file", group_file, "presentation JSON file");
  auto* mono_cmd = app.add_subcommand("monodromy", "composed permutation along a cell loop");
  add_scene_opts(mono_cmd);
  mono_cmd->add_option("--loop", loop_file, "JSON file with {cells:[[i,j,k],...]}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (scenes->parsed()) return cmd_scenes();
    if (validate_cmd->parsed()) return cmd_validate(src, grid);
    if (solve_cmd->parsed())
      return cmd_solve(src, grid, weighting, solver, seed, restarts, out_dir);
    if (compare_cmd->parsed()) return cmd_compare_cuts(src, src_b, grid, weighting);
    if (group_cmd->parsed()) return cmd_group_check(src, group_file);
    if (mono_cmd->parsed()) return cmd_monodromy(src, grid, loop_file);
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
