// Copyright 2026 The JointDamage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// jointdamage: quantify joint damage on color-masked meshes and evaluate 2D
// damage masks.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input or arguments.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jointdamage/damage.h"
#include "jointdamage/error.h"
#include "jointdamage/mesh_io.h"
#include "jointdamage/png_io.h"
#include "jointdamage/raster.h"
#include "jointdamage/report.h"
#include "jointdamage/synth.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jointdamage;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

// Per-stage wall-clock timings. Written out when the command finishes,
// whether or not it succeeded.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  template <typename Fn>
  auto Stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        Record(name, start, "ok");
      } else {
        auto result = fn();
        Record(name, start, "ok");
        return result;
      }
    } catch (...) {
      Record(name, start, "failed");
      throw;
    }
  }

  void AddInput(const std::string& path) { inputs_.push_back(path); }
  void AddOutput(const std::string& path) { outputs_.push_back(path); }

  json ToJson(bool success) const {
    return {{"schema", kReportSchema}, {"command", command_}, {"success", success},
            {"stages", stages_},       {"inputs", inputs_},   {"outputs", outputs_}};
  }

 private:
  void Record(const std::string& name, std::chrono::steady_clock::time_point start,
              const char* status) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stages_.push_back({{"name", name}, {"seconds", std::max(0.0, seconds)}, {"status", status}});
  }

  std::string command_;
  json stages_ = json::array();
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    WriteFileBytes(path, text);
  }
}

Rgb ToRgb(const std::vector<int>& c, const char* what) {
  if (c.size() != 3) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " needs R,G,B");
  for (int v : c) {
    if (v < 0 || v > 255) {
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " channels must be 0-255");
    }
  }
  return {static_cast<uint8_t>(c[0]), static_cast<uint8_t>(c[1]), static_cast<uint8_t>(c[2])};
}

struct JdiFlags {
  int threshold = 230;
  double scale = 1;
  double sawcut_length = 500;
  double d_max = 25;
  bool red_dominance = false;

  void Register(CLI::App* cmd, bool with_threshold = true) {
    if (with_threshold) {
      cmd->add_option("--threshold", threshold, "Red threshold; a face needs red > threshold at all three vertices")
          ->capture_default_str();
    }
    cmd->add_option("--scale", scale, "Multiplier from mesh units to mm")->capture_default_str();
    cmd->add_option("--sawcut-length-mm", sawcut_length, "Observed sawcut length")->capture_default_str();
    cmd->add_option("--dmax-mm", d_max, "Maximum aggregate size")->capture_default_str();
    cmd->add_flag("--red-dominance", red_dominance, "Also require red > green and red > blue");
  }

  JdiParams Params() const {
    JdiParams p;
    p.sawcut_length = sawcut_length;
    p.d_max = d_max;
    p.coordinate_scale = scale;
    p.threshold = threshold;
    p.Validate();
    return p;
  }

  ClassifyOptions Classify() const {
    ClassifyOptions o;
    o.coordinate_scale = scale;
    o.red_dominance = red_dominance;
    return o;
  }
};

struct GtFlags {
  std::string faces_path;
  std::string mesh_path;
  std::vector<int> color;
  int tolerance = 0;

  void Register(CLI::App* cmd) {
    auto* faces = cmd->add_option("--gt-faces", faces_path, "Ground-truth face list (one index per line)");
    auto* color_opt = cmd->add_option("--gt-color", color, "Ground-truth key color R,G,B (e.g. 255,255,0)")
                          ->delimiter(',')
                          ->expected(3);
    cmd->add_option("--gt-mesh", mesh_path, "Companion mesh carrying the ground-truth color (default: the input mesh)");
    cmd->add_option("--gt-tolerance", tolerance, "Per-channel tolerance for --gt-color")->capture_default_str();
    faces->excludes(color_opt);
  }

  DamageLabeling Load(const TriMesh& mesh, double scale, RunReport& run) const {
    if (!faces_path.empty()) {
      run.AddInput(faces_path);
      return DamageLabeling::FromFaceIds(mesh, ParseFaceList(ReadFileBytes(faces_path)), scale);
    }
    if (color.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "ground truth needs --gt-faces or --gt-color");
    }
    const Rgb key = ToRgb(color, "--gt-color");
    if (mesh_path.empty()) return GroundTruthFromColor(mesh, key, tolerance, scale);
    run.AddInput(mesh_path);
    const TriMesh gt_mesh = LoadMesh(mesh_path);
    if (GeometryFingerprint(gt_mesh) != GeometryFingerprint(mesh)) {
      throw Error(ErrorCode::kMeshMismatch, "--gt-mesh geometry differs from the input mesh");
    }
    // Same geometry, so the labeling is valid for `mesh` as well.
    return GroundTruthFromColor(gt_mesh, key, tolerance, scale);
  }
};

TriMesh LoadInputMesh(const std::string& path, RunReport& run) {
  run.AddInput(path);
  std::vector<std::string> warnings;
  TriMesh mesh = LoadMesh(path, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  return mesh;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint damage quantification on color-masked meshes and 2D masks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string timing_path;
  app.add_option("--timing", timing_path, "Write the per-stage timing report here (default: stderr)");

  // quantify
  auto* quantify = app.add_subcommand("quantify", "Detect damaged faces and compute the joint damage index");
  std::string q_mesh, q_out = "-", q_recolored;
  bool q_ascii = false;
  JdiFlags q_flags;
  quantify->add_option("mesh", q_mesh, "Input mesh (.ply or .obj)")->required();
  q_flags.Register(quantify);
  quantify->add_option("--out", q_out, "JSON report path ('-' for stdout)")->capture_default_str();
  quantify->add_option("--recolored", q_recolored, "Write a PLY with damaged faces colored green");
  quantify->add_flag("--ascii", q_ascii, "Write the recolored PLY as ASCII");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Recall, error and JDI over a list of thresholds (CSV)");
  std::string s_mesh, s_out = "-";
  std::vector<int> s_thresholds = {190, 210, 230, 250};
  JdiFlags s_flags;
  GtFlags s_gt;
  sweep->add_option("mesh", s_mesh, "Input mesh (.ply or .obj)")->required();
  sweep->add_option("--thresholds", s_thresholds, "Comma-separated thresholds")
      ->delimiter(',')
      ->capture_default_str();
  s_flags.Register(sweep, false);
  s_gt.Register(sweep);
  sweep->add_option("--out", s_out, "CSV path ('-' for stdout)")->capture_default_str();

  // eval3d
  auto* eval3d = app.add_subcommand("eval3d", "Area-weighted recall/error of the detection against ground truth");
  std::string e3_mesh, e3_out = "-";
  JdiFlags e3_flags;
  GtFlags e3_gt;
  eval3d->add_option("mesh", e3_mesh, "Input mesh (.ply or .obj)")->required();
  e3_flags.Register(eval3d);
  e3_gt.Register(eval3d);
  eval3d->add_option("--out", e3_out, "JSON path ('-' for stdout)")->capture_default_str();

  // eval2d
  auto* eval2d = app.add_subcommand("eval2d", "Pixel recall/error of a predicted mask against ground truth");
  std::string e2_pred, e2_gt, e2_out = "-";
  eval2d->add_option("pred", e2_pred, "Predicted mask PNG (nonzero = damage)")->required();
  eval2d->add_option("gt", e2_gt, "Ground-truth mask PNG")->required();
  eval2d->add_option("--out", e2_out, "JSON path ('-' for stdout)")->capture_default_str();

  // mask
  auto* mask = app.add_subcommand("mask", "Paint masked pixels of an image with a solid color");
  std::string m_image, m_mask, m_out;
  std::vector<int> m_color = {255, 0, 0};
  mask->add_option("image", m_image, "Input image PNG")->required();
  mask->add_option("mask", m_mask, "Mask PNG (nonzero = damage)")->required();
  mask->add_option("--color", m_color, "R,G,B")->delimiter(',')->expected(3)->capture_default_str();
  mask->add_option("--out", m_out, "Output PNG")->required();

  // augment
  auto* augment = app.add_subcommand("augment", "Expand a directory of PNGs with random augmentations");
  std::string a_in, a_out;
  uint64_t a_seed = 0;
  int a_ops = 5;
  AugmentParams a_params;
  augment->add_option("input_dir", a_in, "Directory of input PNGs")->required();
  augment->add_option("output_dir", a_out, "Output directory (created if missing)")->required();
  augment->add_option("--seed", a_seed)->capture_default_str();
  augment->add_option("--ops-per-image", a_ops, "Augmented copies per input, besides the original")
      ->capture_default_str();
  augment->add_option("--sigma", a_params.blur_sigma, "Gaussian blur sigma")->capture_default_str();
  augment->add_option("--brighten", a_params.brighten_factor)->capture_default_str();
  augment->add_option("--darken", a_params.darken_factor)->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic meshes / mask pairs with known answers");
  std::string y_spec, y_out;
  bool y_ascii = false;
  synth->add_option("spec", y_spec, "JSON spec with a \"mesh\" and/or \"mask\" object")->required();
  synth->add_option("--out-dir", y_out, "Output directory")->required();
  synth->add_flag("--ascii", y_ascii, "Write the mesh as ASCII PLY");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  RunReport run(app.get_subcommands().front()->get_name());
  int status = 0;
  try {
    if (*quantify) {
      const TriMesh mesh = run.Stage("load_mesh", [&] { return LoadInputMesh(q_mesh, run); });
      const JdiParams params = q_flags.Params();
      const DamageLabeling damage = run.Stage(
          "detect", [&] { return ClassifyDamage(mesh, params.threshold, q_flags.Classify()); });
      const JdiReport report = run.Stage("quantify", [&] { return ComputeJdi(damage, params); });
      json j = ToJson(report);
      j["mesh"] = q_mesh;
      j["red_dominance"] = q_flags.red_dominance;
      run.Stage("write_report", [&] { Emit(q_out, j.dump(2) + "\n"); });
      if (q_out != "-") run.AddOutput(q_out);
      if (!q_recolored.empty()) {
        run.Stage("write_recolored", [&] {
          WriteFileBytes(q_recolored,
                         WritePly(mesh, q_ascii ? PlyEncoding::kAscii : PlyEncoding::kBinaryLittleEndian,
                                  &damage));
        });
        run.AddOutput(q_recolored);
      }
    } else if (*sweep) {
      const TriMesh mesh = run.Stage("load_mesh", [&] { return LoadInputMesh(s_mesh, run); });
      const JdiParams base = s_flags.Params();
      const DamageLabeling gt = run.Stage("load_ground_truth", [&] { return s_gt.Load(mesh, base.coordinate_scale, run); });
      const auto rows = run.Stage("sweep", [&] {
        return ThresholdSweep(mesh, gt, s_thresholds, base, s_flags.red_dominance);
      });
      if (gt.empty()) std::cerr << "warning: ground truth is empty; recall and error are undefined\n";
      run.Stage("write_csv", [&] { Emit(s_out, SweepToCsv(rows)); });
      if (s_out != "-") run.AddOutput(s_out);
    } else if (*eval3d) {
      const TriMesh mesh = run.Stage("load_mesh", [&] { return LoadInputMesh(e3_mesh, run); });
      const JdiParams params = e3_flags.Params();
      const DamageLabeling gt = run.Stage("load_ground_truth", [&] { return e3_gt.Load(mesh, params.coordinate_scale, run); });
      const DamageLabeling pred = run.Stage(
          "detect", [&] { return ClassifyDamage(mesh, params.threshold, e3_flags.Classify()); });
      json j = run.Stage("evaluate", [&] {
        const SegMetrics m = Metrics3d(pred, gt, mesh);
        return json{{"schema", kReportSchema},
                    {"metrics", ToJson(m)},
                    {"predicted", ToJson(ComputeJdi(pred, params))},
                    {"ground_truth", ToJson(ComputeJdi(gt, params))}};
      });
      j["mesh"] = e3_mesh;
      run.Stage("write_report", [&] { Emit(e3_out, j.dump(2) + "\n"); });
      if (e3_out != "-") run.AddOutput(e3_out);
    } else if (*eval2d) {
      run.AddInput(e2_pred);
      run.AddInput(e2_gt);
      const BinaryMask pred = run.Stage("load_pred", [&] { return ReadMaskPng(e2_pred); });
      const BinaryMask gt = run.Stage("load_gt", [&] { return ReadMaskPng(e2_gt); });
      const SegMetrics m = run.Stage("evaluate", [&] { return Metrics2d(pred, gt); });
      run.Stage("write_report", [&] { Emit(e2_out, ToJson(m).dump(2) + "\n"); });
      if (e2_out != "-") run.AddOutput(e2_out);
    } else if (*mask) {
      run.AddInput(m_image);
      run.AddInput(m_mask);
      const Rgb color = ToRgb(m_color, "--color");
      const RasterImage image = run.Stage("load_image", [&] { return ReadPng(m_image); });
      const BinaryMask bits = run.Stage("load_mask", [&] { return ReadMaskPng(m_mask); });
      const RasterImage painted = run.Stage("mask", [&] { return ApplyColorMask(image, bits, color); });
      run.Stage("write_image", [&] { WritePng(m_out, painted); });
      run.AddOutput(m_out);
    } else if (*augment) {
      std::vector<fs::path> inputs;
      run.Stage("scan", [&] {
        std::error_code ec;
        fs::directory_iterator it(a_in, ec);
        if (ec) throw Error(ErrorCode::kIo, "cannot list '" + a_in + "': " + ec.message());
        for (const auto& entry : it) {
          std::string ext = entry.path().extension().string();
          std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
          if (entry.is_regular_file() && ext == ".png") inputs.push_back(entry.path());
        }
        std::sort(inputs.begin(), inputs.end());
        fs::create_directories(a_out, ec);
        if (ec) throw Error(ErrorCode::kIo, "cannot create '" + a_out + "': " + ec.message());
      });
      const std::vector<AugmentStep> plan = PlanAugmentation(inputs.size(), a_seed, a_ops);
      run.Stage("augment", [&] {
        size_t step = 0;
        for (size_t i = 0; i < inputs.size(); ++i) {
          run.AddInput(inputs[i].string());
          const RasterImage image = ReadPng(inputs[i].string());
          for (; step < plan.size() && plan[step].source == i; ++step) {
            const AugmentStep& s = plan[step];
            const fs::path out = fs::path(a_out) / (inputs[i].stem().string() + "_v" +
                                                    std::to_string(s.variant) + "_" +
                                                    AugmentOpName(s.op) + ".png");
            WritePng(out.string(), ApplyAugmentOp(image, s.op, a_params));
          }
        }
      });
      std::cout << json{{"inputs", inputs.size()}, {"outputs", plan.size()}, {"seed", a_seed}}.dump()
                << "\n";
    } else if (*synth) {
      run.AddInput(y_spec);
      const json spec = run.Stage("load_spec", [&] {
        try {
          return json::parse(ReadFileBytes(y_spec));
        } catch (const json::parse_error& e) {
          throw Error(ErrorCode::kInvalidArgument, std::string("spec is not valid JSON: ") + e.what());
        }
      });
      if (!spec.is_object() || (!spec.contains("mesh") && !spec.contains("mask"))) {
        throw Error(ErrorCode::kInvalidArgument, "spec needs a \"mesh\" or \"mask\" object");
      }
      std::error_code ec;
      fs::create_directories(y_out, ec);
      if (ec) throw Error(ErrorCode::kIo, "cannot create '" + y_out + "': " + ec.message());
      json summary = {{"schema", kReportSchema}};
      if (spec.contains("mesh")) {
        const SynthMesh sm = run.Stage("generate_mesh", [&] { return GeneratePlaneMesh(SynthMeshSpecFromJson(spec["mesh"])); });
        const std::string mesh_path = (fs::path(y_out) / "mesh.ply").string();
        const std::string gt_path = (fs::path(y_out) / "gt_faces.txt").string();
        run.Stage("write_mesh", [&] {
          WriteFileBytes(mesh_path, WritePly(sm.mesh, y_ascii ? PlyEncoding::kAscii
                                                              : PlyEncoding::kBinaryLittleEndian));
          WriteFileBytes(gt_path, FormatFaceList(sm.gt.face_ids()));
        });
        run.AddOutput(mesh_path);
        run.AddOutput(gt_path);
        summary["mesh"] = {{"path", mesh_path},
                           {"gt_faces", gt_path},
                           {"vertices", sm.mesh.NumVert()},
                           {"faces", sm.mesh.NumTri()},
                           {"gt_face_count", sm.gt.size()},
                           {"exact_patch_area", sm.exact_patch_area}};
      }
      if (spec.contains("mask")) {
        const SynthMaskPair mp = run.Stage("generate_masks", [&] { return GenerateMaskPair(SynthMaskSpecFromJson(spec["mask"])); });
        const std::string pred_path = (fs::path(y_out) / "pred.png").string();
        const std::string gt_path = (fs::path(y_out) / "gt.png").string();
        run.Stage("write_masks", [&] {
          WriteMaskPng(pred_path, mp.pred);
          WriteMaskPng(gt_path, mp.gt);
        });
        run.AddOutput(pred_path);
        run.AddOutput(gt_path);
        summary["mask"] = {{"pred", pred_path}, {"gt", gt_path}, {"expected", ToJson(mp.expected)}};
      }
      const std::string summary_path = (fs::path(y_out) / "synth.json").string();
      WriteFileBytes(summary_path, summary.dump(2) + "\n");
      run.AddOutput(summary_path);
      std::cout << summary.dump(2) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", ErrorCodeName(e.code())}, {"message", e.what()}}.dump() << "\n";
    status = e.IsIo() ? kExitIo : kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
    status = kExitIo;
  } catch (const std::bad_alloc&) {
    std::cerr << json{{"error", "out_of_memory"}, {"message", "allocation failed"}}.dump() << "\n";
    status = kExitInvalid;
  }

  const std::string timing = run.ToJson(status == 0).dump() + "\n";
  if (timing_path.empty()) {
    std::cerr << timing;
  } else {
    try {
      WriteFileBytes(timing_path, timing);
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      if (status == 0) status = kExitIo;
    }
  }
  return status;
}
