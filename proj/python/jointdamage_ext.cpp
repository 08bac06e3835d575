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

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "jointdamage/damage.h"
#include "jointdamage/error.h"
#include "jointdamage/mesh_io.h"
#include "jointdamage/raster.h"
#include "jointdamage/report.h"
#include "jointdamage/synth.h"

namespace py = pybind11;
using namespace jointdamage;

namespace {

using U8Array = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;
using F32Array = py::array_t<float, py::array::c_style | py::array::forcecast>;
using U32Array = py::array_t<uint32_t, py::array::c_style | py::array::forcecast>;

void RequireShape(const py::array& a, py::ssize_t cols, const char* what) {
  if (a.ndim() != 2 || a.shape(1) != cols) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must have shape (n, " + std::to_string(cols) + ")");
  }
}

TriMesh MeshFromArrays(F32Array positions, py::object colors_obj, U32Array faces) {
  RequireShape(positions, 3, "positions");
  RequireShape(faces, 3, "faces");
  TriMesh mesh;
  const auto n = positions.shape(0);
  mesh.vertices.resize(n);
  auto p = positions.unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i) {
    mesh.vertices[i].position = {p(i, 0), p(i, 1), p(i, 2)};
  }
  if (colors_obj.is_none()) {
    mesh.has_vertex_colors = false;
  } else {
    U8Array colors = colors_obj.cast<U8Array>();
    RequireShape(colors, 3, "colors");
    if (colors.shape(0) != n) throw Error(ErrorCode::kInvalidArgument, "colors and positions differ in length");
    auto c = colors.unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i) mesh.vertices[i].color = {c(i, 0), c(i, 1), c(i, 2)};
  }
  auto f = faces.unchecked<2>();
  mesh.faces.resize(faces.shape(0));
  for (py::ssize_t i = 0; i < faces.shape(0); ++i) mesh.faces[i].v = {f(i, 0), f(i, 1), f(i, 2)};
  ValidateMesh(mesh);
  return mesh;
}

RasterImage ImageFromArray(U8Array a) {
  if (a.ndim() != 3 || a.shape(2) != 3) {
    throw Error(ErrorCode::kInvalidArgument, "image must have shape (height, width, 3)");
  }
  std::vector<uint8_t> px(a.data(), a.data() + a.size());
  return RasterImage(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), std::move(px));
}

py::array_t<uint8_t> ImageToArray(const RasterImage& img) {
  py::array_t<uint8_t> out({img.height(), img.width(), 3});
  std::memcpy(out.mutable_data(), img.data().data(), img.data().size());
  return out;
}

BinaryMask MaskFromArray(U8Array a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kInvalidArgument, "mask must have shape (height, width)");
  std::vector<uint8_t> bits(a.data(), a.data() + a.size());
  return BinaryMask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), std::move(bits));
}

py::array_t<bool> MaskToArray(const BinaryMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  bool* dst = out.mutable_data();
  for (size_t i = 0; i < m.bits().size(); ++i) dst[i] = m.bits()[i] != 0;
  return out;
}

py::dict MetricsToDict(const SegMetrics& m) {
  py::dict d;
  d["tp"] = m.tp;
  d["fp"] = m.fp;
  d["fn"] = m.fn;
  d["gt_d"] = m.gt_d();
  d["recall"] = m.recall ? py::object(py::float_(*m.recall)) : py::object(py::none());
  d["error"] = m.error ? py::object(py::float_(*m.error)) : py::object(py::none());
  d["defined"] = m.defined();
  return d;
}

nlohmann::json ParseSpec(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("spec is not valid JSON: ") + e.what());
  }
}

Rgb ToRgb(const std::array<int, 3>& c) {
  for (int v : c) {
    if (v < 0 || v > 255) throw Error(ErrorCode::kInvalidArgument, "color channels must be 0-255");
  }
  return {static_cast<uint8_t>(c[0]), static_cast<uint8_t>(c[1]), static_cast<uint8_t>(c[2])};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint damage quantification on vertex-colored meshes and 2D masks";

  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = ErrorCodeName(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<TriMesh>(m, "TriMesh")
      .def(py::init(&MeshFromArrays), py::arg("positions"), py::arg("colors").none(true), py::arg("faces"))
      .def_property_readonly("num_vertices", &TriMesh::NumVert)
      .def_property_readonly("num_faces", &TriMesh::NumTri)
      .def_readonly("has_vertex_colors", &TriMesh::has_vertex_colors)
      .def_property_readonly("positions",
                             [](const TriMesh& mesh) {
                               py::array_t<float> out({static_cast<py::ssize_t>(mesh.NumVert()), py::ssize_t{3}});
                               auto o = out.mutable_unchecked<2>();
                               for (size_t i = 0; i < mesh.NumVert(); ++i) {
                                 for (int k = 0; k < 3; ++k) o(i, k) = mesh.vertices[i].position[k];
                               }
                               return out;
                             })
      .def_property_readonly("colors",
                             [](const TriMesh& mesh) {
                               py::array_t<uint8_t> out({static_cast<py::ssize_t>(mesh.NumVert()), py::ssize_t{3}});
                               auto o = out.mutable_unchecked<2>();
                               for (size_t i = 0; i < mesh.NumVert(); ++i) {
                                 const Rgb c = mesh.vertices[i].color;
                                 o(i, 0) = c.r;
                                 o(i, 1) = c.g;
                                 o(i, 2) = c.b;
                               }
                               return out;
                             })
      .def_property_readonly("faces",
                             [](const TriMesh& mesh) {
                               py::array_t<uint32_t> out({static_cast<py::ssize_t>(mesh.NumTri()), py::ssize_t{3}});
                               auto o = out.mutable_unchecked<2>();
                               for (size_t i = 0; i < mesh.NumTri(); ++i) {
                                 for (int k = 0; k < 3; ++k) o(i, k) = mesh.faces[i].v[k];
                               }
                               return out;
                             })
      .def(py::self == py::self);

  py::class_<DamageLabeling>(m, "DamageLabeling")
      .def_static(
          "from_face_ids",
          [](const TriMesh& mesh, std::vector<uint32_t> ids, double scale) {
            return DamageLabeling::FromFaceIds(mesh, ids, scale);
          },
          py::arg("mesh"), py::arg("face_ids"), py::arg("coordinate_scale") = 1.0)
      .def_property_readonly("face_ids", &DamageLabeling::face_ids)
      .def_property_readonly("face_areas", &DamageLabeling::face_areas)
      .def_property_readonly("coordinate_scale", &DamageLabeling::coordinate_scale)
      .def_property_readonly("total_area", &DamageLabeling::TotalArea)
      .def("__len__", &DamageLabeling::size)
      .def("__contains__", &DamageLabeling::Contains);

  m.def("parse_ply", [](py::bytes data) { return ParsePly(std::string_view(data)); }, py::arg("data"));
  m.def(
      "write_ply",
      [](const TriMesh& mesh, bool binary, const DamageLabeling* labeling) {
        return py::bytes(WritePly(mesh, binary ? PlyEncoding::kBinaryLittleEndian : PlyEncoding::kAscii,
                                  labeling));
      },
      py::arg("mesh"), py::arg("binary") = true, py::arg("labeling") = nullptr);
  m.def("parse_obj", [](const std::string& text) { return ParseObj(text); }, py::arg("text"));
  m.def("write_obj", &WriteObj, py::arg("mesh"));
  m.def("load_mesh", [](const std::string& path) { return LoadMesh(path); }, py::arg("path"));

  m.def("face_area", &FaceArea, py::arg("mesh"), py::arg("face"), py::arg("coordinate_scale") = 1.0);
  m.def(
      "classify_damage",
      [](const TriMesh& mesh, int threshold, double scale, bool red_dominance) {
        ClassifyOptions opts;
        opts.coordinate_scale = scale;
        opts.red_dominance = red_dominance;
        py::gil_scoped_release release;
        return ClassifyDamage(mesh, threshold, opts);
      },
      py::arg("mesh"), py::arg("threshold") = 230, py::arg("coordinate_scale") = 1.0,
      py::arg("red_dominance") = false);
  m.def(
      "ground_truth_from_color",
      [](const TriMesh& mesh, std::array<int, 3> key, int tolerance, double scale) {
        return GroundTruthFromColor(mesh, ToRgb(key), tolerance, scale);
      },
      py::arg("mesh"), py::arg("color") = std::array<int, 3>{255, 255, 0}, py::arg("tolerance") = 0,
      py::arg("coordinate_scale") = 1.0);
  m.def(
      "compute_jdi",
      [](const DamageLabeling& labeling, double sawcut_length, double d_max, int threshold) {
        JdiParams params;
        params.sawcut_length = sawcut_length;
        params.d_max = d_max;
        params.coordinate_scale = labeling.coordinate_scale();
        params.threshold = threshold;
        return ToJson(ComputeJdi(labeling, params)).dump();
      },
      py::arg("labeling"), py::arg("sawcut_length") = 500.0, py::arg("d_max") = 25.0,
      py::arg("threshold") = 230,
      "Returns the JDI report as a JSON string (same schema as the CLI).");
  m.def(
      "metrics_3d",
      [](const DamageLabeling& pred, const DamageLabeling& gt, const TriMesh& mesh) {
        return MetricsToDict(Metrics3d(pred, gt, mesh));
      },
      py::arg("pred"), py::arg("gt"), py::arg("mesh"));
  m.def(
      "threshold_sweep",
      [](const TriMesh& mesh, const DamageLabeling& gt, std::vector<int> thresholds,
         double sawcut_length, double d_max, bool red_dominance) {
        JdiParams base;
        base.sawcut_length = sawcut_length;
        base.d_max = d_max;
        base.coordinate_scale = gt.coordinate_scale();
        py::list rows;
        for (const SweepRow& r : ThresholdSweep(mesh, gt, thresholds, base, red_dominance)) {
          py::dict d = MetricsToDict(r.metrics);
          d["threshold"] = r.threshold;
          d["jdi"] = r.jdi;
          rows.append(d);
        }
        return rows;
      },
      py::arg("mesh"), py::arg("gt"), py::arg("thresholds") = std::vector<int>{190, 210, 230, 250},
      py::arg("sawcut_length") = 500.0, py::arg("d_max") = 25.0, py::arg("red_dominance") = false);

  m.def(
      "apply_color_mask",
      [](U8Array image, U8Array mask, std::array<int, 3> color) {
        return ImageToArray(ApplyColorMask(ImageFromArray(image), MaskFromArray(mask), ToRgb(color)));
      },
      py::arg("image"), py::arg("mask"), py::arg("color") = std::array<int, 3>{255, 0, 0});
  m.def(
      "metrics_2d",
      [](U8Array pred, U8Array gt) { return MetricsToDict(Metrics2d(MaskFromArray(pred), MaskFromArray(gt))); },
      py::arg("pred"), py::arg("gt"));
  m.def("gaussian_kernel", &GaussianKernel, py::arg("sigma"));
  m.def(
      "gaussian_blur", [](U8Array image, double sigma) { return ImageToArray(GaussianBlur(ImageFromArray(image), sigma)); },
      py::arg("image"), py::arg("sigma") = 0.25);
  m.def(
      "adjust_brightness",
      [](U8Array image, double factor) { return ImageToArray(AdjustBrightness(ImageFromArray(image), factor)); },
      py::arg("image"), py::arg("factor"));
  m.def("flip_h", [](U8Array image) { return ImageToArray(FlipH(ImageFromArray(image))); }, py::arg("image"));
  m.def("flip_v", [](U8Array image) { return ImageToArray(FlipV(ImageFromArray(image))); }, py::arg("image"));
  m.def(
      "augment_batch",
      [](std::vector<U8Array> images, uint64_t seed, int ops_per_image) {
        std::vector<RasterImage> in;
        in.reserve(images.size());
        for (auto& a : images) in.push_back(ImageFromArray(a));
        std::vector<RasterImage> out;
        {
          py::gil_scoped_release release;
          out = AugmentBatch(in, seed, ops_per_image);
        }
        py::list result;
        for (const RasterImage& img : out) result.append(ImageToArray(img));
        return result;
      },
      py::arg("images"), py::arg("seed") = 0, py::arg("ops_per_image") = 5);

  m.def(
      "generate_plane_mesh",
      [](const std::string& spec_json) {
        SynthMesh sm = GeneratePlaneMesh(SynthMeshSpecFromJson(ParseSpec(spec_json)));
        return py::make_tuple(std::move(sm.mesh), std::move(sm.gt), sm.exact_patch_area);
      },
      py::arg("spec_json"), "Takes the same JSON mesh spec as `jointdamage synth`.");
  m.def(
      "generate_mask_pair",
      [](const std::string& spec_json) {
        SynthMaskPair mp = GenerateMaskPair(SynthMaskSpecFromJson(ParseSpec(spec_json)));
        return py::make_tuple(MaskToArray(mp.pred), MaskToArray(mp.gt), MetricsToDict(mp.expected));
      },
      py::arg("spec_json"));
}
