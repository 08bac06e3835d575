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

#include "jointdamage/mesh_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>

#include "jointdamage/damage.h"
#include "jointdamage/error.h"

namespace jointdamage {
namespace {

enum class Scalar { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

std::optional<Scalar> ScalarFromName(std::string_view name) {
  if (name == "char" || name == "int8") return Scalar::kInt8;
  if (name == "uchar" || name == "uint8") return Scalar::kUInt8;
  if (name == "short" || name == "int16") return Scalar::kInt16;
  if (name == "ushort" || name == "uint16") return Scalar::kUInt16;
  if (name == "int" || name == "int32") return Scalar::kInt32;
  if (name == "uint" || name == "uint32") return Scalar::kUInt32;
  if (name == "float" || name == "float32") return Scalar::kFloat32;
  if (name == "double" || name == "float64") return Scalar::kFloat64;
  return std::nullopt;
}

size_t ScalarSize(Scalar s) {
  switch (s) {
    case Scalar::kInt8:
    case Scalar::kUInt8:
      return 1;
    case Scalar::kInt16:
    case Scalar::kUInt16:
      return 2;
    case Scalar::kInt32:
    case Scalar::kUInt32:
    case Scalar::kFloat32:
      return 4;
    case Scalar::kFloat64:
      return 8;
  }
  return 0;
}

bool IsFloat(Scalar s) { return s == Scalar::kFloat32 || s == Scalar::kFloat64; }

struct Property {
  std::string name;
  Scalar type = Scalar::kFloat32;
  bool is_list = false;
  Scalar count_type = Scalar::kUInt8;
};

struct Element {
  std::string name;
  uint64_t count = 0;
  std::vector<Property> props;
};

struct Header {
  PlyEncoding encoding = PlyEncoding::kAscii;
  std::vector<Element> elements;
  size_t body_offset = 0;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

std::vector<std::string_view> SplitWords(std::string_view line) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

Header ParseHeader(std::string_view data) {
  Header header;
  size_t pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= data.size()) return std::nullopt;
    size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) return std::nullopt;
    std::string_view line = data.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };

  auto magic = next_line();
  if (!magic || *magic != "ply") {
    Fail(ErrorCode::kMalformedHeader, "missing 'ply' magic line");
  }
  bool have_format = false;
  while (true) {
    auto line = next_line();
    if (!line) Fail(ErrorCode::kMalformedHeader, "missing end_header");
    auto words = SplitWords(*line);
    if (words.empty()) continue;
    const std::string_view key = words[0];
    if (key == "end_header") break;
    if (key == "comment" || key == "obj_info") continue;
    if (key == "format") {
      if (words.size() != 3) Fail(ErrorCode::kMalformedHeader, "bad format line");
      if (words[1] == "ascii") {
        header.encoding = PlyEncoding::kAscii;
      } else if (words[1] == "binary_little_endian") {
        header.encoding = PlyEncoding::kBinaryLittleEndian;
      } else if (words[1] == "binary_big_endian") {
        Fail(ErrorCode::kUnsupportedFormat, "binary_big_endian PLY is not supported");
      } else {
        Fail(ErrorCode::kMalformedHeader, "unknown PLY format '" + std::string(words[1]) + "'");
      }
      if (words[2] != "1.0") {
        Fail(ErrorCode::kUnsupportedFormat, "unsupported PLY version " + std::string(words[2]));
      }
      have_format = true;
    } else if (key == "element") {
      if (words.size() != 3) Fail(ErrorCode::kMalformedHeader, "bad element line");
      Element el;
      el.name = std::string(words[1]);
      auto [p, ec] = std::from_chars(words[2].data(), words[2].data() + words[2].size(), el.count);
      if (ec != std::errc() || p != words[2].data() + words[2].size()) {
        Fail(ErrorCode::kMalformedHeader, "bad element count for '" + el.name + "'");
      }
      header.elements.push_back(std::move(el));
    } else if (key == "property") {
      if (header.elements.empty()) {
        Fail(ErrorCode::kMalformedHeader, "property declared before any element");
      }
      Property prop;
      if (words.size() == 5 && words[1] == "list") {
        auto count_type = ScalarFromName(words[2]);
        auto item_type = ScalarFromName(words[3]);
        if (!count_type || !item_type || IsFloat(*count_type)) {
          Fail(ErrorCode::kMalformedHeader, "bad list property types");
        }
        prop.is_list = true;
        prop.count_type = *count_type;
        prop.type = *item_type;
        prop.name = std::string(words[4]);
      } else if (words.size() == 3) {
        auto type = ScalarFromName(words[1]);
        if (!type) {
          Fail(ErrorCode::kMalformedHeader, "unknown property type '" + std::string(words[1]) + "'");
        }
        prop.type = *type;
        prop.name = std::string(words[2]);
      } else {
        Fail(ErrorCode::kMalformedHeader, "bad property line");
      }
      header.elements.back().props.push_back(std::move(prop));
    } else {
      Fail(ErrorCode::kMalformedHeader, "unexpected header keyword '" + std::string(key) + "'");
    }
  }
  if (!have_format) Fail(ErrorCode::kMalformedHeader, "missing format line");
  header.body_offset = pos;
  return header;
}

// Reads typed values from the body. Both readers expose the same surface so
// the element decoding below is written once.
class BinaryReader {
 public:
  explicit BinaryReader(std::string_view body) : body_(body) {}

  double Number(Scalar s) {
    const size_t n = ScalarSize(s);
    if (body_.size() - pos_ < n) Fail(ErrorCode::kMalformedData, "unexpected end of binary data");
    unsigned char buf[8];
    std::memcpy(buf, body_.data() + pos_, n);
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + n);
    pos_ += n;
    switch (s) {
      case Scalar::kInt8: return static_cast<int8_t>(buf[0]);
      case Scalar::kUInt8: return buf[0];
      case Scalar::kInt16: return Load<int16_t>(buf);
      case Scalar::kUInt16: return Load<uint16_t>(buf);
      case Scalar::kInt32: return Load<int32_t>(buf);
      case Scalar::kUInt32: return Load<uint32_t>(buf);
      case Scalar::kFloat32: return Load<float>(buf);
      case Scalar::kFloat64: return Load<double>(buf);
    }
    return 0;
  }

  float Float32(Scalar s) {
    if (s == Scalar::kFloat32) {
      if (body_.size() - pos_ < 4) Fail(ErrorCode::kMalformedData, "unexpected end of binary data");
      unsigned char buf[4];
      std::memcpy(buf, body_.data() + pos_, 4);
      if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + 4);
      pos_ += 4;
      return Load<float>(buf);
    }
    return static_cast<float>(Number(s));
  }

  void Skip(Scalar s, uint64_t n) {
    const uint64_t bytes = n * ScalarSize(s);
    if (n > body_.size() || body_.size() - pos_ < bytes) {
      Fail(ErrorCode::kMalformedData, "unexpected end of binary data");
    }
    pos_ += bytes;
  }

  size_t Remaining() const { return body_.size() - pos_; }

 private:
  template <typename T>
  static T Load(const unsigned char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
  }

  std::string_view body_;
  size_t pos_ = 0;
};

class AsciiReader {
 public:
  explicit AsciiReader(std::string_view body) : body_(body) {}

  double Number(Scalar s) {
    std::string_view tok = Token();
    const char* end = tok.data() + tok.size();
    if (IsFloat(s)) {
      double v;
      auto [p, ec] = std::from_chars(tok.data(), end, v);
      if (ec != std::errc() || p != end) Bad(tok);
      return v;
    }
    int64_t v;
    auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || p != end) Bad(tok);
    const int64_t lo = s == Scalar::kInt8 ? INT8_MIN : s == Scalar::kInt16 ? INT16_MIN
                       : s == Scalar::kInt32 ? INT32_MIN : 0;
    const int64_t hi = s == Scalar::kInt8 ? INT8_MAX : s == Scalar::kUInt8 ? UINT8_MAX
                       : s == Scalar::kInt16 ? INT16_MAX : s == Scalar::kUInt16 ? UINT16_MAX
                       : s == Scalar::kInt32 ? INT32_MAX : UINT32_MAX;
    if (v < lo || v > hi) Bad(tok);
    return static_cast<double>(v);
  }

  float Float32(Scalar s) {
    if (s != Scalar::kFloat32) return static_cast<float>(Number(s));
    std::string_view tok = Token();
    const char* end = tok.data() + tok.size();
    float v;
    auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || p != end) Bad(tok);
    return v;
  }

  void Skip(Scalar s, uint64_t n) {
    for (uint64_t i = 0; i < n; ++i) Number(s);
  }

  size_t Remaining() const { return body_.size() - pos_; }

 private:
  std::string_view Token() {
    while (pos_ < body_.size() && IsSpace(body_[pos_])) ++pos_;
    size_t start = pos_;
    while (pos_ < body_.size() && !IsSpace(body_[pos_])) ++pos_;
    if (pos_ == start) Fail(ErrorCode::kMalformedData, "unexpected end of ascii data");
    return body_.substr(start, pos_ - start);
  }

  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }

  [[noreturn]] static void Bad(std::string_view tok) {
    std::string shown(tok.substr(0, 32));
    Fail(ErrorCode::kMalformedData, "bad ascii value '" + shown + "'");
  }

  std::string_view body_;
  size_t pos_ = 0;
};

int FindProp(const Element& el, std::string_view name) {
  for (size_t i = 0; i < el.props.size(); ++i) {
    if (el.props[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

uint8_t ToChannel(double v) {
  if (!(v >= 0 && v <= 255)) Fail(ErrorCode::kMalformedData, "color channel outside 0-255");
  return static_cast<uint8_t>(v);
}

template <typename Reader>
void ReadVertices(Reader& in, const Element& el, TriMesh& mesh,
                  std::vector<std::string>* warnings) {
  int slot[6];
  const char* names[6] = {"x", "y", "z", "red", "green", "blue"};
  for (int k = 0; k < 6; ++k) {
    slot[k] = FindProp(el, names[k]);
    if (slot[k] >= 0 && el.props[slot[k]].is_list) {
      Fail(ErrorCode::kMalformedHeader, std::string("vertex property ") + names[k] + " is a list");
    }
  }
  if (slot[0] < 0 || slot[1] < 0 || slot[2] < 0) {
    Fail(ErrorCode::kMalformedHeader, "vertex element lacks x, y or z");
  }
  if (slot[3] < 0 || slot[4] < 0 || slot[5] < 0) {
    Fail(ErrorCode::kColorlessMesh,
         "vertex element lacks red/green/blue; damage classification needs vertex colors");
  }
  for (int k = 3; k < 6; ++k) {
    if (IsFloat(el.props[slot[k]].type)) {
      Fail(ErrorCode::kUnsupportedFormat, "floating-point vertex colors are not supported");
    }
  }
  // role[i]: 0..5 for a known slot, -1 to skip.
  std::vector<int> role(el.props.size(), -1);
  for (int k = 0; k < 6; ++k) role[slot[k]] = k;
  if (warnings) {
    for (size_t i = 0; i < el.props.size(); ++i) {
      if (role[i] < 0) warnings->push_back("skipping vertex property '" + el.props[i].name + "'");
    }
  }

  if (el.count > std::numeric_limits<uint32_t>::max()) {
    Fail(ErrorCode::kMalformedHeader, "vertex count exceeds 32-bit index range");
  }
  mesh.vertices.reserve(std::min<uint64_t>(el.count, in.Remaining()));
  for (uint64_t i = 0; i < el.count; ++i) {
    ColoredVertex v;
    uint8_t rgb[3] = {0, 0, 0};
    for (size_t p = 0; p < el.props.size(); ++p) {
      const Property& prop = el.props[p];
      const int r = role[p];
      if (r < 0) {
        if (prop.is_list) {
          double n = in.Number(prop.count_type);
          if (n < 0) Fail(ErrorCode::kMalformedData, "negative list count");
          in.Skip(prop.type, static_cast<uint64_t>(n));
        } else {
          in.Skip(prop.type, 1);
        }
      } else if (r < 3) {
        v.position[r] = in.Float32(prop.type);
        if (!std::isfinite(v.position[r])) {
          Fail(ErrorCode::kMalformedData, "non-finite vertex coordinate");
        }
      } else {
        rgb[r - 3] = ToChannel(in.Number(prop.type));
      }
    }
    v.color = {rgb[0], rgb[1], rgb[2]};
    mesh.vertices.push_back(v);
  }
}

template <typename Reader>
void ReadFaces(Reader& in, const Element& el, TriMesh& mesh,
               std::vector<std::string>* warnings) {
  int list = FindProp(el, "vertex_indices");
  if (list < 0) list = FindProp(el, "vertex_index");
  if (list < 0 || !el.props[list].is_list) {
    Fail(ErrorCode::kMalformedHeader, "face element lacks a vertex_indices list");
  }
  if (IsFloat(el.props[list].type)) {
    Fail(ErrorCode::kMalformedHeader, "face indices must be integers");
  }
  int color[3] = {FindProp(el, "red"), FindProp(el, "green"), FindProp(el, "blue")};
  const bool has_color = color[0] >= 0 && color[1] >= 0 && color[2] >= 0 &&
                         !el.props[color[0]].is_list && !el.props[color[1]].is_list &&
                         !el.props[color[2]].is_list && !IsFloat(el.props[color[0]].type) &&
                         !IsFloat(el.props[color[1]].type) && !IsFloat(el.props[color[2]].type);
  std::vector<int> role(el.props.size(), -1);
  role[list] = 0;
  if (has_color) {
    for (int k = 0; k < 3; ++k) role[color[k]] = 1 + k;
  }
  if (warnings) {
    for (size_t i = 0; i < el.props.size(); ++i) {
      if (role[i] < 0) warnings->push_back("skipping face property '" + el.props[i].name + "'");
    }
  }

  mesh.faces.reserve(std::min<uint64_t>(el.count, in.Remaining()));
  if (has_color) mesh.face_colors.reserve(mesh.faces.capacity());
  for (uint64_t i = 0; i < el.count; ++i) {
    TriFace face;
    uint8_t rgb[3] = {0, 0, 0};
    for (size_t p = 0; p < el.props.size(); ++p) {
      const Property& prop = el.props[p];
      const int r = role[p];
      if (r == 0) {
        double n = in.Number(prop.count_type);
        if (n != 3) {
          Fail(ErrorCode::kNonTriangularFace,
               "face " + std::to_string(i) + " has " + std::to_string(static_cast<int64_t>(n)) +
                   " vertices; only triangles are supported");
        }
        for (int k = 0; k < 3; ++k) {
          double idx = in.Number(prop.type);
          if (idx < 0) {
            Fail(ErrorCode::kIndexOutOfRange, "face " + std::to_string(i) + " has a negative index");
          }
          face.v[k] = static_cast<uint32_t>(idx);
        }
      } else if (r > 0) {
        rgb[r - 1] = ToChannel(in.Number(prop.type));
      } else if (prop.is_list) {
        double n = in.Number(prop.count_type);
        if (n < 0) Fail(ErrorCode::kMalformedData, "negative list count");
        in.Skip(prop.type, static_cast<uint64_t>(n));
      } else {
        in.Skip(prop.type, 1);
      }
    }
    mesh.faces.push_back(face);
    if (has_color) mesh.face_colors.push_back({rgb[0], rgb[1], rgb[2]});
  }
}

template <typename Reader>
void SkipElement(Reader& in, const Element& el) {
  if (el.props.empty()) return;
  for (uint64_t i = 0; i < el.count; ++i) {
    for (const Property& prop : el.props) {
      if (prop.is_list) {
        double n = in.Number(prop.count_type);
        if (n < 0) Fail(ErrorCode::kMalformedData, "negative list count");
        in.Skip(prop.type, static_cast<uint64_t>(n));
      } else {
        in.Skip(prop.type, 1);
      }
    }
  }
}

template <typename Reader>
TriMesh ReadBody(Reader& in, const Header& header, std::vector<std::string>* warnings) {
  TriMesh mesh;
  bool have_vertex = false;
  bool have_face = false;
  for (const Element& el : header.elements) {
    if (el.name == "vertex" && !have_vertex) {
      ReadVertices(in, el, mesh, warnings);
      have_vertex = true;
    } else if (el.name == "face" && !have_face) {
      ReadFaces(in, el, mesh, warnings);
      have_face = true;
    } else {
      if (warnings) warnings->push_back("skipping element '" + el.name + "'");
      SkipElement(in, el);
    }
  }
  if (!have_vertex) Fail(ErrorCode::kMalformedHeader, "no vertex element");
  ValidateMesh(mesh);
  return mesh;
}

void AppendFloat(std::string& out, float v) {
  char buf[32];
  int n = std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  out.append(buf, n);
}

template <typename T>
void AppendLE(std::string& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.append(reinterpret_cast<const char*>(buf), sizeof(T));
}

Rgb MeanVertexColor(const TriMesh& mesh, const TriFace& f) {
  int sum[3] = {0, 0, 0};
  for (uint32_t idx : f.v) {
    const Rgb c = mesh.vertices[idx].color;
    sum[0] += c.r;
    sum[1] += c.g;
    sum[2] += c.b;
  }
  // round half up of sum / 3
  auto avg = [](int s) { return static_cast<uint8_t>((2 * s + 3) / 6); };
  return {avg(sum[0]), avg(sum[1]), avg(sum[2])};
}

}  // namespace

TriMesh ParsePly(std::span<const std::byte> bytes, std::vector<std::string>* warnings) {
  return ParsePly(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                  warnings);
}

TriMesh ParsePly(std::string_view bytes, std::vector<std::string>* warnings) {
  const Header header = ParseHeader(bytes);
  const std::string_view body = bytes.substr(header.body_offset);
  if (header.encoding == PlyEncoding::kAscii) {
    AsciiReader in(body);
    return ReadBody(in, header, warnings);
  }
  BinaryReader in(body);
  return ReadBody(in, header, warnings);
}

std::string WritePly(const TriMesh& mesh, PlyEncoding encoding, const DamageLabeling* labeling) {
  ValidateMesh(mesh);
  std::vector<Rgb> face_colors;
  if (labeling != nullptr) {
    face_colors.reserve(mesh.NumTri());
    for (size_t f = 0; f < mesh.NumTri(); ++f) {
      face_colors.push_back(mesh.face_colors.empty() ? MeanVertexColor(mesh, mesh.faces[f])
                                                     : mesh.face_colors[f]);
    }
    for (uint32_t id : labeling->face_ids()) {
      if (id >= face_colors.size()) {
        Fail(ErrorCode::kIndexOutOfRange, "labeling references face " + std::to_string(id));
      }
      face_colors[id] = kDamageGreen;
    }
  } else {
    face_colors = mesh.face_colors;
  }
  const bool with_face_colors = !face_colors.empty();

  std::string out;
  out += "ply\n";
  out += encoding == PlyEncoding::kAscii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
  out += "comment written by jointdamage\n";
  out += "element vertex " + std::to_string(mesh.NumVert()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "element face " + std::to_string(mesh.NumTri()) + "\n";
  out += "property list uchar int vertex_indices\n";
  if (with_face_colors) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "end_header\n";

  if (encoding == PlyEncoding::kAscii) {
    for (const ColoredVertex& v : mesh.vertices) {
      AppendFloat(out, v.position[0]);
      out += ' ';
      AppendFloat(out, v.position[1]);
      out += ' ';
      AppendFloat(out, v.position[2]);
      out += ' ' + std::to_string(v.color.r) + ' ' + std::to_string(v.color.g) + ' ' +
             std::to_string(v.color.b) + '\n';
    }
    for (size_t f = 0; f < mesh.NumTri(); ++f) {
      const TriFace& face = mesh.faces[f];
      out += "3 " + std::to_string(face.v[0]) + ' ' + std::to_string(face.v[1]) + ' ' +
             std::to_string(face.v[2]);
      if (with_face_colors) {
        const Rgb c = face_colors[f];
        out += ' ' + std::to_string(c.r) + ' ' + std::to_string(c.g) + ' ' + std::to_string(c.b);
      }
      out += '\n';
    }
    return out;
  }

  out.reserve(out.size() + mesh.NumVert() * 15 + mesh.NumTri() * (with_face_colors ? 16 : 13));
  for (const ColoredVertex& v : mesh.vertices) {
    for (float c : v.position) AppendLE(out, c);
    out += static_cast<char>(v.color.r);
    out += static_cast<char>(v.color.g);
    out += static_cast<char>(v.color.b);
  }
  for (size_t f = 0; f < mesh.NumTri(); ++f) {
    out += static_cast<char>(3);
    for (uint32_t idx : mesh.faces[f].v) AppendLE(out, static_cast<int32_t>(idx));
    if (with_face_colors) {
      const Rgb c = face_colors[f];
      out += static_cast<char>(c.r);
      out += static_cast<char>(c.g);
      out += static_cast<char>(c.b);
    }
  }
  return out;
}

TriMesh ParseObj(std::string_view text) {
  TriMesh mesh;
  size_t pos = 0;
  size_t line_no = 0;
  auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> w = SplitWords(line);
    if (w.empty()) continue;

    if (w[0] == "v") {
      if (w.size() == 4) Fail(ErrorCode::kColorlessMesh, where() + "vertex without color components");
      if (w.size() != 7) Fail(ErrorCode::kMalformedData, where() + "vertex needs x y z r g b");
      ColoredVertex v;
      for (int k = 0; k < 3; ++k) {
        const char* end = w[1 + k].data() + w[1 + k].size();
        auto [p, ec] = std::from_chars(w[1 + k].data(), end, v.position[k]);
        if (ec != std::errc() || p != end || !std::isfinite(v.position[k])) {
          Fail(ErrorCode::kMalformedData, where() + "bad coordinate");
        }
      }
      uint8_t rgb[3];
      for (int k = 0; k < 3; ++k) {
        double c;
        const char* end = w[4 + k].data() + w[4 + k].size();
        auto [p, ec] = std::from_chars(w[4 + k].data(), end, c);
        if (ec != std::errc() || p != end || !(c >= 0 && c <= 1)) {
          Fail(ErrorCode::kMalformedData, where() + "color component must be a real in [0,1]");
        }
        rgb[k] = static_cast<uint8_t>(std::lround(c * 255));
      }
      v.color = {rgb[0], rgb[1], rgb[2]};
      mesh.vertices.push_back(v);
    } else if (w[0] == "f") {
      if (w.size() > 4) {
        Fail(ErrorCode::kNonTriangularFace,
             where() + "face with " + std::to_string(w.size() - 1) + " vertices");
      }
      if (w.size() < 4) Fail(ErrorCode::kMalformedData, where() + "face with fewer than 3 vertices");
      TriFace face;
      for (int k = 0; k < 3; ++k) {
        std::string_view ref = w[1 + k].substr(0, w[1 + k].find('/'));
        int64_t idx;
        const char* end = ref.data() + ref.size();
        auto [p, ec] = std::from_chars(ref.data(), end, idx);
        if (ec != std::errc() || p != end) Fail(ErrorCode::kMalformedData, where() + "bad face index");
        if (idx <= 0 || idx > std::numeric_limits<uint32_t>::max()) {
          Fail(ErrorCode::kIndexOutOfRange, where() + "face index must be a positive 1-based index");
        }
        face.v[k] = static_cast<uint32_t>(idx - 1);
      }
      mesh.faces.push_back(face);
    }
    // everything else (vn, vt, o, g, s, usemtl, mtllib, ...) is ignored
  }
  if (mesh.vertices.empty() && !mesh.faces.empty()) {
    Fail(ErrorCode::kIndexOutOfRange, "faces reference vertices but none were defined");
  }
  ValidateMesh(mesh);
  return mesh;
}

std::string WriteObj(const TriMesh& mesh) {
  ValidateMesh(mesh);
  std::string out = "# written by jointdamage\n";
  char buf[160];
  for (const ColoredVertex& v : mesh.vertices) {
    int n = std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g %.9g %.9g %.9g\n",
                          static_cast<double>(v.position[0]), static_cast<double>(v.position[1]),
                          static_cast<double>(v.position[2]), v.color.r / 255.0,
                          v.color.g / 255.0, v.color.b / 255.0);
    out.append(buf, n);
  }
  for (const TriFace& f : mesh.faces) {
    out += "f " + std::to_string(f.v[0] + 1) + ' ' + std::to_string(f.v[1] + 1) + ' ' +
           std::to_string(f.v[2] + 1) + '\n';
  }
  return out;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading '" + path + "'");
  return std::move(ss).str();
}

void WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "error writing '" + path + "'");
}

TriMesh LoadMesh(const std::string& path, std::vector<std::string>* warnings) {
  std::string ext;
  if (size_t dot = path.rfind('.'); dot != std::string::npos) ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == "ply") return ParsePly(ReadFileBytes(path), warnings);
  if (ext == "obj") return ParseObj(ReadFileBytes(path));
  throw Error(ErrorCode::kUnsupportedFormat, "unknown mesh extension for '" + path + "'");
}

}  // namespace jointdamage
