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

// Random generators and reference implementations for tests. Nothing here
// calls into the library code paths it is used to check.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jointdamage/mesh.h"
#include "jointdamage/raster.h"

namespace jointdamage::testing {

inline float RandomFloat(std::mt19937_64& rng) {
  std::uniform_real_distribution<float> mant(-1.f, 1.f);
  std::uniform_int_distribution<int> expo(-20, 20);
  return std::ldexp(mant(rng), expo(rng));
}

/// Random colored mesh; faces may be degenerate (repeated indices).
inline TriMesh RandomMesh(std::mt19937_64& rng, size_t num_vertices, size_t num_faces) {
  TriMesh mesh;
  std::uniform_int_distribution<int> channel(0, 255);
  for (size_t i = 0; i < num_vertices; ++i) {
    ColoredVertex v;
    v.position = {RandomFloat(rng), RandomFloat(rng), RandomFloat(rng)};
    v.color = {static_cast<uint8_t>(channel(rng)), static_cast<uint8_t>(channel(rng)),
               static_cast<uint8_t>(channel(rng))};
    mesh.vertices.push_back(v);
  }
  if (num_vertices > 0) {
    std::uniform_int_distribution<uint32_t> idx(0, static_cast<uint32_t>(num_vertices - 1));
    for (size_t f = 0; f < num_faces; ++f) mesh.faces.push_back({{idx(rng), idx(rng), idx(rng)}});
  }
  return mesh;
}

/// The plain per-face rule: all three vertex reds strictly above threshold.
inline std::vector<uint32_t> NaiveClassify(const TriMesh& mesh, int threshold) {
  std::vector<uint32_t> ids;
  for (uint32_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& v = mesh.faces[f].v;
    if (mesh.vertices[v[0]].color.r > threshold && mesh.vertices[v[1]].color.r > threshold &&
        mesh.vertices[v[2]].color.r > threshold) {
      ids.push_back(f);
    }
  }
  return ids;
}

/// Triangle area from side lengths (Heron), in long double with the
/// numerically stable ordering a >= b >= c.
inline long double HeronArea(const std::array<float, 3>& p, const std::array<float, 3>& q,
                             const std::array<float, 3>& r) {
  auto dist = [](const std::array<float, 3>& a, const std::array<float, 3>& b) {
    long double s = 0;
    for (int k = 0; k < 3; ++k) {
      const long double d = static_cast<long double>(a[k]) - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  };
  long double s[3] = {dist(p, q), dist(q, r), dist(r, p)};
  std::sort(s, s + 3, std::greater<>());
  const long double a = s[0], b = s[1], c = s[2];
  const long double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return prod <= 0 ? 0 : 0.25L * std::sqrt(prod);
}

inline BinaryMask RandomMask(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, on(rng));
  }
  return m;
}

inline RasterImage RandomImage(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> channel(0, 255);
  std::vector<uint8_t> px(static_cast<size_t>(w) * h * 3);
  for (uint8_t& c : px) c = static_cast<uint8_t>(channel(rng));
  return RasterImage(w, h, std::move(px));
}

}  // namespace jointdamage::testing
