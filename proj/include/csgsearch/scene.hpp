// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "csgsearch/geometry.hpp"
#include "json.hpp"

namespace csgsearch {

/// Scene document:
///
///   {
///     "dimension": 2 | 3,
///     "bounds": {"min": [x, y, z], "max": [x, y, z]},
///     "primitives": [
///       {"id": "A", "kind": "sphere",    "center": [..], "radius": r},
///       {"id": "B", "kind": "box",       "min": [..], "max": [..]},
///       {"id": "C", "kind": "cylinder",  "base": [..], "axis": [..], "radius": r, "height": h},
///       {"id": "D", "kind": "halfspace", "point": [..], "normal": [..]}
///     ]
///   }
///
/// In 2D scenes points may be given as [x, y]; z defaults to 0 and 2D boxes
/// get the z-extent [-1, 1]. The sampled slice is z = 0.
struct Scene {
  int dimension = 3;
  Aabb bounds;
  PrimitiveSet primitives;

  /// 1e-4 times the scene diagonal (xy diagonal in 2D).
  double default_epsilon() const;
  SamplePlan plan(int resolution, double jitter = 0.0) const;
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scene scene_from_json(const nlohmann::json& doc);
nlohmann::json scene_to_json(const Scene& scene);

Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

nlohmann::json vec_to_json(Vec3 v, int dimension = 3);

}  // namespace csgsearch
