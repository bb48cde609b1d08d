// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/scene.hpp"

#include <fstream>
#include <set>

namespace csgsearch {

using nlohmann::json;

namespace {

Vec3 vec_from_json(const json& j, int dimension, const std::string& what) {
  if (!j.is_array()) throw SceneError(what + ": expected an array");
  if (j.size() == 3) return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (j.size() == 2 && dimension == 2) return {j[0].get<double>(), j[1].get<double>(), 0.0};
  throw SceneError(what + ": expected " + std::to_string(dimension) + " coordinates");
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw SceneError(where + ": missing numeric field '" + key + "'");
  return obj.at(key).get<double>();
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SceneError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

Primitive primitive_from_json(const json& j, int dimension) {
  if (!j.is_object()) throw SceneError("primitive entry must be an object");
  const std::string id = field(j, "id", "primitive").get<std::string>();
  const std::string where = "primitive '" + id + "'";
  const std::string kind_name = field(j, "kind", where).get<std::string>();
  const auto kind = parse_shape_kind(kind_name);
  if (!kind) throw SceneError(where + ": unknown shape kind '" + kind_name + "'");

  Primitive p{id, Sphere{}};
  switch (*kind) {
    case ShapeKind::Sphere:
      p.shape = Sphere{vec_from_json(field(j, "center", where), dimension, where + ".center"),
                       number(j, "radius", where)};
      break;
    case ShapeKind::Box: {
      const json& lo = field(j, "min", where);
      const json& hi = field(j, "max", where);
      Box b{vec_from_json(lo, dimension, where + ".min"), vec_from_json(hi, dimension, where + ".max")};
      if (dimension == 2 && lo.size() == 2) {
        b.min.z = -1.0;
        b.max.z = 1.0;
      }
      p.shape = b;
      break;
    }
    case ShapeKind::Cylinder:
      p.shape = Cylinder{vec_from_json(field(j, "base", where), dimension, where + ".base"),
                         vec_from_json(field(j, "axis", where), dimension, where + ".axis"),
                         number(j, "radius", where), number(j, "height", where)};
      break;
    case ShapeKind::Halfspace:
      p.shape = Halfspace{vec_from_json(field(j, "point", where), dimension, where + ".point"),
                          vec_from_json(field(j, "normal", where), dimension, where + ".normal")};
      break;
  }
  return p;
}

}  // namespace

json vec_to_json(Vec3 v, int dimension) {
  if (dimension == 2 && v.z == 0.0) return json::array({v.x, v.y});
  return json::array({v.x, v.y, v.z});
}

double Scene::default_epsilon() const {
  const Vec3 d = bounds.max - bounds.min;
  const double diag = dimension == 2 ? std::hypot(d.x, d.y) : norm(d);
  return 1e-4 * diag;
}

SamplePlan Scene::plan(int resolution, double jitter) const {
  SamplePlan p{bounds, resolution, jitter, dimension};
  p.validate();
  return p;
}

Scene scene_from_json(const json& doc) {
  if (!doc.is_object()) throw SceneError("scene document must be an object");
  static const std::set<std::string> known{"dimension", "bounds", "primitives", "name"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw SceneError("unknown scene field '" + key + "'");

  Scene scene;
  scene.dimension = doc.value("dimension", 3);
  if (scene.dimension != 2 && scene.dimension != 3) throw SceneError("dimension must be 2 or 3");
  const json& b = field(doc, "bounds", "scene");
  scene.bounds = {vec_from_json(field(b, "min", "bounds"), scene.dimension, "bounds.min"),
                  vec_from_json(field(b, "max", "bounds"), scene.dimension, "bounds.max")};

  const json& prims = field(doc, "primitives", "scene");
  if (!prims.is_array() || prims.empty()) throw SceneError("scene needs a non-empty primitive list");
  std::vector<Primitive> list;
  for (const json& p : prims) list.push_back(primitive_from_json(p, scene.dimension));
  try {
    scene.primitives = PrimitiveSet(std::move(list));
    scene.plan(2);
  } catch (const GeometryError& e) {
    throw SceneError(e.what());
  }
  return scene;
}

json scene_to_json(const Scene& scene) {
  const int dim = scene.dimension;
  json prims = json::array();
  for (const Primitive& p : scene.primitives) {
    json j{{"id", p.id}, {"kind", shape_kind_name(p.kind())}};
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, Sphere>) {
            j["center"] = vec_to_json(s.center, dim);
            j["radius"] = s.radius;
          } else if constexpr (std::is_same_v<S, Box>) {
            const bool flat = dim == 2 && s.min.z == -1.0 && s.max.z == 1.0;
            j["min"] = flat ? json::array({s.min.x, s.min.y}) : vec_to_json(s.min, 3);
            j["max"] = flat ? json::array({s.max.x, s.max.y}) : vec_to_json(s.max, 3);
          } else if constexpr (std::is_same_v<S, Cylinder>) {
            j["base"] = vec_to_json(s.base, dim);
            j["axis"] = vec_to_json(s.axis, dim);
            j["radius"] = s.radius;
            j["height"] = s.height;
          } else {
            j["point"] = vec_to_json(s.point, dim);
            j["normal"] = vec_to_json(s.normal, dim);
          }
        },
        p.shape);
    prims.push_back(std::move(j));
  }
  return json{{"dimension", dim},
              {"bounds", {{"min", vec_to_json(scene.bounds.min, dim)},
                          {"max", vec_to_json(scene.bounds.max, dim)}}},
              {"primitives", std::move(prims)}};
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SceneError(path.string() + ": " + e.what());
  }
  try {
    return scene_from_json(doc);
  } catch (const json::exception& e) {
    throw SceneError(path.string() + ": " + e.what());
  }
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SceneError("cannot write scene file " + path.string());
  out << scene_to_json(scene).dump(2) << '\n';
}

}  // namespace csgsearch
